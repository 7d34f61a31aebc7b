#pragma once

#include <Eigen/Dense>

namespace oaslab {

template <class Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = VecX<double>;
using Mat = MatX<double>;
using BoolArray = Eigen::Array<bool, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

}  // namespace oaslab
