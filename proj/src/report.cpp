#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oaslab/harness.hpp"

namespace oaslab {

namespace {

const char* kCsvHeader =
    "scheme,sweep_name,sweep_value,B,L,K,M,xi,trials,mse,mse_db,ci_db,wall_s";

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::vector<ResultRow> sorted_rows(const ResultTable& table) {
  std::vector<ResultRow> rows = table.rows;
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ResultRow& a, const ResultRow& b) {
                     if (a.scheme != b.scheme) return a.scheme < b.scheme;
                     return a.sweep_value < b.sweep_value;
                   });
  return rows;
}

}  // namespace

void emit_csv(const ResultTable& table, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (const ResultRow& r : sorted_rows(table)) {
    out << r.scheme << ',' << r.sweep_name << ',' << fmt12(r.sweep_value) << ','
        << r.B << ',' << r.L << ',' << r.K << ',' << r.M << ',' << fmt12(r.xi)
        << ',' << r.trials << ',' << fmt12(r.mse) << ',' << fmt12(r.mse_db)
        << ',' << fmt12(r.ci_db) << ',' << fmt12(r.wall_s) << "\n";
  }
}

void emit_csv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  emit_csv(table, out);
  out.flush();
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

ResultTable parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("parse_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw std::runtime_error("parse_csv: unexpected header: " + line);

  ResultTable table;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 13)
      throw std::runtime_error("parse_csv: malformed row: " + line);
    ResultRow r;
    r.scheme = f[0];
    r.sweep_name = f[1];
    r.sweep_value = std::stod(f[2]);
    r.B = std::stoi(f[3]);
    r.L = std::stoi(f[4]);
    r.K = std::stoi(f[5]);
    r.M = std::stoi(f[6]);
    r.xi = std::stod(f[7]);
    r.trials = std::stoi(f[8]);
    r.mse = std::stod(f[9]);
    r.mse_db = std::stod(f[10]);
    r.ci_db = std::stod(f[11]);
    r.wall_s = std::stod(f[12]);
    table.rows.push_back(std::move(r));
  }
  return table;
}

ResultTable parse_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("parse_csv: cannot open " + path);
  return parse_csv(in);
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ~n "nice" tick positions covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int n) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / std::max(n - 1, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) { step = m * mag; break; }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
    ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  return ticks;
}

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (sweep value, dB)
};

const char* series_color(const std::string& scheme, int fallback_index) {
  if (scheme == "blockwise-oas") return "#1a7f37";
  if (scheme == "basic-oas") return "#0b66c2";
  if (scheme == "glasso") return "#c5221f";
  static const char* palette[] = {"#8250df", "#bf8700", "#1f6feb", "#cf222e"};
  return palette[fallback_index % 4];
}

}  // namespace

void emit_svg(const std::vector<ResultTable>& tables, std::ostream& out,
              const SvgAxes& axes) {
  std::map<std::string, Series> by_scheme;
  for (const ResultTable& t : tables)
    for (const ResultRow& r : t.rows) {
      Series& s = by_scheme[r.scheme];
      s.label = r.scheme;
      s.points.emplace_back(r.sweep_value, r.mse_db);
    }
  for (auto& [name, s] : by_scheme)
    std::sort(s.points.begin(), s.points.end());

  double xmin = 0.0, xmax = 1.0, ymin = -1.0, ymax = 0.0;
  bool first = true;
  for (const auto& [name, s] : by_scheme)
    for (const auto& [x, y] : s.points) {
      if (first) { xmin = xmax = x; ymin = ymax = y; first = false; }
      xmin = std::min(xmin, x); xmax = std::max(xmax, x);
      ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    }
  // range covers the data with a 5% pad on each side
  const double xpad = xmax > xmin ? 0.05 * (xmax - xmin) : 1.0;
  const double ypad = ymax > ymin ? 0.05 * (ymax - ymin) : 1.0;
  xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

  const double W = 760, H = 480, ml = 74, mr = 24, mt = 42, mb = 58;
  const auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  const auto py = [&](double y) {
    return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb);
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  if (!axes.title.empty())
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << xml_escape(axes.title) << "</text>\n";

  for (double t : nice_ticks(xmin, xmax, 7)) {
    out << "<line x1=\"" << px(t) << "\" y1=\"" << py(ymin) << "\" x2=\""
        << px(t) << "\" y2=\"" << py(ymax)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << px(t) << "\" y=\"" << H - mb + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" << fmt_tick(t) << "</text>\n";
  }
  for (double t : nice_ticks(ymin, ymax, 7)) {
    out << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(t) << "\" x2=\""
        << px(xmax) << "\" y2=\"" << py(t)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << py(t) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << fmt_tick(t) << "</text>\n";
  }
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
      << "\" height=\"" << H - mt - mb
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
      << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << xml_escape(axes.xlabel) << "</text>\n"
      << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 18 " << (mt + H - mb) / 2 << ")\">"
      << xml_escape(axes.ylabel) << "</text>\n";

  int idx = 0;
  for (const auto& [name, s] : by_scheme) {
    const char* color = series_color(name, idx++);
    if (s.points.size() > 1) {
      out << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"2\" points=\"";
      for (const auto& [x, y] : s.points) out << px(x) << "," << py(y) << " ";
      out << "\"/>\n";
    }
    for (const auto& [x, y] : s.points)
      out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
          << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
  }

  const double lx = W - mr - 190, ly0 = mt + 14;
  out << "<rect x=\"" << lx - 10 << "\" y=\"" << ly0 - 14 << "\" width=\"190\" "
      << "height=\"" << 22 * by_scheme.size() + 8
      << "\" fill=\"white\" stroke=\"#999999\"/>\n";
  idx = 0;
  for (const auto& [name, s] : by_scheme) {
    const char* color = series_color(name, idx);
    const double ly = ly0 + 22 * idx++;
    out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 26
        << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<circle cx=\"" << lx + 13 << "\" cy=\"" << ly
        << "\" r=\"3.5\" fill=\"" << color << "\"/>\n"
        << "<text x=\"" << lx + 34 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
}

void emit_svg(const std::vector<ResultTable>& tables, const std::string& path,
              const SvgAxes& axes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_svg: cannot open " + path);
  emit_svg(tables, out, axes);
  out.flush();
  if (!out) throw std::runtime_error("emit_svg: write failed for " + path);
}

}  // namespace oaslab
