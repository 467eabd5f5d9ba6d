#include "subfrac/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace subfrac {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_grid_csv(const GridFunction& f, const std::string& path) {
  f.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "t,u,value\n";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    int idx = static_cast<int>(i);
    out << format_double(f.grid.t(idx)) << ',' << format_double(f.grid.u(idx)) << ','
        << format_double(f.values[i]) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_multi_csv(const Grid& grid, const std::vector<std::string>& names,
                     const std::vector<std::vector<double>>& cols, const std::string& path) {
  if (names.size() != cols.size())
    throw std::invalid_argument("write_multi_csv: names/columns mismatch");
  for (const auto& c : cols)
    if (c.size() != grid.size())
      throw std::invalid_argument("write_multi_csv: column length mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "t,u";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    int idx = static_cast<int>(i);
    out << format_double(grid.t(idx)) << ',' << format_double(grid.u(idx));
    for (const auto& c : cols) out << ',' << format_double(c[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::pair<double, double>> read_tv_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string ts, vs;
    if (!std::getline(ls, ts, ',') || !std::getline(ls, vs, ','))
      throw std::runtime_error("malformed csv row: " + line);
    rows.emplace_back(std::stod(ts), std::stod(vs));
  }
  if (rows.size() < 2) throw std::runtime_error("need at least two samples: " + path);
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].first > rows[i - 1].first))
      throw std::runtime_error("samples must be strictly increasing in t: " + path);
  return rows;
}

GridFunction interpolate_onto(const Grid& grid, const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("interpolate_onto: need >= 2 samples");
  if (samples.front().first > grid.lower() || samples.back().first < grid.upper())
    throw std::invalid_argument("interpolate_onto: samples do not cover the grid range");

  const std::size_t n = samples.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::pow(samples[i].first, grid.rho());
    y[i] = samples[i].second;
  }

  // Fritsch-Carlson monotone cubic slopes
  std::vector<double> h(n - 1), delta(n - 1), m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  m[0] = delta[0];
  m[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0)
      m[i] = 0.0;
    else {
      double w1 = 2.0 * h[i] + h[i - 1];
      double w2 = h[i] + 2.0 * h[i - 1];
      m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (delta[i] == 0.0) {
      m[i] = m[i + 1] = 0.0;
      continue;
    }
    double a = m[i] / delta[i], b = m[i + 1] / delta[i];
    double r = a * a + b * b;
    if (r > 9.0) {
      double tau = 3.0 / std::sqrt(r);
      m[i] = tau * a * delta[i];
      m[i + 1] = tau * b * delta[i];
    }
  }

  GridFunction out{grid, std::vector<double>(grid.size())};
  std::size_t seg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double u = grid.u(static_cast<int>(i));
    while (seg + 2 < n && x[seg + 1] < u) ++seg;
    double t01 = (u - x[seg]) / h[seg];
    t01 = std::min(1.0, std::max(0.0, t01));
    double h00 = (1.0 + 2.0 * t01) * (1.0 - t01) * (1.0 - t01);
    double h10 = t01 * (1.0 - t01) * (1.0 - t01);
    double h01 = t01 * t01 * (3.0 - 2.0 * t01);
    double h11 = t01 * t01 * (t01 - 1.0);
    out.values[i] =
        h00 * y[seg] + h10 * h[seg] * m[seg] + h01 * y[seg + 1] + h11 * h[seg] * m[seg + 1];
  }
  out.validate();
  return out;
}

}  // namespace subfrac
