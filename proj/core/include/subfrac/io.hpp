#pragma once

#include <string>
#include <utility>
#include <vector>

#include "subfrac/core.hpp"

namespace subfrac {

/// Doubles rendered with up to 12 significant digits (%.12g).
std::string format_double(double x);

/// CSV with header `t,u,value`.
void write_grid_csv(const GridFunction& f, const std::string& path);

/// CSV with header `t,u,<name0>,<name1>,...`; one column per entry of cols.
void write_multi_csv(const Grid& grid, const std::vector<std::string>& names,
                     const std::vector<std::vector<double>>& cols, const std::string& path);

/// Reads a two-column CSV `t,value` (header required).
std::vector<std::pair<double, double>> read_tv_csv(const std::string& path);

/// Interpolates tabulated (t, value) samples onto the grid by monotone
/// piecewise-cubic (Fritsch-Carlson) interpolation in u = t^rho. The samples
/// must cover [grid.lower(), grid.upper()].
GridFunction interpolate_onto(const Grid& grid, const std::vector<std::pair<double, double>>& samples);

}  // namespace subfrac
