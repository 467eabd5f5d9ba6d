#include <cstdio>
#include <stdexcept>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "subfrac/io.hpp"

using namespace subfrac;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("grid csv round trip") {
  Grid grid(0.0, 1.0, 8, 2.0);
  GridFunction f = sample(grid, [](double t) { return 1.0 + t; });
  std::string path = temp_path("subfrac_io_test.csv");
  write_grid_csv(f, path);
  std::string text = slurp(path);
  CHECK(text.rfind("t,u,value\n", 0) == 0);
  auto rows = read_tv_csv(path);  // reads the first two columns (t, u)
  CHECK(rows.size() == 9);
  CHECK(rows.front().first == 0.0);
  CHECK(rows.back().first == 1.0);
  std::remove(path.c_str());
}

TEST_CASE("multi csv layout") {
  Grid grid(0.0, 1.0, 4, 1.0);
  std::vector<std::vector<double>> cols{{0, 1, 2, 3, 4}, {0, 2, 4, 6, 8}};
  std::string path = temp_path("subfrac_io_multi.csv");
  write_multi_csv(grid, {"one", "two"}, cols, path);
  std::string text = slurp(path);
  CHECK(text.rfind("t,u,one,two\n", 0) == 0);
  CHECK_THROWS_AS(write_multi_csv(grid, {"one"}, cols, path), std::invalid_argument);
  std::remove(path.c_str());
}

TEST_CASE("monotone interpolation onto the working grid") {
  // tabulated samples of a monotone function on an irregular t set
  std::vector<std::pair<double, double>> samples;
  for (double t : {0.0, 0.07, 0.22, 0.41, 0.55, 0.68, 0.85, 1.0})
    samples.emplace_back(t, t * t + 0.5);
  Grid grid(0.0, 1.0, 64, 2.0);
  GridFunction f = interpolate_onto(grid, samples);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    double t = grid.t(static_cast<int>(i));
    CHECK(f.values[i] == doctest::Approx(t * t + 0.5).epsilon(5e-3));
    if (i > 0) CHECK(f.values[i] >= f.values[i - 1] - 1e-12);  // monotone preserved
  }

  // linear data reproduces exactly in u when rho = 1
  Grid lin_grid(0.0, 1.0, 16, 1.0);
  std::vector<std::pair<double, double>> lin{{0.0, 1.0}, {0.5, 2.0}, {1.0, 3.0}};
  GridFunction g = interpolate_onto(lin_grid, lin);
  for (std::size_t i = 0; i < g.values.size(); ++i)
    CHECK(g.values[i] == doctest::Approx(1.0 + 2.0 * lin_grid.t(static_cast<int>(i))).epsilon(1e-12));

  std::vector<std::pair<double, double>> short_range{{0.2, 1.0}, {0.8, 2.0}};
  CHECK_THROWS_AS(interpolate_onto(grid, short_range), std::invalid_argument);
}

TEST_CASE("format_double is locale-free and stable") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
}
