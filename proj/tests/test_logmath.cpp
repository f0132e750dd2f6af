#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "whs/logmath.hpp"

using namespace whs;

TEST_CASE("compensated sum recovers cancelled small terms") {
  CompensatedSum<double> s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-10));
}

TEST_CASE("compensated complex sum") {
  CompensatedSum<std::complex<double>> s;
  s.add({1e16, -1e16});
  s.add({1.0, 2.0});
  s.add({-1e16, 1e16});
  CHECK(s.value() == std::complex<double>(1.0, 2.0));
}

TEST_CASE("log_sum_exp") {
  std::vector<double> xs{1000.0, 1000.0};
  CHECK(log_sum_exp(xs) == doctest::Approx(1000.0 + std::log(2.0)));
  CHECK(std::isinf(log_sum_exp(std::vector<double>{})));
  const double v = log_sum_exp_gen(3, [](std::size_t i) { return std::log(double(i + 1)); });
  CHECK(v == doctest::Approx(std::log(6.0)));
}

TEST_CASE("LogReal") {
  LogReal r{std::log(5.0)};
  CHECK(r.linear() == doctest::Approx(5.0));
  CHECK(r.representable());
  CHECK_FALSE(LogReal{800.0}.representable());
}

TEST_CASE("least squares slope and fitted exponent") {
  std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  CHECK(least_squares_slope(x, y) == doctest::Approx(2.0));
  std::vector<double> n{32, 64, 128, 256}, c;
  for (double v : n) c.push_back(7.0 * std::sqrt(v));
  CHECK(fitted_exponent(n, c) == doctest::Approx(0.5));
  c[1] = 0.0;  // skipped
  CHECK(fitted_exponent(n, c) == doctest::Approx(0.5));
}
