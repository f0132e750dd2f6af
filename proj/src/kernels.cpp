#include "whs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "whs/logmath.hpp"

namespace whs::kernels {

namespace {

inline cplx conv_term(std::span<const cplx> f, std::span<const cplx> g, std::size_t n) {
  // k ranges over indices valid in both f and g
  const std::size_t k_lo = n >= g.size() ? n - g.size() + 1 : 0;
  const std::size_t k_hi = std::min(n, f.size() - 1);
  if (k_lo > k_hi) return {};
  if (k_hi - k_lo + 1 > kCompensateAbove) {
    CompensatedSum<cplx> acc;
    for (std::size_t k = k_lo; k <= k_hi; ++k) acc.add(f[k] * g[n - k]);
    return acc.value();
  }
  cplx s{};
  for (std::size_t k = k_lo; k <= k_hi; ++k) s += f[k] * g[n - k];
  return s;
}

inline double log_conv_term(std::span<const double> x, std::size_t n) {
  const double ninf = -std::numeric_limits<double>::infinity();
  const std::size_t half = n / 2;
  double mx = ninf;
  for (std::size_t k = 0; k <= half; ++k) mx = std::max(mx, x[k] + x[n - k]);
  if (!std::isfinite(mx)) return mx;
  CompensatedSum<double> acc;
  for (std::size_t k = 0; k <= half; ++k) {
    const double t = std::exp(x[k] + x[n - k] - mx);
    acc.add((2 * k == n) ? t : 2.0 * t);
  }
  return mx + std::log(acc.value());
}

void check_conv(std::span<const cplx> f, std::span<const cplx> g) {
  if (f.empty() || g.empty()) throw std::invalid_argument("convolve: empty operand");
}

}  // namespace

std::vector<cplx> convolve_serial(std::span<const cplx> f, std::span<const cplx> g,
                                  std::size_t out_len) {
  check_conv(f, g);
  std::vector<cplx> out(out_len);
  for (std::size_t n = 0; n < out_len; ++n) out[n] = conv_term(f, g, n);
  return out;
}

std::vector<cplx> convolve(std::span<const cplx> f, std::span<const cplx> g,
                           std::size_t out_len) {
  check_conv(f, g);
  std::vector<cplx> out(out_len);
  const auto len = static_cast<std::ptrdiff_t>(out_len);
#pragma omp parallel for schedule(dynamic, 64) if (out_len > 256)
  for (std::ptrdiff_t n = 0; n < len; ++n)
    out[static_cast<std::size_t>(n)] = conv_term(f, g, static_cast<std::size_t>(n));
  return out;
}

std::vector<double> log_self_convolve_serial(std::span<const double> x, std::size_t out_len) {
  if (out_len > x.size()) throw std::invalid_argument("log_self_convolve: input too short");
  std::vector<double> out(out_len);
  for (std::size_t n = 0; n < out_len; ++n) out[n] = log_conv_term(x, n);
  return out;
}

std::vector<double> log_self_convolve(std::span<const double> x, std::size_t out_len) {
  if (out_len > x.size()) throw std::invalid_argument("log_self_convolve: input too short");
  std::vector<double> out(out_len);
  const auto len = static_cast<std::ptrdiff_t>(out_len);
#pragma omp parallel for schedule(dynamic, 64) if (out_len > 256)
  for (std::ptrdiff_t n = 0; n < len; ++n)
    out[static_cast<std::size_t>(n)] = log_conv_term(x, static_cast<std::size_t>(n));
  return out;
}

void matvec_serial(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                   std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t i = 0; i < rows; ++i) {
    cplx s{};
    for (std::size_t j = 0; j < cols; ++j) s += a[i * cols + j] * x[j];
    y[i] = s;
  }
}

void matvec(std::span<const cplx> a, std::size_t rows, std::size_t cols,
            std::span<const cplx> x, std::span<cplx> y) {
  const auto r = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) if (rows * cols > 65536)
  for (std::ptrdiff_t i = 0; i < r; ++i) {
    const std::size_t row = static_cast<std::size_t>(i);
    cplx s{};
    for (std::size_t j = 0; j < cols; ++j) s += a[row * cols + j] * x[j];
    y[row] = s;
  }
}

void matvec_adjoint_serial(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                           std::span<const cplx> x, std::span<cplx> y) {
  std::fill(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(cols), cplx{});
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) y[j] += std::conj(a[i * cols + j]) * x[i];
}

void matvec_adjoint(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                    std::span<const cplx> x, std::span<cplx> y) {
  const auto c = static_cast<std::ptrdiff_t>(cols);
  // column-parallel so no reduction across threads
#pragma omp parallel for schedule(static) if (rows * cols > 65536)
  for (std::ptrdiff_t jj = 0; jj < c; ++jj) {
    const std::size_t j = static_cast<std::size_t>(jj);
    cplx s{};
    for (std::size_t i = 0; i < rows; ++i) s += std::conj(a[i * cols + j]) * x[i];
    y[j] = s;
  }
}

double max_log_excess_serial(std::span<const double> x, std::size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) best = std::max(best, x[i + j] - x[i] - x[j]);
  return best;
}

double max_log_excess(std::span<const double> x, std::size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 32) reduction(max : best)
  for (std::ptrdiff_t ii = 0; ii < nn; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; i + j < n; ++j) best = std::max(best, x[i + j] - x[i] - x[j]);
  }
  return best;
}

}  // namespace whs::kernels
