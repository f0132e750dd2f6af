#include "whs/autom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "whs/kernels.hpp"
#include "whs/quadrature.hpp"

namespace whs {

AutParam::AutParam(cplx a_, double alpha_J_) : a(a_), alpha_J(alpha_J_) {
  if (!(std::abs(a) < 1.0)) throw std::invalid_argument("AutParam: need |a| < 1");
  if (!(alpha_J > 1.0)) throw std::invalid_argument("AutParam: need alpha_J > 1");
}

TruncatedSeries ta_coeffs(cplx a, std::size_t N) {
  const AutParam param(a);
  std::vector<cplx> c(N + 1);
  c[0] = a;
  if (N >= 1) {
    const cplx ratio = -std::conj(a);
    cplx cur = 1.0 - std::norm(a);
    for (std::size_t n = 1; n <= N; ++n) {
      c[n] = cur;
      cur *= ratio;
    }
  }
  return {std::move(c), a == cplx{}};
}

CoeffTable::CoeffTable(AutParam a, std::size_t nmax, std::size_t mmax, std::vector<cplx> values)
    : a_(a), nmax_(nmax), mmax_(mmax), values_(std::move(values)) {
  if (values_.size() != (nmax_ + 1) * (mmax_ + 1))
    throw std::invalid_argument("CoeffTable: size mismatch");
}

std::size_t default_mmax(cplx a, std::size_t n) {
  const double r = std::abs(a);
  if (r == 0.0) return std::max<std::size_t>(n, 1);
  // turning point n(1+r)/(1-r), then a transition layer of width ~ n^(1/3)
  // and a geometric tail
  const double nn = static_cast<double>(n);
  const double turn = nn * (1.0 + r) / (1.0 - r);
  const double layer = 8.0 * std::cbrt(nn) / (1.0 - r);
  const double tail = 25.0 / std::log(1.0 / r);
  return static_cast<std::size_t>(std::ceil(turn + layer + tail));
}

namespace {

/// First `len` coefficients of x * T_a. The tail of T_a is geometric with
/// ratio -conj(a), so the convolution collapses to a running sum:
///   y_m = a x_m + (1 - |a|^2) S_m,  S_m = x_{m-1} - conj(a) S_{m-1}.
std::vector<cplx> mobius_multiply(std::span<const cplx> x, cplx a, std::size_t len) {
  std::vector<cplx> y(len);
  const cplx ratio = -std::conj(a);
  const double c = 1.0 - std::norm(a);
  cplx running{};
  for (std::size_t m = 0; m < len; ++m) {
    if (m > 0) running = (m - 1 < x.size() ? x[m - 1] : cplx{}) + ratio * running;
    y[m] = a * (m < x.size() ? x[m] : cplx{}) + c * running;
  }
  return y;
}

}  // namespace

CoeffTable ta_power_table(cplx a, std::size_t nmax, std::size_t mmax) {
  const AutParam param(a);
  const std::size_t width = mmax + 1;
  if ((nmax + 1) > std::numeric_limits<std::size_t>::max() / width)
    throw std::length_error("ta_power_table: table too large");
  std::vector<cplx> values((nmax + 1) * width);
  values[0] = 1.0;
  for (std::size_t n = 1; n <= nmax; ++n) {
    std::span<const cplx> prev(values.data() + (n - 1) * width, width);
    auto row = mobius_multiply(prev, a, width);
    std::copy(row.begin(), row.end(), values.begin() + static_cast<std::ptrdiff_t>(n * width));
  }
  return {param, nmax, mmax, std::move(values)};
}

std::vector<double> ta_power_coeffs_real(double a, std::size_t n, std::size_t mmax) {
  if (!(std::abs(a) < 1.0)) throw std::invalid_argument("ta_power_coeffs_real: need |a| < 1");
  std::vector<double> g(mmax + 1, 0.0);
  if (a == 0.0) {
    if (n <= mmax) g[n] = 1.0;
    return g;
  }
  // run the recurrence on a rescaled copy; g_0 = a^n would underflow for large n
  const double a2 = a * a;
  const double nn = static_cast<double>(n);
  double log_scale = nn * std::log(std::abs(a));
  const double sign0 = (a < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
  std::vector<double> scaled(mmax + 1, 0.0);
  std::vector<double> scale_at(mmax + 1, 0.0);
  double gm1 = 0.0, gm = sign0;
  scaled[0] = gm;
  scale_at[0] = log_scale;
  for (std::size_t m = 0; m < mmax; ++m) {
    const double mm = static_cast<double>(m);
    const double next = ((nn * (1.0 - a2) - (1.0 + a2) * mm) * gm - a * (mm - 1.0) * gm1) /
                        (a * (mm + 1.0));
    gm1 = gm;
    gm = next;
    const double big = std::max(std::abs(gm), std::abs(gm1));
    if (big > 1e100) {
      gm /= 1e100;
      gm1 /= 1e100;
      log_scale += std::log(1e100);
    }
    scaled[m + 1] = gm;
    scale_at[m + 1] = log_scale;
  }
  for (std::size_t m = 0; m <= mmax; ++m) g[m] = scaled[m] * std::exp(scale_at[m]);
  return g;
}

DenseMatrix comp_matrix(cplx a, const WeightSequence& w, double p, std::size_t M, std::size_t N) {
  if (!(p >= 1.0) || std::isinf(p))
    throw std::invalid_argument("comp_matrix: p must lie in [1, inf)");
  if (M == 0 || N == 0) throw std::invalid_argument("comp_matrix: empty truncation");
  const auto table = ta_power_table(a, N - 1, M - 1);
  const auto logs = w.log_values(std::max(M, N));
  DenseMatrix A(M, N);
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t n = 0; n < N; ++n) {
      const cplx c = table.at(n, m);
      A(m, n) = (c == cplx{}) ? cplx{} : c * std::exp((logs[m] - logs[n]) / p);
    }
  return A;
}

double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("conjugate_exponent: p must be at least 1");
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

namespace {

double fit_or_zero(std::span<const std::size_t> idx, std::span<const double> vals) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (idx[i] > 0 && vals[i] > 0.0) {
      x.push_back(static_cast<double>(idx[i]));
      y.push_back(vals[i]);
    }
  if (x.size() < 2) return 0.0;
  return fitted_exponent(x, y);
}

}  // namespace

SumsReport column_sums(cplx a, const WeightSequence& w, double p, std::size_t M,
                       std::span<const std::size_t> n_list) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("column_sums: p must lie in [1, inf)");
  if (n_list.empty()) throw std::invalid_argument("column_sums: empty index list");
  const std::size_t nmax = *std::max_element(n_list.begin(), n_list.end());
  if (M == 0) M = default_mmax(a, nmax) + 1;
  const auto table = ta_power_table(a, nmax, M - 1);
  const auto logs = w.log_values(std::max(M, nmax + 1));

  SumsReport r;
  r.p = p;
  r.q = conjugate_exponent(p);
  r.indices.assign(n_list.begin(), n_list.end());
  r.C_values.resize(n_list.size());
  const double ninf = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const std::size_t n = n_list[i];
    const auto row = table.row(n);
    const double l = log_sum_exp_gen(M, [&](std::size_t m) {
      const double c = std::abs(row[m]);
      return c == 0.0 ? ninf : p * std::log(c) + logs[m] - logs[n];
    });
    r.C_values[i] = std::exp(l);
  }
  r.fitted_exponent = fit_or_zero(r.indices, r.C_values);
  return r;
}

SumsReport row_sums(cplx a, const WeightSequence& w, double p, std::size_t N,
                    std::span<const std::size_t> m_list) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("row_sums: p must lie in [1, inf)");
  if (m_list.empty()) throw std::invalid_argument("row_sums: empty index list");
  const std::size_t mmax = *std::max_element(m_list.begin(), m_list.end());
  if (N == 0) {
    // the mass of T_a^n sits in [n (1-r)/(1+r), n (1+r)/(1-r)], so column m
    // needs n up to the same margin past m (1+r)/(1-r)
    N = default_mmax(a, mmax) + 1;
  }
  const auto table = ta_power_table(a, N - 1, mmax);
  const auto logs = w.log_values(std::max(N, mmax + 1));
  const double q = conjugate_exponent(p);

  SumsReport out;
  out.p = p;
  out.q = q;
  out.indices.assign(m_list.begin(), m_list.end());
  out.L_values.resize(m_list.size());
  const double ninf = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    const std::size_t m = m_list[i];
    if (std::isinf(q)) {
      double best = ninf;
      for (std::size_t n = 0; n < N; ++n) {
        const double c = std::abs(table.at(n, m));
        if (c > 0.0) best = std::max(best, std::log(c) + (logs[m] - logs[n]) / p);
      }
      out.L_values[i] = std::exp(best);
    } else {
      const double l = log_sum_exp_gen(N, [&](std::size_t n) {
        const double c = std::abs(table.at(n, m));
        return c == 0.0 ? ninf : q * std::log(c) + (q / p) * (logs[m] - logs[n]);
      });
      out.L_values[i] = std::exp(l);
    }
  }
  out.fitted_exponent = fit_or_zero(out.indices, out.L_values);
  return out;
}

OscResult osc_integral(std::size_t n, std::size_t m, double s, std::size_t nodes, double alpha_J) {
  if (n == 0) throw std::invalid_argument("osc_integral: n must be positive");
  if (!(s >= 1.0)) throw std::invalid_argument("osc_integral: s must be at least 1");
  OscResult out;
  const double r = static_cast<double>(m) / static_cast<double>(n);
  const double slack = 1e-12;
  out.in_J = r >= 1.0 / alpha_J - slack && r <= alpha_J + slack;
  if (nodes == 0) nodes = n > 16 ? std::max<std::size_t>(64, 4 * n) : 64;
  nodes = std::max<std::size_t>(nodes, 2);

  auto coef = [&](double a) { return ta_power_coeffs_real(a, n, m)[m]; };
  auto integrand = [&](double a) { return std::pow(std::abs(coef(a)), s); };

  // breakpoints at sign changes of the coefficient
  std::vector<double> breaks{kIntervalLo};
  const double h = (kIntervalHi - kIntervalLo) / static_cast<double>(nodes);
  double x0 = kIntervalLo, f0 = coef(x0);
  for (std::size_t i = 1; i <= nodes; ++i) {
    const double x1 = (i == nodes) ? kIntervalHi : kIntervalLo + h * static_cast<double>(i);
    const double f1 = coef(x1);
    if (f0 == 0.0 && i > 1) {
      breaks.push_back(x0);
    } else if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = coef(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      breaks.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  breaks.push_back(kIntervalHi);

  constexpr std::size_t order = 24;
  CompensatedSum<double> total, err;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i], hi = breaks[i + 1];
    if (hi <= lo) continue;
    const double coarse = quad::integrate(integrand, lo, hi, order);
    const double fine = quad::integrate(integrand, lo, hi, 2 * order);
    total.add(fine);
    err.add(std::abs(fine - coarse));
    ++out.segments;
  }
  out.value = total.value();
  out.error_estimate = err.value();
  return out;
}

VdcResult vdc_bound_check(std::span<const double> phase_poly, double A, double B, double delta,
                          double M, std::size_t nodes) {
  if (!(B > A)) throw std::invalid_argument("vdc_bound_check: need A < B");
  if (!(delta > 0.0) || !(M >= 0.0)) throw std::invalid_argument("vdc_bound_check: need delta > 0, M >= 0");
  auto horner = [](std::span<const double> c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
  };
  std::vector<double> d1, d2;
  for (std::size_t i = 1; i < phase_poly.size(); ++i) d1.push_back(static_cast<double>(i) * phase_poly[i]);
  for (std::size_t i = 1; i < d1.size(); ++i) d2.push_back(static_cast<double>(i) * d1[i]);

  nodes = std::max<std::size_t>(nodes, 2);
  double max_slope = 0.0;
  for (std::size_t i = 0; i <= nodes; ++i) {
    const double x = A + (B - A) * static_cast<double>(i) / static_cast<double>(nodes);
    const double fp = std::abs(horner(d1, x)), fpp = std::abs(horner(d2, x));
    if (fp < delta * (1.0 - 1e-12))
      throw std::domain_error("vdc_bound_check: |f'| drops below delta on the grid");
    if (fpp > M * (1.0 + 1e-12) + 1e-300)
      throw std::domain_error("vdc_bound_check: |f''| exceeds M on the grid");
    max_slope = std::max(max_slope, fp);
  }
  // a few panels per radian of phase variation
  const auto panels = static_cast<std::size_t>(std::ceil(max_slope * (B - A))) + 8;
  const double re = quad::integrate_composite([&](double x) { return std::cos(horner(phase_poly, x)); }, A, B, panels, 20);
  const double im = quad::integrate_composite([&](double x) { return std::sin(horner(phase_poly, x)); }, A, B, panels, 20);
  VdcResult out;
  out.lhs = std::hypot(re, im);
  out.rhs = 2.0 / delta + M * (B - A) / (delta * delta);
  out.ok = out.lhs <= out.rhs;
  return out;
}

}  // namespace whs
