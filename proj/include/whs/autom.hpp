#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "whs/opmat.hpp"
#include "whs/series.hpp"
#include "whs/weights.hpp"

namespace whs {

/// Parameter of the disk automorphism T_a(z) = (a + z) / (1 + conj(a) z),
/// together with the ratio window J = [1/alpha_J, alpha_J].
struct AutParam {
  cplx a;
  double alpha_J = 1.25;

  AutParam(cplx a_, double alpha_J_ = 1.25);
};

/// The integration window for a: I = [1/2, 2/3].
inline constexpr double kIntervalLo = 0.5;
inline constexpr double kIntervalHi = 2.0 / 3.0;

/// Taylor coefficients of T_a up to degree N: T_a(0) = a and
/// coef(n) = (-1)^(n-1) conj(a)^(n-1) (1 - |a|^2) for n >= 1.
TruncatedSeries ta_coeffs(cplx a, std::size_t N);

/// Coefficients of the pointwise powers T_a^n, n = 0..nmax, m = 0..mmax.
class CoeffTable {
 public:
  CoeffTable(AutParam a, std::size_t nmax, std::size_t mmax, std::vector<cplx> values);

  const AutParam& param() const { return a_; }
  std::size_t nmax() const { return nmax_; }
  std::size_t mmax() const { return mmax_; }
  cplx at(std::size_t n, std::size_t m) const { return values_[n * (mmax_ + 1) + m]; }
  std::span<const cplx> row(std::size_t n) const {
    return {values_.data() + n * (mmax_ + 1), mmax_ + 1};
  }

 private:
  AutParam a_;
  std::size_t nmax_, mmax_;
  std::vector<cplx> values_;
};

/// Truncation length that leaves a Parseval defect below about 1e-10 for T_a^n.
std::size_t default_mmax(cplx a, std::size_t n);

/// T_a^n = T_a^(n-1) T_a by truncated Cauchy products, one row per power.
/// The product with T_a uses the geometric tail of its coefficients, so each
/// row costs O(mmax).
CoeffTable ta_power_table(cplx a, std::size_t nmax, std::size_t mmax);

/// Coefficients 0..mmax of T_a^n for real a from the three-term recurrence
///   a (m+1) g_{m+1} = (n (1 - a^2) - (1 + a^2) m) g_m - a (m - 1) g_{m-1},
/// which follows from (a + z)(1 + a z) g' = n (1 - a^2) g. Forward-stable
/// for m up to the oscillatory range m <~ n (1 + a)/(1 - a).
std::vector<double> ta_power_coeffs_real(double a, std::size_t n, std::size_t mmax);

/// Matrix of C_{T_a} on h^p(beta) in the canonical basis, truncated to
/// rows m < M and columns n < N: entry coef(T_a^n, m) (beta_m / beta_n)^(1/p).
DenseMatrix comp_matrix(cplx a, const WeightSequence& w, double p, std::size_t M, std::size_t N);

struct SumsReport {
  double p = 2.0;
  double q = 2.0;  // conjugate exponent
  std::vector<std::size_t> indices;
  std::vector<double> C_values;  // column sums, when requested
  std::vector<double> L_values;  // row sums, when requested
  double fitted_exponent = 0.0;  // least-squares slope of log sum vs log index (0 if < 2 points)
};

/// C_n = sum_{m < M} |coef(T_a^n, m)|^p beta_m / beta_n. M = 0 picks
/// default_mmax for the largest n. Truncation gives lower bounds.
SumsReport column_sums(cplx a, const WeightSequence& w, double p, std::size_t M,
                       std::span<const std::size_t> n_list);

/// L_m = sum_{n < N} |coef(T_a^n, m)|^q (beta_m / beta_n)^(q/p), with the
/// sup over n when p = 1 (q = inf).
SumsReport row_sums(cplx a, const WeightSequence& w, double p, std::size_t N,
                    std::span<const std::size_t> m_list);

double conjugate_exponent(double p);

struct OscResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool in_J = true;            // m / n within J
  std::size_t segments = 0;    // smooth pieces between sign changes
};

/// int_I |coef(T_a^n, m)|^s da over I = [1/2, 2/3]. The integrand is split at
/// the sign changes of the (real) coefficient found on a `nodes`-point scan,
/// then each piece gets Gauss–Legendre; the error estimate compares orders.
/// nodes = 0 picks max(64, 4n).
OscResult osc_integral(std::size_t n, std::size_t m, double s, std::size_t nodes = 0,
                       double alpha_J = 1.25);

struct VdcResult {
  double lhs = 0.0;  // |int_A^B exp(i f)|
  double rhs = 0.0;  // 2/delta + M (B - A)/delta^2
  bool ok = false;
};

/// Van der Corput check for a real polynomial phase (ascending coefficients).
/// Throws std::domain_error when |f'| >= delta or |f''| <= M fails on the grid.
VdcResult vdc_bound_check(std::span<const double> phase_poly, double A, double B, double delta,
                          double M, std::size_t nodes = 2048);

}  // namespace whs
