#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <json.hpp>

#include "whs/weights.hpp"

namespace whs {

using cplx = std::complex<double>;

/// Coefficients a_0..a_N of a power series, either an exact polynomial or a
/// truncation whose unknown tail starts at degree N + 1.
class TruncatedSeries {
 public:
  TruncatedSeries(std::vector<cplx> coeffs, bool exact_poly);

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  std::size_t bound() const { return coeffs_.size() - 1; }
  bool exact_poly() const { return exact_poly_; }
  cplx operator[](std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : cplx{}; }

  /// Keep coefficients up to degree N; the result is a truncation unless
  /// nothing nonzero was dropped from an exact polynomial.
  TruncatedSeries truncated(std::size_t N) const;

  /// Highest index with a nonzero coefficient (0 for the zero series).
  std::size_t degree() const;

 private:
  std::vector<cplx> coeffs_;
  bool exact_poly_;
};

TruncatedSeries constant_series(cplx c);
/// e_m(z) = z^m as a polynomial padded with zeros to degree N.
TruncatedSeries monomial(std::size_t m, std::size_t N);
/// sum_{lo <= n < hi} z^n.
TruncatedSeries indicator_block(std::size_t lo, std::size_t hi_exclusive);

/// Integers n with x <= n < y.
struct IndexRange {
  std::size_t lo = 0;
  std::size_t hi = 0;  // exclusive
  std::size_t size() const { return hi > lo ? hi - lo : 0; }
};
IndexRange integer_range(double x, double y);

/// I_k = [m_k/3, m_k/2) with m_k = 3^k.
IndexRange level_block(unsigned k);
/// 2 I_k = [2 m_k/3, m_k).
IndexRange doubled_level_block(unsigned k);
/// f_k = sum over n in I_k of z^n.
TruncatedSeries level_block_series(unsigned k);

TruncatedSeries cauchy_product(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries power(const TruncatedSeries& f, std::size_t n);
TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);

/// log ||f|| in h^p(beta): for p < inf, (1/p) log sum |a_n|^p beta_n; for
/// p = inf, log sup |a_n| beta_n. -inf for the zero series.
double log_norm_hp_beta(const TruncatedSeries& f, double p, const WeightSequence& w);
double norm_hp_beta(const TruncatedSeries& f, double p, const WeightSequence& w);

/// ||f g|| / (||f|| ||g||) in h^2(beta) for exact polynomials.
double algebra_ratio(const TruncatedSeries& f, const TruncatedSeries& g, const WeightSequence& w);
double log_algebra_ratio(const TruncatedSeries& f, const TruncatedSeries& g,
                         const WeightSequence& w);

/// Coefficients of f o phi up to degree N (Horner). f must be an exact
/// polynomial; a truncated phi must be known at least to degree N.
TruncatedSeries compose_truncated(const TruncatedSeries& f, const TruncatedSeries& phi,
                                  std::size_t N);

cplx eval(const TruncatedSeries& f, cplx z);

void to_json(nlohmann::json& j, const TruncatedSeries& f);
/// Accepts [[re, im], ...] or {"coeffs": [...], "exact_poly": bool}.
TruncatedSeries series_from_json(const nlohmann::json& j);

}  // namespace whs
