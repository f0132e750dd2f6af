#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace whs {

/// Neumaier's variant of Kahan summation.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    if constexpr (std::is_floating_point_v<T>) {
      if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
      else
        comp_ += (x - t) + sum_;
    } else {
      // componentwise for complex
      using R = typename T::value_type;
      R cr = comp_.real(), ci = comp_.imag();
      accumulate(sum_.real(), x.real(), t.real(), cr);
      accumulate(sum_.imag(), x.imag(), t.imag(), ci);
      comp_ = T(cr, ci);
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  template <typename R>
  static void accumulate(R s, R x, R t, R& c) {
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
  }
  T sum_{};
  T comp_{};
};

/// A positive real carried by its natural logarithm.
struct LogReal {
  double log = -std::numeric_limits<double>::infinity();

  /// exp(log), or +inf when it would overflow.
  double linear() const { return std::exp(log); }
  bool representable() const { return log < 709.0; }
};

/// log(sum exp(x_i)) with the max-shift; -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> xs);

/// Same, with the two-pass shift fused into a caller-provided generator
/// of `count` terms.
template <typename F>
double log_sum_exp_gen(std::size_t count, F&& term) {
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) mx = std::max(mx, term(i));
  if (!std::isfinite(mx)) return mx;
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < count; ++i) acc.add(std::exp(term(i) - mx));
  return mx + std::log(acc.value());
}

/// Least-squares slope of ys against xs.
double least_squares_slope(std::span<const double> xs, std::span<const double> ys);

/// Slope of log(ys) against log(xs); non-positive ys are skipped.
double fitted_exponent(std::span<const double> xs, std::span<const double> ys);

}  // namespace whs
