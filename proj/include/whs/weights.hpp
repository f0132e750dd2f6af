#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "whs/logmath.hpp"

namespace whs {

enum class WeightKind {
  constant,
  parity,
  exp_sqrt,
  exp_n_over_log,
  zorboska,
  sigma,
  n_log_alpha,
  moment,
  power,      // beta_n = (n + 1)^s
  geometric,  // beta_n = r^n
};

using ParamMap = std::map<std::string, double>;

/// A positive weight sequence beta_0, beta_1, ... held as natural logs.
///
/// Values are generated lazily and memoized. Copies share the memo; the
/// memo is guarded by a mutex, so concurrent reads are safe at any time.
class WeightSequence {
 public:
  WeightSequence(WeightKind kind, ParamMap params, std::string description);

  WeightKind kind() const { return kind_; }
  const ParamMap& params() const { return params_; }
  const std::string& description() const { return description_; }

  double log_beta(std::size_t n) const;
  double beta(std::size_t n) const { return std::exp(log_beta(n)); }

  /// log beta_0 .. log beta_{count-1}.
  std::vector<double> log_values(std::size_t count) const;

  /// Generate and cache the first `count` values.
  void warm(std::size_t count) const;

  /// log beta_{m+n} - log beta_m - log beta_n. Exact in sign (and zero when
  /// the excess vanishes) for the sigma weight, whose logs are rationals.
  double log_excess(std::size_t m, std::size_t n) const;

 private:
  struct Memo;
  WeightKind kind_;
  ParamMap params_;
  std::string description_;
  std::shared_ptr<Memo> memo_;
};

// Generators.
WeightSequence weight_constant();
WeightSequence weight_parity(double gamma, double gamma_odd);
WeightSequence weight_exp_sqrt();
WeightSequence weight_exp_n_over_log();
WeightSequence weight_zorboska();
WeightSequence weight_sigma();
WeightSequence weight_n_log_alpha(double alpha);
WeightSequence weight_moment(double alpha);
WeightSequence weight_power(double exponent);
WeightSequence weight_geometric(double ratio);

/// Build a weight from a string id and parameter map, as used by the CLI.
/// Throws std::invalid_argument on an unknown id or bad parameters.
WeightSequence make_weight(std::string_view id, const ParamMap& params = {});
const std::vector<std::string>& weight_ids();

/// m_k = 3^k.
std::size_t pow3(unsigned k);

/// sigma(0) = 1 and sigma(n) = k for 3^(k-1) <= n < 3^k.
unsigned sigma_index(std::size_t n);

// Moment sequence gamma_n = int_0^1 t^(n-1) omega(t) dt with
// omega(t) = (log+(1 / log(1/t)))^alpha.

struct MomentResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool flagged = false;  // estimated error above tolerance for the node budget
};

MomentResult moment_gamma(double alpha, std::size_t n, std::size_t quad_nodes = 256);

// Convolution sequence B_n = sum_{k=0}^n 1 / (beta_k beta_{n-k}).

struct BSeq {
  std::vector<double> values;      // B_0..B_N (may underflow to 0 for huge weights)
  std::vector<double> log_values;  // log B_0..log B_N
  WeightSequence source;
};

BSeq bn_sequence(const WeightSequence& w, std::size_t N);

/// log(beta_n B_n) for n = 0..N.
std::vector<double> bnbeta_log_values(const WeightSequence& w, std::size_t N);

/// sup_{n<=N} beta_n B_n.
LogReal bnbeta_sup(const WeightSequence& w, std::size_t N);
/// sup_{1<=n<=N} beta_n B_n / n.
LogReal bnbeta_n_ratio(const WeightSequence& w, std::size_t N);
/// sum_{n<=N} beta_n B_n^2.
LogReal bnbeta2_partial(const WeightSequence& w, std::size_t N);

// Regularity diagnostics over a finite range. Finite data cannot certify an
// asymptotic property, so these report the tightest constants observed.

struct OscillationReport {
  std::size_t range_max = 0;
  double log_c_best = 0.0;  // min log(beta_m / beta_n) over n/2 <= m <= 2n
  double log_C_best = 0.0;  // max of the same
  bool is_slowly_oscillating_up_to_range = false;

  double c_best() const { return std::exp(log_c_best); }
  double C_best() const { return std::exp(log_C_best); }
};

OscillationReport slow_oscillation_constants(const WeightSequence& w, std::size_t N,
                                             double ratio_cap = 1e3);

/// max over n <= m <= N of beta_m / beta_n.
LogReal essential_decrease_constant(const WeightSequence& w, std::size_t N);

struct SubmultReport {
  std::size_t range_max = 0;
  double log_C_sub = 0.0;  // max over m + n <= N of log(beta_{m+n} / (beta_m beta_n))
  double C_sub() const { return std::exp(log_C_sub); }
};

SubmultReport submult_constant(const WeightSequence& w, std::size_t N);

/// max over m + n <= N of log_excess(m, n), exact for the sigma weight.
double max_log_excess(const WeightSequence& w, std::size_t N);

/// sum_{n<=N} 1 / beta_n.
double reciprocal_partial_sum(const WeightSequence& w, std::size_t N);

/// beta_n^(1/n) for n = 1..N (element i holds n = i + 1).
std::vector<double> root_sequence(const WeightSequence& w, std::size_t N);

/// log(beta_{n+1} / beta_n) maximized over lo <= n < hi.
double max_log_step(const WeightSequence& w, std::size_t lo, std::size_t hi);

// Tail sums for the weight exp(n / log n).

/// alpha_{n,k} = n/log n - k/log k - (n-k)/log(n-k).
double nlog_alpha(std::size_t n, std::size_t k);
/// sum_{k=2}^{floor(n/2)} exp(alpha_{n,k}); requires n >= 4.
double nlog_tail_sum(std::size_t n);
/// The part of the tail sum with k <= sqrt(n).
double nlog_small_k_sum(std::size_t n);
/// (n/2) exp(-sqrt(n) log 2 / (log n (log n - log 2))), the bound on the k >= sqrt(n) part.
double nlog_large_k_bound(double n);
/// sum_{k>=2} exp(-k / (2 log k)), summed until terms drop below tol.
double nlog_small_k_majorant(double tol = 1e-17);

}  // namespace whs
