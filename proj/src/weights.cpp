#include "whs/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "whs/kernels.hpp"
#include "whs/quadrature.hpp"

namespace whs {

namespace {

const double kLog3 = std::log(3.0);
const double kLog9 = std::log(9.0);

double param(const ParamMap& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument("weight parameter missing: " + key);
  return it->second;
}

double param_or(const ParamMap& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

}  // namespace

std::size_t pow3(unsigned k) {
  std::size_t m = 1;
  for (unsigned i = 0; i < k; ++i) m *= 3;
  return m;
}

unsigned sigma_index(std::size_t n) {
  if (n == 0) return 1;
  unsigned k = 1;
  std::size_t m = 3;
  while (n >= m) {
    m *= 3;
    ++k;
  }
  return k;
}

struct WeightSequence::Memo {
  std::mutex mu;
  std::vector<double> logs;
  // running state of the Zorboska recurrence
  CompensatedSum<double> running;
};

WeightSequence::WeightSequence(WeightKind kind, ParamMap params, std::string description)
    : kind_(kind),
      params_(std::move(params)),
      description_(std::move(description)),
      memo_(std::make_shared<Memo>()) {}

void WeightSequence::warm(std::size_t count) const {
  std::lock_guard lock(memo_->mu);
  auto& logs = memo_->logs;
  if (logs.size() >= count) return;
  logs.reserve(count);
  for (std::size_t n = logs.size(); n < count; ++n) {
    const double x = static_cast<double>(n);
    double v = 0.0;
    switch (kind_) {
      case WeightKind::constant:
        v = 0.0;
        break;
      case WeightKind::parity:
        if (n == 0)
          v = 0.0;
        else
          v = (n % 2 == 0 ? param(params_, "gamma") : param(params_, "gamma_odd")) * std::log(x);
        break;
      case WeightKind::exp_sqrt:
        v = std::sqrt(x);
        break;
      case WeightKind::exp_n_over_log:
        v = n >= 2 ? x / std::log(x) : 0.0;
        break;
      case WeightKind::zorboska: {
        // beta_{m_1} = 9 anchors the recurrence; below it the value is held constant
        if (n <= 3) {
          v = kLog9;
          if (n == 3) {
            memo_->running = CompensatedSum<double>{};
            memo_->running.add(kLog9);
          }
          break;
        }
        const std::size_t prev = n - 1;
        unsigned k = sigma_index(prev) - 1;  // m_k <= prev < m_{k+1}
        const double mk = static_cast<double>(pow3(k));
        const double log_mk = k * kLog3;
        const double step = (prev <= 2 * pow3(k) - 1) ? 3.0 * log_mk / mk
                                                      : (kLog9 - 3.0 * log_mk) / mk;
        memo_->running.add(step);
        v = memo_->running.value();
        break;
      }
      case WeightKind::sigma:
        v = x / static_cast<double>(sigma_index(n));
        break;
      case WeightKind::n_log_alpha:
        v = n >= 2 ? std::log(x) + param(params_, "alpha") * std::log(std::log(x)) : 0.0;
        break;
      case WeightKind::moment:
        if (n >= 2) {
          const auto g = moment_gamma(param(params_, "alpha"), n,
                                      static_cast<std::size_t>(param_or(params_, "quad_nodes", 1024)));
          v = 2.0 * std::log(x) + std::log(g.value);
        }
        break;
      case WeightKind::power:
        v = param(params_, "exponent") * std::log(x + 1.0);
        break;
      case WeightKind::geometric:
        v = x * std::log(param(params_, "ratio"));
        break;
    }
    if (!std::isfinite(v)) throw std::domain_error("weight value not finite at index " + std::to_string(n));
    logs.push_back(v);
  }
}

double WeightSequence::log_beta(std::size_t n) const {
  {
    std::lock_guard lock(memo_->mu);
    if (n < memo_->logs.size()) return memo_->logs[n];
  }
  warm(n + 1);
  std::lock_guard lock(memo_->mu);
  return memo_->logs[n];
}

std::vector<double> WeightSequence::log_values(std::size_t count) const {
  warm(count);
  std::lock_guard lock(memo_->mu);
  return {memo_->logs.begin(), memo_->logs.begin() + static_cast<std::ptrdiff_t>(count)};
}

double WeightSequence::log_excess(std::size_t m, std::size_t n) const {
  if (kind_ == WeightKind::sigma) {
    const auto s1 = static_cast<std::int64_t>(sigma_index(m));
    const auto s2 = static_cast<std::int64_t>(sigma_index(n));
    const auto s3 = static_cast<std::int64_t>(sigma_index(m + n));
    const auto mm = static_cast<std::int64_t>(m), nn = static_cast<std::int64_t>(n);
    const std::int64_t num = (mm + nn) * s1 * s2 - mm * s2 * s3 - nn * s1 * s3;
    return static_cast<double>(num) / static_cast<double>(s1 * s2 * s3);
  }
  if (kind_ == WeightKind::constant) return 0.0;
  return log_beta(m + n) - log_beta(m) - log_beta(n);
}

WeightSequence weight_constant() { return {WeightKind::constant, {}, "beta_n = 1"}; }

WeightSequence weight_parity(double gamma, double gamma_odd) {
  if (!(1.0 < gamma_odd && gamma_odd < gamma && 2.0 * gamma_odd > gamma + 1.0))
    throw std::invalid_argument(
        "weight_parity: need 1 < gamma_odd < gamma and 2 gamma_odd > gamma + 1");
  return {WeightKind::parity,
          {{"gamma", gamma}, {"gamma_odd", gamma_odd}},
          "beta_n = n^gamma (n even), n^gamma_odd (n odd), beta_0 = 1"};
}

WeightSequence weight_exp_sqrt() { return {WeightKind::exp_sqrt, {}, "beta_n = exp(sqrt n)"}; }

WeightSequence weight_exp_n_over_log() {
  return {WeightKind::exp_n_over_log, {}, "beta_n = exp(n / log n), beta_0 = beta_1 = 1"};
}

WeightSequence weight_zorboska() {
  return {WeightKind::zorboska, {},
          "beta_{3^k} = 9^k, beta_{2 3^k} = 3^{5k}, geometric in between, beta_{0,1,2} = 9"};
}

WeightSequence weight_sigma() {
  return {WeightKind::sigma, {}, "beta_n = exp(n / sigma(n)), sigma(n) = k on [3^{k-1}, 3^k)"};
}

WeightSequence weight_n_log_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("weight_n_log_alpha: alpha must lie in [0, 1]");
  return {WeightKind::n_log_alpha, {{"alpha", alpha}},
          "beta_n = n (log n)^alpha, beta_0 = beta_1 = 1"};
}

WeightSequence weight_moment(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("weight_moment: alpha must lie in [0, 1]");
  return {WeightKind::moment, {{"alpha", alpha}}, "beta_n = n^2 gamma_n, beta_0 = beta_1 = 1"};
}

WeightSequence weight_power(double exponent) {
  return {WeightKind::power, {{"exponent", exponent}}, "beta_n = (n + 1)^s"};
}

WeightSequence weight_geometric(double ratio) {
  if (!(ratio > 0.0)) throw std::invalid_argument("weight_geometric: ratio must be positive");
  return {WeightKind::geometric, {{"ratio", ratio}}, "beta_n = r^n"};
}

const std::vector<std::string>& weight_ids() {
  static const std::vector<std::string> ids{"constant", "parity", "exp_sqrt",
                                            "exp_n_over_log", "zorboska", "sigma",
                                            "n_log_alpha", "moment", "power", "geometric"};
  return ids;
}

WeightSequence make_weight(std::string_view id, const ParamMap& p) {
  if (id == "constant") return weight_constant();
  if (id == "parity") return weight_parity(param_or(p, "gamma", 4.0), param_or(p, "gamma_odd", 3.0));
  if (id == "exp_sqrt") return weight_exp_sqrt();
  if (id == "exp_n_over_log") return weight_exp_n_over_log();
  if (id == "zorboska") return weight_zorboska();
  if (id == "sigma") return weight_sigma();
  if (id == "n_log_alpha") return weight_n_log_alpha(param_or(p, "alpha", 1.0));
  if (id == "moment") return weight_moment(param_or(p, "alpha", 1.0));
  if (id == "power") return weight_power(param_or(p, "exponent", 2.0));
  if (id == "geometric") return weight_geometric(param_or(p, "ratio", 2.0));
  throw std::invalid_argument("unknown weight id: " + std::string(id));
}

MomentResult moment_gamma(double alpha, std::size_t n, std::size_t quad_nodes) {
  if (n < 2) throw std::invalid_argument("moment_gamma: n must be at least 2");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("moment_gamma: alpha must lie in [0, 1]");
  const double nn = static_cast<double>(n);
  // t = exp(-x), x = exp(-y): the integrand becomes
  // exp(-n e^{-y}) omega e^{-y} with omega = y^alpha for y > 0.
  auto integrand = [&](double y) {
    const double x = std::exp(-y);
    const double omega = (alpha == 0.0) ? 1.0 : (y > 0.0 ? std::pow(y, alpha) : 0.0);
    return std::exp(-nn * x) * omega * x;
  };
  const double y_hi = std::log(nn) + 60.0;
  const std::size_t order = 16;
  const std::size_t budget = std::max<std::size_t>(2, quad_nodes / order);
  const double rel_tol = 1e-12;
  MomentResult out;
  auto main = quad::integrate_adaptive(integrand, 0.0, y_hi, 0.0, rel_tol, order, budget);
  out.value = main.value;
  out.error_estimate = main.error;
  bool ok = main.converged;
  if (alpha == 0.0) {
    // omega = 1 also for t < 1/e, i.e. y < 0; x ranges up to where e^{-n x} is negligible
    const double y_lo = -std::log(1.0 + 60.0 / nn);
    auto extra = quad::integrate_adaptive(integrand, y_lo, 0.0, 0.0, rel_tol, order, budget);
    out.value += extra.value;
    out.error_estimate += extra.error;
    ok = ok && extra.converged;
  }
  out.flagged = !ok;
  return out;
}

BSeq bn_sequence(const WeightSequence& w, std::size_t N) {
  auto logs = w.log_values(N + 1);
  for (double& v : logs) v = -v;
  BSeq out{{}, kernels::log_self_convolve(logs, N + 1), w};
  out.values.reserve(N + 1);
  for (double lv : out.log_values) out.values.push_back(std::exp(lv));
  return out;
}

std::vector<double> bnbeta_log_values(const WeightSequence& w, std::size_t N) {
  const auto b = bn_sequence(w, N);
  const auto logs = w.log_values(N + 1);
  std::vector<double> out(N + 1);
  for (std::size_t n = 0; n <= N; ++n) out[n] = logs[n] + b.log_values[n];
  return out;
}

LogReal bnbeta_sup(const WeightSequence& w, std::size_t N) {
  if (N < 1) throw std::invalid_argument("bnbeta_sup: N must be at least 1");
  const auto v = bnbeta_log_values(w, N);
  return {*std::max_element(v.begin(), v.end())};
}

LogReal bnbeta_n_ratio(const WeightSequence& w, std::size_t N) {
  if (N < 1) throw std::invalid_argument("bnbeta_n_ratio: N must be at least 1");
  const auto v = bnbeta_log_values(w, N);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= N; ++n) best = std::max(best, v[n] - std::log(static_cast<double>(n)));
  return {best};
}

LogReal bnbeta2_partial(const WeightSequence& w, std::size_t N) {
  if (N < 1) throw std::invalid_argument("bnbeta2_partial: N must be at least 1");
  const auto b = bn_sequence(w, N);
  const auto logs = w.log_values(N + 1);
  return {log_sum_exp_gen(N + 1, [&](std::size_t n) { return logs[n] + 2.0 * b.log_values[n]; })};
}

OscillationReport slow_oscillation_constants(const WeightSequence& w, std::size_t N,
                                             double ratio_cap) {
  if (N < 2) throw std::invalid_argument("slow_oscillation_constants: N must be at least 2");
  const auto logs = w.log_values(N + 1);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t n = 1; n <= N; ++n) {
    const std::size_t m_lo = (n + 1) / 2, m_hi = std::min(2 * n, N);
    for (std::size_t m = m_lo; m <= m_hi; ++m) {
      const double d = logs[m] - logs[n];
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  OscillationReport r;
  r.range_max = N;
  r.log_c_best = lo;
  r.log_C_best = hi;
  r.is_slowly_oscillating_up_to_range = (hi - lo) <= std::log(ratio_cap);
  return r;
}

LogReal essential_decrease_constant(const WeightSequence& w, std::size_t N) {
  const auto logs = w.log_values(N + 1);
  double running_min = logs[0];
  double best = 0.0;  // m = n
  for (std::size_t m = 1; m <= N; ++m) {
    running_min = std::min(running_min, logs[m]);
    best = std::max(best, logs[m] - running_min);
  }
  return {best};
}

double max_log_excess(const WeightSequence& w, std::size_t N) {
  if (w.kind() == WeightKind::sigma) {
    double best = -std::numeric_limits<double>::infinity();
    const auto nn = static_cast<std::ptrdiff_t>(N + 1);
#pragma omp parallel for schedule(dynamic, 32) reduction(max : best)
    for (std::ptrdiff_t mm = 0; mm < nn; ++mm) {
      const auto m = static_cast<std::size_t>(mm);
      for (std::size_t n = 0; m + n <= N; ++n) best = std::max(best, w.log_excess(m, n));
    }
    return best;
  }
  const auto logs = w.log_values(N + 1);
  return kernels::max_log_excess(logs, N + 1);
}

SubmultReport submult_constant(const WeightSequence& w, std::size_t N) {
  return {N, max_log_excess(w, N)};
}

double reciprocal_partial_sum(const WeightSequence& w, std::size_t N) {
  const auto logs = w.log_values(N + 1);
  CompensatedSum<double> acc;
  for (double l : logs) acc.add(std::exp(-l));
  return acc.value();
}

std::vector<double> root_sequence(const WeightSequence& w, std::size_t N) {
  const auto logs = w.log_values(N + 1);
  std::vector<double> out;
  out.reserve(N);
  for (std::size_t n = 1; n <= N; ++n) out.push_back(std::exp(logs[n] / static_cast<double>(n)));
  return out;
}

double max_log_step(const WeightSequence& w, std::size_t lo, std::size_t hi) {
  if (hi <= lo) throw std::invalid_argument("max_log_step: empty window");
  const auto logs = w.log_values(hi + 1);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t n = lo; n < hi; ++n) best = std::max(best, logs[n + 1] - logs[n]);
  return best;
}

double nlog_alpha(std::size_t n, std::size_t k) {
  auto tau = [](double x) { return x / std::log(x); };
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  return tau(nn) - tau(kk) - tau(nn - kk);
}

double nlog_tail_sum(std::size_t n) {
  if (n < 4) throw std::invalid_argument("nlog_tail_sum: n must be at least 4");
  CompensatedSum<double> acc;
  for (std::size_t k = 2; k <= n / 2; ++k) acc.add(std::exp(nlog_alpha(n, k)));
  return acc.value();
}

double nlog_small_k_sum(std::size_t n) {
  if (n < 4) throw std::invalid_argument("nlog_small_k_sum: n must be at least 4");
  const auto root = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  CompensatedSum<double> acc;
  for (std::size_t k = 2; k <= std::min(root, n / 2); ++k) acc.add(std::exp(nlog_alpha(n, k)));
  return acc.value();
}

double nlog_large_k_bound(double n) {
  const double ln = std::log(n), l2 = std::log(2.0);
  return 0.5 * n * std::exp(-std::sqrt(n) * l2 / (ln * (ln - l2)));
}

double nlog_small_k_majorant(double tol) {
  CompensatedSum<double> acc;
  for (std::size_t k = 2;; ++k) {
    const double kk = static_cast<double>(k);
    const double t = std::exp(-kk / (2.0 * std::log(kk)));
    acc.add(t);
    if (t < tol && k > 100) break;
  }
  return acc.value();
}

}  // namespace whs
