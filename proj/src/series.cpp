#include "whs/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "whs/kernels.hpp"

namespace whs {

TruncatedSeries::TruncatedSeries(std::vector<cplx> coeffs, bool exact_poly)
    : coeffs_(std::move(coeffs)), exact_poly_(exact_poly) {
  if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries: need at least one coefficient");
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::domain_error("TruncatedSeries: non-finite coefficient");
}

std::size_t TruncatedSeries::degree() const {
  for (std::size_t n = coeffs_.size(); n-- > 0;)
    if (coeffs_[n] != cplx{}) return n;
  return 0;
}

TruncatedSeries TruncatedSeries::truncated(std::size_t N) const {
  if (N >= bound()) {
    auto c = coeffs_;
    c.resize(N + 1);
    return {std::move(c), exact_poly_};
  }
  const bool still_exact = exact_poly_ && degree() <= N;
  return {{coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(N + 1)}, still_exact};
}

TruncatedSeries constant_series(cplx c) { return {{c}, true}; }

TruncatedSeries monomial(std::size_t m, std::size_t N) {
  if (m > N) throw std::invalid_argument("monomial: degree exceeds bound");
  std::vector<cplx> c(N + 1);
  c[m] = 1.0;
  return {std::move(c), true};
}

TruncatedSeries indicator_block(std::size_t lo, std::size_t hi_exclusive) {
  if (lo >= hi_exclusive) throw std::invalid_argument("indicator_block: empty range");
  std::vector<cplx> c(hi_exclusive);
  std::fill(c.begin() + static_cast<std::ptrdiff_t>(lo), c.end(), cplx{1.0});
  return {std::move(c), true};
}

IndexRange integer_range(double x, double y) {
  const double lo = std::max(0.0, std::ceil(x));
  const double hi = std::max(lo, std::ceil(y));
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

IndexRange level_block(unsigned k) {
  const auto m = static_cast<double>(pow3(k));
  return integer_range(m / 3.0, m / 2.0);
}

IndexRange doubled_level_block(unsigned k) {
  const auto m = static_cast<double>(pow3(k));
  return integer_range(2.0 * m / 3.0, m);
}

TruncatedSeries level_block_series(unsigned k) {
  const auto r = level_block(k);
  return indicator_block(r.lo, r.hi);
}

TruncatedSeries cauchy_product(const TruncatedSeries& f, const TruncatedSeries& g) {
  std::size_t bound;
  bool exact = false;
  if (f.exact_poly() && g.exact_poly()) {
    bound = f.bound() + g.bound();
    exact = true;
  } else if (f.exact_poly()) {
    bound = g.bound();
  } else if (g.exact_poly()) {
    bound = f.bound();
  } else {
    bound = std::min(f.bound(), g.bound());
  }
  return {kernels::convolve(f.coeffs(), g.coeffs(), bound + 1), exact};
}

TruncatedSeries power(const TruncatedSeries& f, std::size_t n) {
  TruncatedSeries out = constant_series(1.0);
  for (std::size_t i = 0; i < n; ++i) out = cauchy_product(out, f);
  return out;
}

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
  std::size_t bound;
  if (f.exact_poly() && g.exact_poly())
    bound = std::max(f.bound(), g.bound());
  else if (f.exact_poly())
    bound = g.bound();
  else if (g.exact_poly())
    bound = f.bound();
  else
    bound = std::min(f.bound(), g.bound());
  std::vector<cplx> c(bound + 1);
  for (std::size_t n = 0; n <= bound; ++n) c[n] = f[n] + g[n];
  return {std::move(c), f.exact_poly() && g.exact_poly()};
}

double log_norm_hp_beta(const TruncatedSeries& f, double p, const WeightSequence& w) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm_hp_beta: p must be at least 1");
  const auto& c = f.coeffs();
  const auto logs = w.log_values(c.size());
  const double ninf = -std::numeric_limits<double>::infinity();
  auto term = [&](std::size_t n) {
    const double a = std::abs(c[n]);
    if (a == 0.0) return ninf;
    return std::isinf(p) ? std::log(a) + logs[n] : p * std::log(a) + logs[n];
  };
  if (std::isinf(p)) {
    double best = ninf;
    for (std::size_t n = 0; n < c.size(); ++n) best = std::max(best, term(n));
    return best;
  }
  return log_sum_exp_gen(c.size(), term) / p;
}

double norm_hp_beta(const TruncatedSeries& f, double p, const WeightSequence& w) {
  return std::exp(log_norm_hp_beta(f, p, w));
}

double log_algebra_ratio(const TruncatedSeries& f, const TruncatedSeries& g,
                         const WeightSequence& w) {
  if (!f.exact_poly() || !g.exact_poly())
    throw std::invalid_argument("algebra_ratio: operands must be exact polynomials");
  const double lf = log_norm_hp_beta(f, 2.0, w);
  const double lg = log_norm_hp_beta(g, 2.0, w);
  if (std::isinf(lf) || std::isinf(lg)) throw std::invalid_argument("algebra_ratio: zero operand");
  return log_norm_hp_beta(cauchy_product(f, g), 2.0, w) - lf - lg;
}

double algebra_ratio(const TruncatedSeries& f, const TruncatedSeries& g, const WeightSequence& w) {
  return std::exp(log_algebra_ratio(f, g, w));
}

TruncatedSeries compose_truncated(const TruncatedSeries& f, const TruncatedSeries& phi,
                                  std::size_t N) {
  if (!f.exact_poly())
    throw std::invalid_argument("compose_truncated: f must be an exact polynomial");
  if (!phi.exact_poly() && phi.bound() < N)
    throw std::invalid_argument("compose_truncated: phi is not known up to the requested degree");
  const std::size_t df = f.degree(), dphi = phi.degree();
  const bool exact = phi.exact_poly() && df * dphi <= N;
  const std::size_t out_bound = exact ? df * dphi : N;
  // phi restricted to what can influence degrees <= out_bound
  const auto phi_t = TruncatedSeries(phi.truncated(out_bound).coeffs(), true);
  std::vector<cplx> acc{f[df]};
  for (std::size_t j = df; j-- > 0;) {
    auto prod = kernels::convolve(acc, phi_t.coeffs(), std::min(acc.size() + phi_t.bound(), out_bound + 1));
    prod[0] += f[j];
    acc = std::move(prod);
  }
  acc.resize(N + 1);  // zero padding past df * dphi when exact
  return {std::move(acc), exact};
}

cplx eval(const TruncatedSeries& f, cplx z) {
  const auto& c = f.coeffs();
  cplx s{};
  for (std::size_t n = c.size(); n-- > 0;) s = s * z + c[n];
  return s;
}

void to_json(nlohmann::json& j, const TruncatedSeries& f) {
  j = nlohmann::json::array();
  for (const auto& c : f.coeffs()) j.push_back({c.real(), c.imag()});
}

TruncatedSeries series_from_json(const nlohmann::json& j) {
  const nlohmann::json* arr = &j;
  bool exact = true;
  if (j.is_object()) {
    arr = &j.at("coeffs");
    exact = j.value("exact_poly", true);
  }
  if (!arr->is_array() || arr->empty())
    throw std::invalid_argument("series_from_json: expected a non-empty array of [re, im] pairs");
  std::vector<cplx> c;
  c.reserve(arr->size());
  for (const auto& e : *arr) {
    if (e.is_number())
      c.emplace_back(e.get<double>(), 0.0);
    else if (e.is_array() && e.size() == 2)
      c.emplace_back(e[0].get<double>(), e[1].get<double>());
    else
      throw std::invalid_argument("series_from_json: malformed coefficient");
  }
  return {std::move(c), exact};
}

}  // namespace whs
