// One line per acceptance criterion; thresholds are fixed here on purpose,
// independent of the experiment configs.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "whs/autom.hpp"
#include "whs/kernels.hpp"
#include "whs/opmat.hpp"
#include "whs/series.hpp"
#include "whs/weights.hpp"

using namespace whs;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

std::string num(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

Outcome zorboska_ratio() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto w = weight_zorboska();
  double worst = 0.0;
  for (unsigned k = 1; k <= 8; ++k) {
    const auto e = monomial(pow3(k), pow3(k));
    const double expect = std::pow(3.0, k / 2.0);
    worst = std::max(worst, std::abs(algebra_ratio(e, e, w) - expect) / expect);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-9 && secs < 1.0, "max rel err " + num(worst) + ", " + num(secs) + " s"};
}

Outcome anchors_and_subadditivity() {
  const auto z = weight_zorboska();
  double err = 0.0;
  for (unsigned k = 1; k <= 10; ++k) {
    err = std::max(err, std::abs(z.log_beta(pow3(k)) - k * std::log(9.0)));
    err = std::max(err, std::abs(z.log_beta(2 * pow3(k)) - 5.0 * k * std::log(3.0)));
  }
  const double excess = max_log_excess(weight_sigma(), pow3(7));
  return {err <= 1e-9 && excess <= 0.0, "anchor err " + num(err) + ", sigma max excess " + num(excess)};
}

Outcome fk_growth() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto w = weight_sigma();
  std::vector<double> ks, rho;
  bool inc = true, cn = true;
  for (unsigned k = 3; k <= 7; ++k) {
    const auto f = level_block_series(k);
    const auto f2 = cauchy_product(f, f);
    const double r = std::exp(log_norm_hp_beta(f2, 2, w) - 2 * log_norm_hp_beta(f, 2, w));
    if (!rho.empty() && !(r > rho.back())) inc = false;
    ks.push_back(k);
    rho.push_back(r);
    if (k <= 5) {
      const std::size_t m = pow3(k);
      for (auto n = static_cast<std::size_t>(std::ceil(5.0 * m / 6.0)); n < m; ++n)
        if (f2[n].real() < double(m - n)) cn = false;
    }
  }
  const double slope = fitted_exponent(ks, rho);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {inc && cn && slope >= 0.35 && secs < 60.0,
          "slope " + num(slope) + (inc ? ", increasing" : ", NOT increasing") + (cn ? ", c_n ok" : ", c_n FAIL") +
              ", " + num(secs) + " s"};
}

Outcome hs_identity() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> sup(0, 64);
  std::uniform_real_distribution<double> d(-1, 1);
  double worst = 0.0;
  int count = 0;
  for (const auto& w : {weight_constant(), weight_power(2), weight_sigma()}) {
    for (int t = 0; t < 50; ++t, ++count) {
      std::vector<cplx> v(sup(rng) + 1);
      for (auto& x : v) x = {d(rng), d(rng)};
      const auto h = psi_hs_norm(CoefVector(v), w, v.size());
      worst = std::max(worst, std::abs(h.direct - h.via_identity) / h.via_identity);
    }
  }
  return {worst <= 1e-10, std::to_string(count) + " vectors, max rel diff " + num(worst)};
}

Outcome hankel_block() {
  const auto s = weight_sigma();
  bool ok = true;
  double prev = 0.0;
  std::string d;
  for (unsigned k = 2; k <= 4; ++k) {
    const auto h = hankel_indicator_test(k, s);
    const double floor = std::sqrt(double(pow3(k)) / 12.0);
    ok = ok && h.block_all_ones && std::abs(h.block_norm - double(h.block_size)) <= 1e-8 && h.ratio >= floor &&
         h.ratio > prev;
    prev = h.ratio;
    d += "k=" + std::to_string(k) + " ratio " + num(h.ratio) + " (floor " + num(floor) + ") ";
  }
  return {ok, d};
}

Outcome nlogn() {
  double sup = 0.0, half = 0.0;
  for (std::size_t n = 4; n <= 3000; ++n) {
    sup = std::max(sup, nlog_tail_sum(n));
    if (n == 1500) half = sup;
  }
  return {sup - half <= 1e-3, "sup " + num(sup) + ", growth " + num(sup - half)};
}

Outcome parity() {
  const auto w = weight_parity(4, 3);
  const std::size_t N = 4096;
  const auto b = bn_sequence(w, N);
  double total = 0.0, tail = 0.0;
  for (std::size_t n = 0; n <= N; ++n) {
    const double t = w.beta(n) * b.values[n] * b.values[n];
    total += t;
    if (4 * n > 3 * N) tail += t;
  }
  const double step = std::exp(max_log_step(w, 0, N));
  return {step >= 100 && tail / total <= 0.01, "max step " + num(step) + ", last quarter " + num(tail / total)};
}

Outcome parseval() {
  const auto tab = ta_power_table(0.6, 64, default_mmax(0.6, 64));
  double lo = 2, hi = 0;
  for (std::size_t n : {1u, 4u, 16u, 64u}) {
    double s = 0;
    for (auto c : tab.row(n)) s += std::norm(c);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {lo >= 1 - 1e-8 && hi <= 1 + 1e-10, "mass in [" + num(1 - lo) + " below 1, " + num(hi - 1) + " above 1]"};
}

Outcome h1_growth() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::size_t> ns{32, 64, 128, 256, 512};
  const auto one = column_sums(0.6, weight_constant(), 1.0, 0, ns);
  const auto two = column_sums(0.6, weight_constant(), 2.0, 0, ns);
  const double mx = *std::max_element(two.C_values.begin(), two.C_values.end());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double e = one.fitted_exponent;
  return {e >= 0.4 && e <= 0.6 && mx <= 1 + 1e-10 && secs < 60.0,
          "exponent " + num(e) + ", max p=2 sum " + num(mx) + ", " + num(secs) + " s"};
}

Outcome osc_lower() {
  std::vector<double> sc;
  for (std::size_t n : {16u, 32u, 64u, 128u, 256u})
    sc.push_back(std::sqrt(double(n)) * osc_integral(n, n, 1.0).value);
  const double mn = *std::min_element(sc.begin(), sc.end());
  const double lo = kIntervalLo, hi = kIntervalHi;
  const double exact = (hi - hi * hi * hi / 3) - (lo - lo * lo * lo / 3);
  const double err = std::abs(osc_integral(1, 1, 1.0).value - exact);
  return {mn >= 0.5 * sc.front() && err <= 1e-10,
          "min/first " + num(mn / sc.front()) + ", n=1 err " + num(err)};
}

Outcome property_suites() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<std::size_t> deg(0, 32), small(1, 8);
  auto poly = [&](std::size_t d) {
    std::vector<cplx> c(d + 1);
    for (auto& x : c) x = {u(rng), u(rng)};
    return TruncatedSeries(c, true);
  };
  auto point = [&](double r) {
    cplx z;
    do z = {u(rng), u(rng)};
    while (std::abs(z) > 1);
    return r * z;
  };
  int bad = 0;
  for (int t = 0; t < 20; ++t) {
    const auto f = poly(deg(rng)), g = poly(deg(rng));
    const auto fg = cauchy_product(f, g);
    const auto F = poly(small(rng)), P = poly(small(rng));
    const auto c = compose_truncated(F, P, 64);
    for (int i = 0; i < 10; ++i) {
      const cplx z = point(1.0);
      const cplx ref = eval(f, z) * eval(g, z);
      if (std::abs(eval(fg, z) - ref) > 1e-10 * (1 + std::abs(ref))) ++bad;
      const cplx y = point(0.5);
      const cplx cref = eval(F, eval(P, y));
      if (std::abs(eval(c, y) - cref) > 1e-10 * (1 + std::abs(cref))) ++bad;
    }
  }
  std::string d = "eval/compose failures " + std::to_string(bad);

  int bn_bad = 0;
  for (const auto& w : {weight_constant(), weight_power(2), weight_sigma(), weight_parity(4, 3)}) {
    const auto b = bn_sequence(w, 64);
    for (std::size_t n = 0; n <= 64; ++n) {
      double s = 0;
      for (std::size_t k = 0; k <= n; ++k) s += 1.0 / (w.beta(k) * w.beta(n - k));
      if (std::abs(b.values[n] - s) > 1e-12 * s) ++bn_bad;
    }
  }
  d += ", B_n mismatches " + std::to_string(bn_bad);

  std::uniform_real_distribution<double> slope(5, 60);
  int vdc_ok = 0;
  for (int t = 0; t < 20; ++t) {
    const std::vector<double> ph{0.0, slope(rng), u(rng), u(rng)};
    double dmin = INFINITY, mmax = 0;
    for (int i = 0; i <= 2048; ++i) {
      const double x = i / 2048.0;
      dmin = std::min(dmin, std::abs(ph[1] + 2 * ph[2] * x + 3 * ph[3] * x * x));
      mmax = std::max(mmax, std::abs(2 * ph[2] + 6 * ph[3] * x));
    }
    vdc_ok += vdc_bound_check(ph, 0.0, 1.0, dmin, mmax).ok;
  }
  d += ", vdc " + std::to_string(vdc_ok) + "/20";

  int col_ok = 0;
  std::normal_distribution<double> nd;
  for (int t = 0; t < 20; ++t) {
    DenseMatrix A(10 + t, 8 + t);
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = {nd(rng), nd(rng)};
    const auto e = l2_opnorm(A);
    col_ok += lp_column_lower(A, 2.0) <= e.value * (1 + e.residual) + 1e-12;
  }
  d += ", column bound " + std::to_string(col_ok) + "/20";
  return {bad == 0 && bn_bad == 0 && vdc_ok == 20 && col_ok == 20, d};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"zorboska ratio 3^(k/2), k=1..8", zorboska_ratio},
      {"zorboska anchors and sigma subadditivity", anchors_and_subadditivity},
      {"f_k ratio growth and c_n count", fk_growth},
      {"Hilbert-Schmidt identity", hs_identity},
      {"Hankel all-ones block", hankel_block},
      {"n/log n tail sums bounded", nlogn},
      {"parity weight convergence with unbounded step", parity},
      {"inner function Parseval mass", parseval},
      {"h^1 column-sum growth", h1_growth},
      {"oscillatory lower bound", osc_lower},
      {"property suites", property_suites},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::printf("%s %2zu  %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
