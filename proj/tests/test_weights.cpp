#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "whs/weights.hpp"

using namespace whs;
using doctest::Approx;

TEST_CASE("constant weight") {
  const auto w = weight_constant();
  CHECK(w.beta(0) == 1.0);
  CHECK(w.beta(17) == 1.0);
  for (double v : w.log_values(100)) CHECK(v == 0.0);
}

TEST_CASE("moment sequence preconditions") {
  CHECK_THROWS(moment_gamma(0, 1));
  CHECK_THROWS(moment_gamma(1.5, 10));
}

TEST_CASE("parity weight") {
  const auto w = weight_parity(4, 3);
  CHECK(w.beta(0) == Approx(1.0));
  CHECK(w.beta(2) == Approx(16.0));
  CHECK(w.beta(3) == Approx(27.0));
  CHECK_THROWS_AS(weight_parity(3, 4), std::invalid_argument);  // needs gamma' < gamma
  CHECK_THROWS_AS(weight_parity(4, 2), std::invalid_argument);  // needs 2 gamma' > gamma + 1
  CHECK_THROWS_AS(weight_parity(4, 1), std::invalid_argument);
}

TEST_CASE("exp sqrt and exp n/log n weights") {
  const auto e = weight_exp_sqrt();
  CHECK(e.beta(0) == 1.0);
  CHECK(e.log_beta(4) == Approx(2.0));
  CHECK(e.log_beta(100) == Approx(10.0));
  const auto l = weight_exp_n_over_log();
  CHECK(l.beta(0) == 1.0);
  CHECK(l.beta(1) == 1.0);
  CHECK(l.log_beta(8) == Approx(8.0 / std::log(8.0)));
}

TEST_CASE("zorboska weight anchors") {
  const auto w = weight_zorboska();
  CHECK(w.beta(3) == Approx(9.0));
  CHECK(w.beta(6) == Approx(243.0));
  CHECK(w.beta(9) == Approx(81.0));
  for (unsigned k = 1; k <= 10; ++k) {
    CHECK(std::abs(w.log_beta(pow3(k)) - k * std::log(9.0)) <= 1e-9);
    CHECK(std::abs(w.log_beta(2 * pow3(k)) - 5.0 * k * std::log(3.0)) <= 1e-9);
  }
  // steps inside [3^6, 3^7] stay near 1
  const double step = std::exp(max_log_step(w, pow3(6), pow3(7)));
  CHECK(step == Approx(std::exp(3.0 * std::log(729.0) / 729.0)).epsilon(1e-9));
  CHECK(step <= 1.03);
  for (double v : w.log_values(200)) CHECK(std::isfinite(v));
}

TEST_CASE("sigma weight") {
  const auto w = weight_sigma();
  CHECK(sigma_index(0) == 1);
  CHECK(sigma_index(1) == 1);
  CHECK(sigma_index(3) == 2);
  CHECK(sigma_index(8) == 2);
  CHECK(sigma_index(9) == 3);
  CHECK(w.beta(0) == 1.0);
  CHECK(w.log_beta(1) == Approx(1.0));
  CHECK(w.log_beta(4) == Approx(2.0));
  CHECK(max_log_excess(w, pow3(7)) <= 0.0);
  // log_excess is exactly zero inside a level
  CHECK(w.log_excess(3, 4) == 0.0);
  CHECK(w.log_excess(1, 1) == 0.0);
  CHECK(w.log_excess(2, 2) == Approx(-2.0));
}

TEST_CASE("n log^alpha and moment weights") {
  const auto d = weight_n_log_alpha(0.0);
  CHECK(d.beta(5) == Approx(5.0));
  CHECK(d.beta(1) == Approx(1.0));
  const auto n1 = weight_n_log_alpha(1.0);
  CHECK(n1.beta(3) == Approx(3.0 * std::log(3.0)));
  const auto m = weight_moment(0.0);
  CHECK(m.beta(0) == 1.0);
  CHECK(m.beta(1) == 1.0);
  CHECK(m.beta(10) == Approx(10.0).epsilon(1e-9));  // n^2 / n
}

TEST_CASE("make_weight by id") {
  for (const auto& id : weight_ids()) CHECK_NOTHROW(make_weight(id));
  CHECK(make_weight("parity", {{"gamma", 4}, {"gamma_odd", 3}}).beta(2) == Approx(16.0));
  CHECK_THROWS_AS(make_weight("nope"), std::invalid_argument);
}

TEST_CASE("memoized values are stable and shared across copies") {
  const auto w = weight_zorboska();
  const double a = w.log_beta(500);
  const auto copy = w;
  w.warm(2000);
  CHECK(copy.log_beta(500) == a);
  CHECK(w.log_beta(500) == a);
}

TEST_CASE("moment sequence") {
  CHECK(moment_gamma(0, 10).value == Approx(0.1).epsilon(1e-12));
  CHECK(moment_gamma(0, 2).value == Approx(0.5).epsilon(1e-12));
  for (std::size_t n : {2u, 7u, 100u, 1000u}) CHECK(moment_gamma(0, n).value * double(n) == Approx(1.0).epsilon(1e-10));
  const auto g = moment_gamma(1, 10000);
  CHECK_FALSE(g.flagged);
  const double r = 1e4 * g.value / std::log(1e4);
  CHECK(r >= 0.5);
  CHECK(r <= 2.0);
}

TEST_CASE("B_n against a brute-force double loop") {
  const std::vector<WeightSequence> ws{weight_constant(), weight_power(2), weight_sigma(), weight_zorboska(),
                                       weight_parity(4, 3), weight_geometric(2.0)};
  for (const auto& w : ws) {
    const auto b = bn_sequence(w, 64);
    for (std::size_t n = 0; n <= 64; ++n) {
      double s = 0.0;
      for (std::size_t k = 0; k <= n; ++k) s += 1.0 / (w.beta(k) * w.beta(n - k));
      CHECK(b.values[n] == Approx(s).epsilon(1e-12));
      CHECK(b.values[n] >= 1.0 / (w.beta(0) * w.beta(n)) * (1 - 1e-15));
      // reversed summation order
      double r = 0.0;
      for (std::size_t k = n + 1; k-- > 0;) r += 1.0 / (w.beta(k) * w.beta(n - k));
      CHECK(b.values[n] == Approx(r).epsilon(1e-12));
    }
  }
  CHECK(bn_sequence(weight_constant(), 5).values[5] == Approx(6.0));
  CHECK(bn_sequence(weight_geometric(2.0), 3).values[3] == Approx(0.5));
}

TEST_CASE("beta_n B_n criteria") {
  const auto one = weight_constant();
  const auto v = bnbeta_log_values(one, 50);
  for (std::size_t n = 0; n <= 50; ++n) CHECK(std::exp(v[n]) == Approx(double(n + 1)));
  CHECK(bnbeta_sup(one, 10).linear() == Approx(11.0));
  CHECK(bnbeta_n_ratio(one, 10).linear() == Approx(2.0));
  const auto sq = weight_power(2);
  const double s1 = bnbeta_sup(sq, 2000).linear(), s2 = bnbeta_sup(sq, 4000).linear();
  CHECK(s2 >= s1);
  CHECK((s2 - s1) / s1 <= 1e-6);
  const auto par = weight_parity(4, 3);
  const double p1 = bnbeta2_partial(par, 2048).linear(), p2 = bnbeta2_partial(par, 4096).linear();
  CHECK((p2 - p1) / p2 <= 0.01);
}

TEST_CASE("regularity diagnostics") {
  const auto c = slow_oscillation_constants(weight_constant(), 1000);
  CHECK(c.c_best() == 1.0);
  CHECK(c.C_best() == 1.0);
  CHECK(c.is_slowly_oscillating_up_to_range);
  const auto e = slow_oscillation_constants(weight_exp_sqrt(), 4096);
  CHECK_FALSE(e.is_slowly_oscillating_up_to_range);
  CHECK(e.log_C_best - e.log_c_best > std::log(1e3));
  const auto p = slow_oscillation_constants(weight_power(2), 4096);
  CHECK(p.is_slowly_oscillating_up_to_range);
  CHECK(p.c_best() > 0.0);
  CHECK(p.c_best() <= p.C_best());
  const auto roots = root_sequence(weight_sigma(), pow3(7));
  CHECK(roots.front() == Approx(std::exp(1.0)));
  CHECK(roots[pow3(7) - 2] == Approx(std::exp(1.0 / 7.0)));  // n = 3^7 - 1
  CHECK(roots.back() == Approx(std::exp(1.0 / 8.0)));         // n = 3^7 starts level 8
  for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i] <= roots[i - 1] * (1 + 1e-15));
  CHECK(essential_decrease_constant(weight_constant(), 100).linear() == 1.0);
  CHECK(essential_decrease_constant(weight_power(2), 100).linear() == Approx(101.0 * 101.0));
  const auto sub = submult_constant(weight_constant(), 100);
  CHECK(sub.C_sub() == 1.0);
  CHECK(submult_constant(weight_sigma(), 729).log_C_sub == 0.0);
  CHECK(reciprocal_partial_sum(weight_constant(), 9) == Approx(10.0));
}

TEST_CASE("n / log n tail sums") {
  CHECK(nlog_tail_sum(4) == Approx(std::exp(4.0 / std::log(4.0) - 4.0 / std::log(2.0))));
  const double six = std::exp(nlog_alpha(6, 2)) + std::exp(nlog_alpha(6, 3));
  CHECK(nlog_tail_sum(6) == Approx(six));
  const double S = nlog_small_k_majorant();
  double sup = 0.0;
  for (std::size_t n = 100; n <= 3000; ++n) {
    sup = std::max(sup, nlog_tail_sum(n));
    CHECK(nlog_small_k_sum(n) <= S);
  }
  CHECK(sup < 3.0);
  CHECK(nlog_large_k_bound(1e12) < nlog_large_k_bound(1e10));
}
