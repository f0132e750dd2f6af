#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "whs/io.hpp"
#include "whs/opmat.hpp"

using namespace whs;
using doctest::Approx;

namespace {
DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> d;
  DenseMatrix A(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) A(i, j) = {d(rng), d(rng)};
  return A;
}
}  // namespace

TEST_CASE("operator norm examples") {
  CHECK(l2_opnorm(DenseMatrix::ones(7, 7)).value == Approx(7.0).epsilon(1e-12));
  CHECK(l2_opnorm(DenseMatrix::identity(5)).value == Approx(1.0).epsilon(1e-12));
  DenseMatrix d(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 1;
  const auto e = l2_opnorm(d);
  CHECK(e.value == Approx(3.0).epsilon(1e-12));
  CHECK(e.converged);
  CHECK(e.lower <= e.value * (1 + 1e-12));
  CHECK(e.witness.size() == 2);
  CHECK(l2_opnorm(DenseMatrix(3, 4)).value == 0.0);
}

TEST_CASE("power iteration against a 2x2 closed form and iteration doubling") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto A = random_matrix(rng, 2, 2);
    // largest singular value from the trace and determinant of A^*A
    const cplx a = A(0, 0), b = A(0, 1), c = A(1, 0), dd = A(1, 1);
    const double tr = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(dd);
    const double det = std::norm(a * dd - b * c);
    const double s1 = std::sqrt(0.5 * (tr + std::sqrt(tr * tr - 4 * det)));
    CHECK(l2_opnorm(A).value == Approx(s1).epsilon(1e-9));
  }
  for (int t = 0; t < 5; ++t) {
    const auto A = random_matrix(rng, 30, 20);
    const auto one = l2_opnorm(A, 1e-12, 400), two = l2_opnorm(A, 1e-12, 800);
    CHECK(std::abs(two.value - one.value) <= 1e-8 * two.value);
  }
}

TEST_CASE("column lower bound never exceeds the operator norm") {
  std::mt19937_64 rng(20240601);
  for (int t = 0; t < 20; ++t) {
    const auto A = random_matrix(rng, 12 + t, 9 + t);
    const auto e = l2_opnorm(A);
    CHECK(lp_column_lower(A, 2.0) <= e.value * (1 + e.residual) + 1e-12);
    CHECK(lq_row_lower(A, 2.0) <= e.value * (1 + e.residual) + 1e-12);
  }
  CHECK(lp_column_lower(DenseMatrix::identity(4), 2.0) == 1.0);
  CHECK(lp_column_lower(DenseMatrix::ones(6, 6), 1.0) == 6.0);
  CHECK(lq_row_lower(DenseMatrix::ones(3, 5), INFINITY) == 1.0);
}

TEST_CASE("psi matrix") {
  const CoefVector u({1, 2, 3, 4, 5});
  const auto H = psi_matrix(u, weight_constant(), 4);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = 0; l < 4; ++l) CHECK(H(k, l) == u[k + l]);
  const auto w = weight_zorboska();
  const auto P = psi_matrix(u, w, 6);
  for (std::size_t k = 0; k < 6; ++k)
    for (std::size_t l = 0; l < 6; ++l) CHECK(P(k, l) == P(l, k));
  const auto e0 = psi_matrix(CoefVector({1}), w, 3);
  CHECK(e0(0, 0).real() == Approx(1.0 / std::sqrt(w.beta(0))));
  CHECK(e0(0, 1) == cplx(0));
  CHECK(e0(2, 2) == cplx(0));
}

TEST_CASE("Hilbert-Schmidt identity") {
  const auto h = psi_hs_norm(CoefVector({0, 0, 0, 0, 0, 1}), weight_constant(), 6);
  CHECK(h.direct == Approx(std::sqrt(6.0)));
  CHECK(h.via_identity == Approx(std::sqrt(6.0)));
  const auto z = psi_hs_norm(CoefVector({0, 0}), weight_sigma(), 3);
  CHECK(z.direct == 0.0);
  CHECK(z.via_identity == 0.0);
  CHECK_FALSE(psi_hs_norm(CoefVector({0, 0, 0, 1}), weight_constant(), 3).covered);

  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> sup(0, 64);
  std::uniform_real_distribution<double> d(-1, 1);
  for (const auto& w : {weight_constant(), weight_power(2), weight_sigma()}) {
    for (int t = 0; t < 50; ++t) {
      std::vector<cplx> v(sup(rng) + 1);
      for (auto& x : v) x = {d(rng), d(rng)};
      const auto r = psi_hs_norm(CoefVector(v), w, v.size());
      CHECK(r.covered);
      CHECK(std::abs(r.direct - r.via_identity) <= 1e-10 * r.via_identity);
    }
  }
}

TEST_CASE("Hankel indicator test on the sigma weight") {
  const auto s = weight_sigma();
  double prev = 0.0;
  for (unsigned k = 2; k <= 4; ++k) {
    const auto h = hankel_indicator_test(k, s);
    CHECK(h.block_all_ones);
    CHECK(std::abs(h.block_norm - double(h.block_size)) <= 1e-8);
    CHECK(h.ratio >= std::sqrt(double(pow3(k)) / 12.0));
    CHECK(h.ratio > prev);
    prev = h.ratio;
  }
  CHECK(hankel_indicator_test(2, s).block_size == 2);
  CHECK(hankel_indicator_test(2, s).ratio * indicator_vector(6, 9).norm2() >= 2.0);
  CHECK_THROWS(hankel_indicator_test(1, s));
}

TEST_CASE("bilinear lower bound on monomials") {
  CHECK(multiplication_bilinear_lower(weight_constant(), 50) == Approx(1.0));
  CHECK(multiplication_bilinear_lower(weight_sigma(), 243) == Approx(1.0));
  CHECK(multiplication_bilinear_lower(weight_zorboska(), pow3(8)) >= 81.0 * (1 - 1e-9));
}

TEST_CASE("coefficient vectors and csv output") {
  const auto v = indicator_vector(2, 5);
  CHECK(v.norm2() == Approx(std::sqrt(3.0)));
  CHECK(v.support_max() == 4);
  CHECK_THROWS(DenseMatrix(kMaxDenseDim + 1, 2));
  const auto t = io::matrix_csv(DenseMatrix::identity(2));
  CHECK(io::to_csv(t) == "row,col,re,im\n0,0,1,0\n0,1,0,0\n1,0,0,0\n1,1,1,0\n");
  io::Table q{{"a"}, {}};
  q.add_row({"x,y"});
  CHECK(io::to_csv(q) == "a\n\"x,y\"\n");
  CHECK_THROWS(q.add_row({"1", "2"}));
}
