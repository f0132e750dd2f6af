#include "whs/opmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "whs/kernels.hpp"
#include "whs/series.hpp"

namespace whs {

namespace {

double vec_norm2(std::span<const cplx> x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows > kMaxDenseDim || cols > kMaxDenseDim)
    throw std::length_error("dense matrix exceeds the configured size cap");
}

/// log(beta_{k+l} / (beta_k beta_l)) for all k, l < K, as a callable.
struct ExcessTable {
  const WeightSequence& w;
  std::vector<double> logs;
  bool exact;

  ExcessTable(const WeightSequence& w_, std::size_t K)
      : w(w_), logs(w_.log_values(2 * K + 1)), exact(w_.kind() == WeightKind::sigma) {}

  double operator()(std::size_t k, std::size_t l) const {
    return exact ? w.log_excess(k, l) : logs[k + l] - logs[k] - logs[l];
  }
};

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_((check_dims(rows, cols), rows * cols)) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_dims(rows, cols);
  if (entries_.size() != rows * cols) throw std::invalid_argument("DenseMatrix: entry count mismatch");
  for (const auto& e : entries_)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
      throw std::domain_error("DenseMatrix: non-finite entry");
}

DenseMatrix DenseMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                               std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_)
    throw std::out_of_range("DenseMatrix::block: out of range");
  DenseMatrix b(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
  return b;
}

double DenseMatrix::frobenius_norm() const {
  CompensatedSum<double> acc;
  for (const auto& e : entries_) acc.add(std::norm(e));
  return std::sqrt(acc.value());
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::ones(std::size_t rows, std::size_t cols) {
  return {rows, cols, std::vector<cplx>(rows * cols, cplx{1.0})};
}

NormEstimate l2_opnorm(const DenseMatrix& A, double tol, std::size_t maxit, std::uint64_t seed) {
  if (!(tol > 0.0)) throw std::invalid_argument("l2_opnorm: tol must be positive");
  const std::size_t r = A.rows(), c = A.cols();
  if (r == 0 || c == 0) return {};

  auto run = [&](std::vector<cplx> x) {
    NormEstimate est;
    std::vector<cplx> y(r), z(c);
    double nx = vec_norm2(x);
    for (auto& v : x) v /= nx;
    double prev = -1.0;
    for (std::size_t it = 1; it <= maxit; ++it) {
      kernels::matvec(A.entries(), r, c, x, y);
      const double sigma = vec_norm2(y);
      est.iterations = it;
      if (sigma > est.lower || est.witness.empty()) {
        est.lower = sigma;
        est.witness = x;
      }
      if (sigma == 0.0) {
        est.converged = true;
        break;
      }
      kernels::matvec_adjoint(A.entries(), r, c, y, z);
      const double lambda = sigma * sigma;
      double res = 0.0;
      for (std::size_t j = 0; j < c; ++j) res += std::norm(z[j] - lambda * x[j]);
      est.residual = std::sqrt(res) / sigma;
      if (prev >= 0.0 && std::abs(sigma - prev) <= tol * sigma) {
        est.converged = true;
        break;
      }
      prev = sigma;
      const double nz = vec_norm2(z);
      for (std::size_t j = 0; j < c; ++j) x[j] = z[j] / nz;
    }
    est.value = est.lower;
    return est;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<cplx> start(c);
  for (auto& v : start) v = {gauss(rng), 0.0};
  NormEstimate best = run(start);
  NormEstimate alt = run(std::vector<cplx>(c, cplx{1.0}));
  if (alt.lower > best.lower) best = std::move(alt);

  // recompute the certified ratio from the witness itself
  std::vector<cplx> y(r);
  kernels::matvec(A.entries(), r, c, best.witness, y);
  best.lower = vec_norm2(y) / vec_norm2(best.witness);
  best.value = best.lower;
  return best;
}

CoefVector::CoefVector(std::vector<cplx> values) : values_(std::move(values)), norm2_(vec_norm2(values_)) {}

std::size_t CoefVector::support_max() const {
  for (std::size_t n = values_.size(); n-- > 0;)
    if (values_[n] != cplx{}) return n;
  return 0;
}

CoefVector indicator_vector(std::size_t lo, std::size_t hi) {
  if (lo >= hi) throw std::invalid_argument("indicator_vector: empty range");
  std::vector<cplx> v(hi);
  std::fill(v.begin() + static_cast<std::ptrdiff_t>(lo), v.end(), cplx{1.0});
  return CoefVector(std::move(v));
}

DenseMatrix psi_matrix(const CoefVector& u, const WeightSequence& w, std::size_t K) {
  DenseMatrix M(K, K);
  const ExcessTable excess(w, K);
  const auto kk = static_cast<std::ptrdiff_t>(K);
#pragma omp parallel for schedule(static) if (K > 128)
  for (std::ptrdiff_t ii = 0; ii < kk; ++ii) {
    const auto k = static_cast<std::size_t>(ii);
    // the formula is symmetric in (k, l); fill both halves from one value
    for (std::size_t l = k; l < K; ++l) {
      const cplx uk = u[k + l];
      const cplx v = (uk == cplx{}) ? cplx{} : uk * std::exp(0.5 * excess(k, l));
      M(k, l) = v;
      M(l, k) = v;
    }
  }
  return M;
}

HsNorms psi_hs_norm(const CoefVector& u, const WeightSequence& w, std::size_t K) {
  HsNorms out;
  const std::size_t smax = u.support_max();
  out.covered = smax < K;
  out.direct = psi_matrix(u, w, K).frobenius_norm();
  const auto b = bn_sequence(w, smax);
  const auto logs = w.log_values(smax + 1);
  const double ninf = -std::numeric_limits<double>::infinity();
  const double l = log_sum_exp_gen(smax + 1, [&](std::size_t n) {
    const double a = std::abs(u[n]);
    return a == 0.0 ? ninf : 2.0 * std::log(a) + logs[n] + b.log_values[n];
  });
  out.via_identity = std::isinf(l) ? 0.0 : std::exp(0.5 * l);
  return out;
}

HankelTest hankel_indicator_test(unsigned k, const WeightSequence& w) {
  if (k < 2) throw std::invalid_argument("hankel_indicator_test: k must be at least 2");
  const std::size_t m = pow3(k);
  if (m > kMaxDenseDim) throw std::length_error("hankel_indicator_test: level too large");
  const auto twice = doubled_level_block(k);
  const auto u = indicator_vector(twice.lo, twice.hi);
  const DenseMatrix psi = psi_matrix(u, w, m);

  HankelTest out;
  out.estimate = l2_opnorm(psi);
  out.ratio = out.estimate.value / u.norm2();
  const auto blk = level_block(k);
  out.block_size = blk.size();
  const DenseMatrix sub = psi.block(blk.lo, blk.lo, blk.size(), blk.size());
  out.block_all_ones = std::all_of(sub.entries().begin(), sub.entries().end(),
                                   [](const cplx& e) { return e == cplx{1.0}; });
  out.block_norm = l2_opnorm(sub).value;
  return out;
}

double lp_column_lower(const DenseMatrix& A, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_column_lower: p must be at least 1");
  double best = 0.0;
  for (std::size_t j = 0; j < A.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      const double a = std::abs(A(i, j));
      s = std::isinf(p) ? std::max(s, a) : s + std::pow(a, p);
    }
    best = std::max(best, std::isinf(p) ? s : std::pow(s, 1.0 / p));
  }
  return best;
}

double lq_row_lower(const DenseMatrix& A, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("lq_row_lower: q must be at least 1");
  double best = 0.0;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < A.cols(); ++j) {
      const double a = std::abs(A(i, j));
      s = std::isinf(q) ? std::max(s, a) : s + std::pow(a, q);
    }
    best = std::max(best, std::isinf(q) ? s : std::pow(s, 1.0 / q));
  }
  return best;
}

double multiplication_bilinear_lower(const WeightSequence& w, std::size_t N) {
  if (N < 1) throw std::invalid_argument("multiplication_bilinear_lower: N must be at least 1");
  const ExcessTable excess(w, N);
  double best = -std::numeric_limits<double>::infinity();
  const auto nn = static_cast<std::ptrdiff_t>(N + 1);
#pragma omp parallel for schedule(dynamic, 32) reduction(max : best)
  for (std::ptrdiff_t mm = 0; mm < nn; ++mm) {
    const auto m = static_cast<std::size_t>(mm);
    for (std::size_t n = m; n <= N; ++n) best = std::max(best, excess(m, n));
  }
  return std::exp(0.5 * best);
}

}  // namespace whs
