#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "whs/weights.hpp"

namespace whs {

using cplx = std::complex<double>;

/// Largest dense matrix dimension accepted by the builders.
inline constexpr std::size_t kMaxDenseDim = 4096;

/// Row-major dense complex matrix.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  cplx operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  std::span<const cplx> entries() const { return entries_; }

  DenseMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  double frobenius_norm() const;

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix ones(std::size_t rows, std::size_t cols);

 private:
  std::size_t rows_, cols_;
  std::vector<cplx> entries_;
};

/// Result of a largest-singular-value estimate. Values are lower bounds for
/// the norm of the truncated matrix (and so of any operator it truncates).
struct NormEstimate {
  double lower = 0.0;     // ||A w|| / ||w|| for the returned witness
  double value = 0.0;     // converged estimate
  std::size_t iterations = 0;
  double residual = 0.0;  // ||A^*A w - value^2 w|| / (value ||w||)
  bool converged = false;
  std::vector<cplx> witness;
};

/// Power iteration on A^*A from a seeded random start, with one restart
/// from the all-ones vector; the better run is kept.
NormEstimate l2_opnorm(const DenseMatrix& A, double tol = 1e-12, std::size_t maxit = 5000,
                       std::uint64_t seed = 1);

/// An l^2 coefficient vector u with its cached Euclidean norm.
class CoefVector {
 public:
  explicit CoefVector(std::vector<cplx> values);
  const std::vector<cplx>& values() const { return values_; }
  double norm2() const { return norm2_; }
  std::size_t size() const { return values_.size(); }
  cplx operator[](std::size_t n) const { return n < values_.size() ? values_[n] : cplx{}; }
  /// Largest index with a nonzero entry, or 0.
  std::size_t support_max() const;

 private:
  std::vector<cplx> values_;
  double norm2_;
};

/// Indicator vector of [lo, hi).
CoefVector indicator_vector(std::size_t lo, std::size_t hi);

/// K x K matrix M_{k,l} = u_{k+l} sqrt(beta_{k+l} / (beta_k beta_l)); u beyond
/// its stored length counts as zero.
DenseMatrix psi_matrix(const CoefVector& u, const WeightSequence& w, std::size_t K);

struct HsNorms {
  double direct = 0.0;        // Frobenius norm of psi_matrix
  double via_identity = 0.0;  // sqrt(sum |u_n|^2 beta_n B_n)
  bool covered = true;        // every support index n satisfies n < K
};

HsNorms psi_hs_norm(const CoefVector& u, const WeightSequence& w, std::size_t K);

struct HankelTest {
  double ratio = 0.0;          // ||Psi(u)|| / ||u||_2, u = 1 on 2 I_k
  std::size_t block_size = 0;  // |I_k|
  double block_norm = 0.0;     // operator norm of the I_k x I_k block
  bool block_all_ones = false;
  NormEstimate estimate;
};

/// Requires k >= 2; uses K = m_k.
HankelTest hankel_indicator_test(unsigned k, const WeightSequence& w);

/// max over columns of the l^p column norm (p may be inf).
double lp_column_lower(const DenseMatrix& A, double p);
/// max over rows of the l^q row norm (q may be inf).
double lq_row_lower(const DenseMatrix& A, double q);

/// sup over m, n <= N of ||e_m e_n|| / (||e_m|| ||e_n||) in h^2(beta).
double multiplication_bilinear_lower(const WeightSequence& w, std::size_t N);

}  // namespace whs
