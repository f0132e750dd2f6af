#pragma once

// Data-parallel inner loops. Each kernel has a serial reference that the
// tests compare against; library code calls the parallel form.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace whs::kernels {

using cplx = std::complex<double>;

/// Convolutions with more terms than this use compensated accumulation.
inline constexpr std::size_t kCompensateAbove = 1024;

/// First `out_len` coefficients of the full convolution f * g.
std::vector<cplx> convolve_serial(std::span<const cplx> f, std::span<const cplx> g,
                                  std::size_t out_len);
std::vector<cplx> convolve(std::span<const cplx> f, std::span<const cplx> g,
                           std::size_t out_len);

/// out[n] = log sum_{k=0}^{n} exp(x[k] + x[n-k]) for n < out_len, using the
/// k <-> n-k symmetry of the summand.
std::vector<double> log_self_convolve_serial(std::span<const double> x, std::size_t out_len);
std::vector<double> log_self_convolve(std::span<const double> x, std::size_t out_len);

/// y = A x for row-major A of shape rows x cols.
void matvec_serial(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                   std::span<const cplx> x, std::span<cplx> y);
void matvec(std::span<const cplx> a, std::size_t rows, std::size_t cols,
            std::span<const cplx> x, std::span<cplx> y);

/// y = A^* x.
void matvec_adjoint_serial(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                           std::span<const cplx> x, std::span<cplx> y);
void matvec_adjoint(std::span<const cplx> a, std::size_t rows, std::size_t cols,
                    std::span<const cplx> x, std::span<cplx> y);

/// max over i, j < n with i + j < n of x[i + j] - x[i] - x[j].
double max_log_excess_serial(std::span<const double> x, std::size_t n);
double max_log_excess(std::span<const double> x, std::size_t n);

}  // namespace whs::kernels
