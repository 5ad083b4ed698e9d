#ifndef BORNCOUNT_KERNELS_HPP
#define BORNCOUNT_KERNELS_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

// Reduction and scan kernels underlying all integrals and cumulative-mass
// tables. The production kernels accumulate in fixed-size chunks with
// Neumaier compensation and combine chunk partials in index order, so the
// result is bitwise identical no matter how many OpenMP threads execute the
// chunks (including none). Plain-loop serial references live in
// kernels::serial for tests and the benchmark.

namespace borncount::kernels {

using cplx = std::complex<double>;

// sum of v[i]
double sum(std::span<const double> v);

// sum of v[i] * w[i]
double weighted_sum(std::span<const double> v, std::span<const double> w);

// sum of v[idx[j]] * w[idx[j]] over the index list
double masked_weighted_sum(std::span<const double> v, std::span<const double> w,
                           std::span<const std::uint32_t> idx);

// sum of conj(a[i]) * (b[i] * w[i])
cplx weighted_dot(std::span<const cplx> a, std::span<const cplx> b,
                  std::span<const double> w);

// sum of |a[i]|^2 * w[i]
double weighted_norm2(std::span<const cplx> a, std::span<const double> w);

// inclusive prefix sums of v
std::vector<double> inclusive_scan(std::span<const double> v);

namespace serial {
double sum(std::span<const double> v);
double weighted_sum(std::span<const double> v, std::span<const double> w);
double masked_weighted_sum(std::span<const double> v, std::span<const double> w,
                           std::span<const std::uint32_t> idx);
cplx weighted_dot(std::span<const cplx> a, std::span<const cplx> b,
                  std::span<const double> w);
double weighted_norm2(std::span<const cplx> a, std::span<const double> w);
std::vector<double> inclusive_scan(std::span<const double> v);
}  // namespace serial

}  // namespace borncount::kernels

#endif
