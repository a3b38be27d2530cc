#pragma once

// Data-parallel inner loops behind ComplexMatrix arithmetic.
//
// Every kernel has a portable scalar reference implementation. On x86-64 an
// AVX2+FMA variant is compiled separately and selected at runtime when the
// CPU reports both features. Setting IWASAWA_KERNELS=scalar forces the
// reference path. The two paths are checked against each other in
// tests/test_kernels.cpp.

#include <complex>
#include <cstddef>

namespace iwasawa::kernels {

using cplx = std::complex<double>;

/// c (m x n) = a (m x k) * b (k x n), all row-major. c must not alias a or b.
using GemmFn = void (*)(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
/// Sum of |x_i|^2.
using SumSqFn = double (*)(const cplx* x, std::size_t len);
/// y += alpha * x.
using AxpyFn = void (*)(cplx alpha, const cplx* x, cplx* y, std::size_t len);

struct KernelTable {
    const char* name;
    GemmFn gemm;
    SumSqFn sum_sq;
    AxpyFn axpy;
};

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_table();

/// The table selected at first use (honours IWASAWA_KERNELS).
const KernelTable& active();

namespace scalar {
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
double sum_sq(const cplx* x, std::size_t len);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len);
}  // namespace scalar

#if defined(IWASAWA_HAVE_AVX2)
namespace avx2 {
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
double sum_sq(const cplx* x, std::size_t len);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len);
}  // namespace avx2
#endif

}  // namespace iwasawa::kernels
