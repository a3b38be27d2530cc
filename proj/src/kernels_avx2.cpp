// Compiled with -mavx2 -mfma; only called after a runtime CPU check.
#include "iwasawa/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace iwasawa::kernels::avx2 {

namespace {

// (ar + i ai) * [br0, bi0, br1, bi1] for two packed complex values.
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d b) {
    const __m256d b_swap = _mm256_permute_pd(b, 0b0101);
    return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, b_swap));
}

}  // namespace

void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
    std::fill(c, c + m * n, cplx{});
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = reinterpret_cast<double*>(c + i * n);
        for (std::size_t p = 0; p < k; ++p) {
            const double are = a[i * k + p].real();
            const double aim = a[i * k + p].imag();
            if (are == 0.0 && aim == 0.0) continue;
            const __m256d ar = _mm256_set1_pd(are);
            const __m256d ai = _mm256_set1_pd(aim);
            const double* brow = reinterpret_cast<const double*>(b + p * n);
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
                const __m256d cv = _mm256_loadu_pd(crow + 2 * j);
                _mm256_storeu_pd(crow + 2 * j, _mm256_add_pd(cv, cmul_broadcast(ar, ai, bv)));
            }
            if (j < n) {
                const double br = brow[2 * j];
                const double bi = brow[2 * j + 1];
                crow[2 * j] += are * br - aim * bi;
                crow[2 * j + 1] += are * bi + aim * br;
            }
        }
    }
}

double sum_sq(const cplx* x, std::size_t len) {
    const double* d = reinterpret_cast<const double*>(x);
    const std::size_t total = 2 * len;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= total; i += 8) {
        const __m256d v0 = _mm256_loadu_pd(d + i);
        const __m256d v1 = _mm256_loadu_pd(d + i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    for (; i + 4 <= total; i += 4) {
        const __m256d v0 = _mm256_loadu_pd(d + i);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
    double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < total; ++i) acc += d[i] * d[i];
    return acc;
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t j = 0;
    for (; j + 2 <= len; j += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * j);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * j);
        _mm256_storeu_pd(yd + 2 * j, _mm256_add_pd(yv, cmul_broadcast(ar, ai, xv)));
    }
    for (; j < len; ++j) {
        const double xr = x[j].real();
        const double xi = x[j].imag();
        y[j] = {y[j].real() + (alpha.real() * xr - alpha.imag() * xi),
                y[j].imag() + (alpha.real() * xi + alpha.imag() * xr)};
    }
}

}  // namespace iwasawa::kernels::avx2
