#include "iwasawa/kernels.hpp"

#include <algorithm>

namespace iwasawa::kernels::scalar {

void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
    std::fill(c, c + m * n, cplx{});
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double ar = a[i * k + p].real();
            const double ai = a[i * k + p].imag();
            if (ar == 0.0 && ai == 0.0) continue;
            const cplx* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double br = brow[j].real();
                const double bi = brow[j].imag();
                crow[j] = {crow[j].real() + (ar * br - ai * bi), crow[j].imag() + (ar * bi + ai * br)};
            }
        }
    }
}

double sum_sq(const cplx* x, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len) {
    const double ar = alpha.real();
    const double ai = alpha.imag();
    for (std::size_t i = 0; i < len; ++i) {
        const double xr = x[i].real();
        const double xi = x[i].imag();
        y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
    }
}

}  // namespace iwasawa::kernels::scalar
