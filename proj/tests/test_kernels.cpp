#include <gtest/gtest.h>

#include <vector>

#include "iwasawa/kernels.hpp"
#include "iwasawa/rng.hpp"

namespace iwasawa::kernels {
namespace {

std::vector<cplx> random_vector(std::size_t len, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> v(len);
    for (auto& z : v) z = rng.complex_normal();
    return v;
}

// Textbook triple loop, independent of both kernel tables.
std::vector<cplx> naive_gemm(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t m, std::size_t k,
                             std::size_t n) {
    std::vector<cplx> c(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc{};
            for (std::size_t p = 0; p < k; ++p) acc += a[i * k + p] * b[p * n + j];
            c[i * n + j] = acc;
        }
    return c;
}

double max_diff(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
    return d;
}

struct Shape {
    std::size_t m, k, n;
};

const Shape kShapes[] = {{1, 1, 1}, {1, 5, 3}, {2, 2, 2}, {3, 7, 5}, {8, 8, 8}, {13, 4, 9}, {33, 17, 31}, {64, 64, 64}};

TEST(ScalarKernels, GemmMatchesNaive) {
    std::uint64_t seed = 1;
    for (const auto& s : kShapes) {
        const auto a = random_vector(s.m * s.k, seed++);
        const auto b = random_vector(s.k * s.n, seed++);
        std::vector<cplx> c(s.m * s.n, cplx(99.0, 99.0));
        scalar::gemm(a.data(), b.data(), c.data(), s.m, s.k, s.n);
        EXPECT_LT(max_diff(c, naive_gemm(a, b, s.m, s.k, s.n)), 1e-12);
    }
}

TEST(ScalarKernels, SumSqAndAxpy) {
    const auto x = random_vector(37, 5);
    double want = 0.0;
    for (const auto& z : x) want += std::norm(z);
    EXPECT_NEAR(scalar::sum_sq(x.data(), x.size()), want, 1e-12 * want);
    auto y = random_vector(37, 6);
    const auto y0 = y;
    const cplx alpha(0.5, -2.0);
    scalar::axpy(alpha, x.data(), y.data(), y.size());
    for (std::size_t i = 0; i < y.size(); ++i) EXPECT_LT(std::abs(y[i] - (y0[i] + alpha * x[i])), 1e-14);
}

class Avx2Equivalence : public ::testing::Test {
protected:
    void SetUp() override {
        table_ = avx2_table();
        if (!table_) GTEST_SKIP() << "AVX2 kernels not available on this machine";
    }
    const KernelTable* table_ = nullptr;
};

TEST_F(Avx2Equivalence, Gemm) {
    std::uint64_t seed = 100;
    for (const auto& s : kShapes) {
        const auto a = random_vector(s.m * s.k, seed++);
        const auto b = random_vector(s.k * s.n, seed++);
        std::vector<cplx> c_ref(s.m * s.n), c_simd(s.m * s.n, cplx(7.0, 7.0));
        scalar_table().gemm(a.data(), b.data(), c_ref.data(), s.m, s.k, s.n);
        table_->gemm(a.data(), b.data(), c_simd.data(), s.m, s.k, s.n);
        EXPECT_LT(max_diff(c_ref, c_simd), 1e-12 * static_cast<double>(s.k)) << s.m << "x" << s.k << "x" << s.n;
    }
}

TEST_F(Avx2Equivalence, SumSq) {
    for (std::size_t len : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 1000u}) {
        const auto x = random_vector(len, len + 1);
        const double ref = scalar_table().sum_sq(x.data(), len);
        EXPECT_NEAR(table_->sum_sq(x.data(), len), ref, 1e-13 * (1.0 + ref)) << len;
    }
}

TEST_F(Avx2Equivalence, Axpy) {
    for (std::size_t len : {0u, 1u, 2u, 3u, 5u, 16u, 101u}) {
        const auto x = random_vector(len, 2 * len + 1);
        auto y_ref = random_vector(len, 2 * len + 2);
        auto y_simd = y_ref;
        const cplx alpha(-1.25, 0.75);
        scalar_table().axpy(alpha, x.data(), y_ref.data(), len);
        table_->axpy(alpha, x.data(), y_simd.data(), len);
        EXPECT_LT(max_diff(y_ref, y_simd), 1e-14) << len;
    }
}

TEST(KernelSelection, ActiveTableIsOneOfTheKnownTables) {
    const KernelTable& t = active();
    const KernelTable* simd = avx2_table();
    EXPECT_TRUE(&t == &scalar_table() || (simd && &t == simd));
}

}  // namespace
}  // namespace iwasawa::kernels
