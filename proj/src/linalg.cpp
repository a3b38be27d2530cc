#include "iwasawa/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "iwasawa/kernels.hpp"
#include "iwasawa/rng.hpp"

namespace iwasawa {

namespace {

using EigenMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenMat to_eigen(const ComplexMatrix& m) {
    return Eigen::Map<const EigenMat>(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                                      static_cast<Eigen::Index>(m.cols()));
}

double one_norm(const ComplexMatrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) col += std::abs(m(i, j));
        best = std::max(best, col);
    }
    return best;
}

// out += c * m
void add_scaled(ComplexMatrix& out, double c, const ComplexMatrix& m) {
    kernels::active().axpy(c, m.data().data(), out.data().data(), m.size());
}

}  // namespace

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

ComplexMatrix transpose(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
    return out;
}

ComplexMatrix conj(const ComplexMatrix& m) {
    ComplexMatrix out = m;
    for (auto& z : out.data()) z = std::conj(z);
    return out;
}

double frobenius_norm(const ComplexMatrix& m) {
    return std::sqrt(kernels::active().sum_sq(m.data().data(), m.size()));
}

double max_abs(const ComplexMatrix& m) {
    double best = 0.0;
    for (const auto& z : m.data()) best = std::max(best, std::abs(z));
    return best;
}

double hermitian_defect(const ComplexMatrix& m) {
    require_square(m, "hermitian_defect");
    double acc = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) acc += std::norm(m(i, j) - std::conj(m(j, i)));
    return std::sqrt(acc);
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return m.square() && hermitian_defect(m) <= tol * (1.0 + frobenius_norm(m));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

double unitarity_defect(const ComplexMatrix& u) {
    return frobenius_norm(adjoint(u) * u - ComplexMatrix::identity(u.cols()));
}

HermitianEig hermitian_eig(const ComplexMatrix& h, double tol) {
    require_square(h, "hermitian_eig");
    const double norm = frobenius_norm(h);
    const double defect = hermitian_defect(h);
    if (defect > tol * (1.0 + norm)) {
        std::ostringstream msg;
        msg << "||h - h*||_F = " << defect << " exceeds " << tol << " * (1 + ||h||_F)";
        throw Error(ErrorKind::NotHermitian, msg.str());
    }
    const std::size_t n = h.rows();
    EigenMat sym = to_eigen(h);
    sym = (0.5 * (sym + sym.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<EigenMat> solver(sym);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceFailure, "Hermitian eigensolver failed");

    // Eigen returns ascending order; reverse to non-increasing.
    HermitianEig out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    for (std::size_t j = 0; j < n; ++j) {
        const auto src = static_cast<Eigen::Index>(n - 1 - j);
        out.values[j] = vals(src);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = vecs(static_cast<Eigen::Index>(i), src);
    }

    ComplexMatrix scaled = out.vectors;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= out.values[j];
    const double residual = frobenius_norm(h * out.vectors - scaled);
    if (residual > 1e-12 * norm) {
        std::ostringstream msg;
        msg << "eigen residual " << residual << " exceeds 1e-12 * ||h||_F = " << 1e-12 * norm;
        throw Error(ErrorKind::ConvergenceFailure, msg.str());
    }
    return out;
}

ComplexMatrix positive_sqrt(const ComplexMatrix& h) {
    const HermitianEig eig = hermitian_eig(h, 1e-10);
    const std::size_t n = h.rows();
    const double scale = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    if (eig.values.back() <= 1e-12 * scale) throw Error(ErrorKind::NotPositive, "matrix is not positive definite");
    ComplexMatrix scaled = eig.vectors;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= std::sqrt(eig.values[j]);
    return scaled * adjoint(eig.vectors);
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
    require_square(m, "matrix_exp");
    const std::size_t n = m.rows();
    const ComplexMatrix id = ComplexMatrix::identity(n);

    static constexpr std::array<double, 4> b3{120.0, 60.0, 12.0, 1.0};
    static constexpr std::array<double, 6> b5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
    static constexpr std::array<double, 8> b7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                              25200.0,    1512.0,    56.0,      1.0};
    static constexpr std::array<double, 10> b9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                                               2162160.0,     110880.0,     3960.0,       90.0,        1.0};
    static constexpr std::array<double, 14> b13{
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0, 129060195264000.0,
        10559470521600.0,    670442572800.0,      33522128640.0,      1323241920.0,       40840800.0,
        960960.0,            16380.0,             182.0,              1.0};
    static constexpr std::array<double, 5> theta{1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                                 2.097847961257068e0, 5.371920351148152e0};

    const double norm1 = one_norm(m);
    ComplexMatrix u_part(n, n);
    ComplexMatrix v_part(n, n);
    int squarings = 0;

    // Low-degree approximants: U = A * sum_odd b_k A^(k-1), V = sum_even b_k A^k.
    auto low_degree = [&](const double* b, std::size_t degree) {
        const ComplexMatrix a2 = m * m;
        ComplexMatrix power = id;
        ComplexMatrix odd(n, n);
        for (std::size_t k = 0; k <= degree; k += 2) {
            add_scaled(v_part, b[k], power);
            add_scaled(odd, b[k + 1], power);
            if (k + 2 <= degree) power = power * a2;
        }
        u_part = m * odd;
    };

    if (norm1 <= theta[0]) {
        low_degree(b3.data(), 3);
    } else if (norm1 <= theta[1]) {
        low_degree(b5.data(), 5);
    } else if (norm1 <= theta[2]) {
        low_degree(b7.data(), 7);
    } else if (norm1 <= theta[3]) {
        low_degree(b9.data(), 9);
    } else {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta[4]))));
        ComplexMatrix a = m;
        a *= std::ldexp(1.0, -squarings);
        const ComplexMatrix a2 = a * a;
        const ComplexMatrix a4 = a2 * a2;
        const ComplexMatrix a6 = a4 * a2;

        ComplexMatrix inner_u(n, n);
        add_scaled(inner_u, b13[13], a6);
        add_scaled(inner_u, b13[11], a4);
        add_scaled(inner_u, b13[9], a2);
        ComplexMatrix outer_u = a6 * inner_u;
        add_scaled(outer_u, b13[7], a6);
        add_scaled(outer_u, b13[5], a4);
        add_scaled(outer_u, b13[3], a2);
        add_scaled(outer_u, b13[1], id);
        u_part = a * outer_u;

        ComplexMatrix inner_v(n, n);
        add_scaled(inner_v, b13[12], a6);
        add_scaled(inner_v, b13[10], a4);
        add_scaled(inner_v, b13[8], a2);
        v_part = a6 * inner_v;
        add_scaled(v_part, b13[6], a6);
        add_scaled(v_part, b13[4], a4);
        add_scaled(v_part, b13[2], a2);
        add_scaled(v_part, b13[0], id);
    }

    ComplexMatrix result = solve(v_part - u_part, v_part + u_part);
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    if (m.empty()) return {};
    bool real = true;
    for (const auto& z : m.data())
        if (z.imag() != 0.0) {
            real = false;
            break;
        }
    Eigen::VectorXd sv;
    if (real) {
        Eigen::MatrixXd rm(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                rm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).real();
        Eigen::BDCSVD<Eigen::MatrixXd> svd(rm);
        sv = svd.singularValues();
    } else {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(to_eigen(m));
        sv = svd.singularValues();
    }
    std::vector<double> out(sv.data(), sv.data() + sv.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double schatten_norm(const ComplexMatrix& m, SchattenP p) {
    const std::vector<double> sv = singular_values(m);
    if (sv.empty()) return 0.0;
    if (p.is_infinity()) return sv.front();
    const double q = p.value();
    // Scale by the largest value so large exponents do not overflow.
    const double top = sv.front();
    if (top == 0.0) return 0.0;
    double acc = 0.0;
    for (double s : sv) acc += std::pow(s / top, q);
    return top * std::pow(acc, 1.0 / q);
}

double operator_norm_power(const ComplexMatrix& m, double rel_tol, std::size_t max_iter) {
    if (m.empty()) return 0.0;
    const ComplexMatrix mh = adjoint(m);
    ComplexMatrix v(m.cols(), 1);
    Rng rng(0x5eed);
    for (std::size_t i = 0; i < m.cols(); ++i) v(i, 0) = rng.complex_normal();
    double estimate = 0.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        const double vn = frobenius_norm(v);
        if (vn == 0.0) return 0.0;
        v *= 1.0 / vn;
        ComplexMatrix w = mh * (m * v);
        const double next = std::sqrt(frobenius_norm(w));
        if (it > 0 && std::abs(next - estimate) <= rel_tol * next) return next;
        estimate = next;
        v = std::move(w);
    }
    throw Error(ErrorKind::ConvergenceFailure, "power iteration did not converge");
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "solve");
    if (b.rows() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "solve: right-hand side has wrong row count");
    const std::size_t n = a.rows();
    const std::size_t nrhs = b.cols();
    const double threshold = frobenius_norm(a) * 1e-13;
    ComplexMatrix lu = a;
    ComplexMatrix x = b;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= threshold || best == 0.0) {
            std::ostringstream msg;
            msg << "pivot " << k << " has magnitude " << best << " <= ||a||_F * 1e-13";
            throw Error(ErrorKind::Singular, msg.str());
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            for (std::size_t j = 0; j < nrhs; ++j) std::swap(x(k, j), x(piv, j));
        }
        const cplx inv_pivot = 1.0 / lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx factor = lu(i, k) * inv_pivot;
            if (factor == cplx{}) continue;
            lu(i, k) = factor;
            kernels::active().axpy(-factor, &lu(k, k + 1), &lu(i, k + 1), n - k - 1);
            kernels::active().axpy(-factor, &x(k, 0), &x(i, 0), nrhs);
        }
    }
    for (std::size_t kk = n; kk-- > 0;) {
        for (std::size_t j = kk + 1; j < n; ++j) {
            const cplx f = lu(kk, j);
            if (f != cplx{}) kernels::active().axpy(-f, &x(j, 0), &x(kk, 0), nrhs);
        }
        const cplx inv_pivot = 1.0 / lu(kk, kk);
        for (std::size_t j = 0; j < nrhs; ++j) x(kk, j) *= inv_pivot;
    }
    return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) { return solve(a, ComplexMatrix::identity(a.rows())); }

ComplexMatrix random_ginibre(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error(ErrorKind::InvalidInput, "random_ginibre: n must be positive");
    Rng rng(seed);
    ComplexMatrix m(n, n);
    for (auto& z : m.data()) z = rng.complex_normal();
    return m;
}

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    const ComplexMatrix g = random_ginibre(n, seed);
    // Modified Gram-Schmidt with a second pass; columns of g are generic.
    ComplexMatrix q(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<cplx> v = g.column(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < j; ++p) {
                cplx dot{};
                for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, p)) * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q(i, p);
            }
        }
        double norm = 0.0;
        for (const auto& z : v) norm += std::norm(z);
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) q(i, j) = v[i] / norm;
    }
    return q;
}

}  // namespace iwasawa
