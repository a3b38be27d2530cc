#include "iwasawa/kan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "iwasawa/linalg.hpp"
#include "iwasawa/parallel.hpp"
#include "iwasawa/rng.hpp"
#include "iwasawa/triangular.hpp"

namespace iwasawa {

namespace {

constexpr double kPivotTol = 1e-13;

void require_frame(const SpectralFrame& frame, const ComplexMatrix& m, const char* what) {
    if (!m.square()) {
        std::ostringstream msg;
        msg << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::NotSquare, msg.str());
    }
    if (m.rows() != frame.dim()) {
        std::ostringstream msg;
        msg << what << ": matrix is " << m.rows() << "x" << m.cols() << " but the frame has dimension " << frame.dim();
        throw Error(ErrorKind::FrameMismatch, msg.str());
    }
}

cplx dot(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    cplx acc{};
    for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
    return acc;
}

double norm(const std::vector<cplx>& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

double min_eigenvalue(const ComplexMatrix& h) {
    return hermitian_eig(0.5 * (h + adjoint(h)), 1e-10).values.back();
}

ComplexMatrix off_block_part(const SpectralFrame& frame, const ComplexMatrix& frame_coords) {
    return frame_coords - keep_diagonal_blocks(frame, frame_coords);
}

}  // namespace

NestFactors nest_factor(const SpectralFrame& frame, const ComplexMatrix& a) {
    require_frame(frame, a, "nest_factor");
    const double norm_a = frobenius_norm(a);
    if (hermitian_defect(a) > kHermitianTol * (1.0 + norm_a))
        throw Error(ErrorKind::NotPositive, "nest_factor: input is not Hermitian");
    const HermitianEig eig = hermitian_eig(a, 1e-10);
    const double scale = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    if (!(eig.values.back() > 1e-12 * scale)) {
        std::ostringstream msg;
        msg << "nest_factor: smallest eigenvalue " << eig.values.back() << " is not positive";
        throw Error(ErrorKind::NotPositive, msg.str());
    }

    const ComplexMatrix af = to_frame(frame, a);
    const auto& off = frame.block_offsets();
    const std::size_t blocks = frame.block_count();
    const std::size_t n = frame.dim();
    ComplexMatrix d(n, n);
    ComplexMatrix r(n, n);
    std::vector<ComplexMatrix> d_blocks(blocks);

    auto size_of = [&](std::size_t b) { return off[b + 1] - off[b]; };
    auto a_block = [&](std::size_t i, std::size_t j) { return af.block(off[i], off[j], size_of(i), size_of(j)); };
    auto r_block = [&](std::size_t i, std::size_t j) { return r.block(off[i], off[j], size_of(i), size_of(j)); };

    for (std::size_t i = 0; i < blocks; ++i) {
        // d_i = a_ii - sum_{k<i} r_ki* d_k r_ki
        ComplexMatrix di = a_block(i, i);
        std::vector<ComplexMatrix> left(i);  // r_ki* d_k
        for (std::size_t k = 0; k < i; ++k) {
            left[k] = adjoint(r_block(k, i)) * d_blocks[k];
            di -= left[k] * r_block(k, i);
        }
        di = 0.5 * (di + adjoint(di));
        d_blocks[i] = di;
        d.set_block(off[i], off[i], di);
        // r_ij = d_i^-1 (a_ij - sum_{k<i} r_ki* d_k r_kj)
        for (std::size_t j = i + 1; j < blocks; ++j) {
            ComplexMatrix rhs = a_block(i, j);
            for (std::size_t k = 0; k < i; ++k) rhs -= left[k] * r_block(k, j);
            r.set_block(off[i], off[j], solve(di, rhs));
        }
    }
    return {from_frame(frame, d), from_frame(frame, r)};
}

KanFactors kan_factor(const SpectralFrame& frame, const ComplexMatrix& g) {
    require_frame(frame, g, "kan_factor");
    if (!g.all_finite()) throw Error(ErrorKind::InvalidInput, "kan_factor: input has non-finite entries");
    const std::size_t n = frame.dim();
    const double norm_g = frobenius_norm(g);
    const ComplexMatrix gf = to_frame(frame, g);

    // Column-ordered Gram-Schmidt, every projection applied twice.
    std::vector<std::vector<cplx>> q(n);
    ComplexMatrix r(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<cplx> v = gf.column(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                const cplx c = dot(q[i], v);
                r(i, j) += c;
                for (std::size_t t = 0; t < n; ++t) v[t] -= c * q[i][t];
            }
        }
        const double nrm = norm(v);
        if (!(nrm > kPivotTol * norm_g)) {
            std::ostringstream msg;
            msg << "kan_factor: matrix is numerically singular (pivot " << j << " is " << nrm << ")";
            throw Error(ErrorKind::Singular, msg.str());
        }
        r(j, j) = nrm;
        for (auto& z : v) z /= nrm;
        q[j] = std::move(v);
    }
    ComplexMatrix kf(n, n);
    for (std::size_t j = 0; j < n; ++j) kf.set_column(j, q[j]);

    // Polar split of each diagonal block R_ii = U_i P_i; k absorbs U_i.
    const auto& off = frame.block_offsets();
    for (std::size_t b = 0; b < frame.block_count(); ++b) {
        const std::size_t m = off[b + 1] - off[b];
        if (m == 1) continue;
        const ComplexMatrix rb = r.block(off[b], off[b], m, m);
        const ComplexMatrix p = positive_sqrt(adjoint(rb) * rb);
        const ComplexMatrix u = rb * inverse(p);
        kf.set_block(0, off[b], kf.block(0, off[b], n, m) * u);
        r.set_block(off[b], off[b], adjoint(u) * r.block(off[b], off[b], m, n - off[b]));
        ComplexMatrix pb = r.block(off[b], off[b], m, m);
        r.set_block(off[b], off[b], 0.5 * (pb + adjoint(pb)));
    }

    const ComplexMatrix af = keep_diagonal_blocks(frame, r);
    ComplexMatrix nf = ComplexMatrix::identity(n);
    for (std::size_t b = 0; b < frame.block_count(); ++b) {
        const std::size_t m = off[b + 1] - off[b];
        const std::size_t rest = n - off[b + 1];
        if (rest == 0) continue;
        const ComplexMatrix upper = r.block(off[b], off[b + 1], m, rest);
        nf.set_block(off[b], off[b + 1], solve(af.block(off[b], off[b], m, m), upper));
    }

    KanFactors f{from_frame(frame, kf), from_frame(frame, af), from_frame(frame, nf), 0.0, 0.0};
    f.residual_recon = frobenius_norm(f.k * f.a * f.n - g);
    f.residual_unitary = unitarity_defect(f.k);
    return f;
}

MembershipReport verify_kan(const SpectralFrame& frame, const ComplexMatrix& g, const KanFactors& f,
                            const std::optional<StructureContext>& ctx, VerifyTolerances tol) {
    MembershipReport report;
    const std::size_t n = frame.dim();
    const double norm_g = frobenius_norm(g);
    report.add("reconstruction", frobenius_norm(f.k * f.a * f.n - g), tol.residual * (1.0 + norm_g));
    report.add("unitarity", unitarity_defect(f.k), tol.residual);

    const ComplexMatrix af = to_frame(frame, f.a);
    const double norm_a = frobenius_norm(af);
    report.add("a block diagonal", frobenius_norm(off_block_part(frame, af)), tol.residual * (1.0 + norm_a));
    report.add("a Hermitian", hermitian_defect(af), tol.residual * (1.0 + norm_a));
    double lowest = std::numeric_limits<double>::infinity();
    const auto& off = frame.block_offsets();
    for (std::size_t b = 0; b < frame.block_count(); ++b) {
        const std::size_t m = off[b + 1] - off[b];
        lowest = std::min(lowest, min_eigenvalue(af.block(off[b], off[b], m, m)));
    }
    report.note("a smallest eigenvalue", lowest);
    report.add("a positive definite", lowest > 0.0 ? 0.0 : std::abs(lowest) + std::numeric_limits<double>::min(),
               0.0);

    const ComplexMatrix nf = to_frame(frame, f.n);
    const ComplexMatrix non_upper = nf - keep_strict_upper_blocks(frame, nf) - ComplexMatrix::identity(n);
    report.add("unipotence", frobenius_norm(non_upper), tol.residual * (1.0 + frobenius_norm(nf)));

    if (ctx) {
        const std::pair<const char*, const ComplexMatrix*> factors[] = {{"k", &f.k}, {"a", &f.a}, {"n", &f.n}};
        for (const auto& [label, m] : factors) {
            const MembershipReport sub = group_membership(*ctx, *m, tol.membership);
            for (const auto& r : sub.residuals) report.add(std::string(label) + " in G: " + r.name, r.value, r.bound);
        }
    }
    return report;
}

double ClosureSummary::max_value(const std::string& name) const {
    for (const auto& r : worst)
        if (r.name == name) return r.value;
    throw std::out_of_range("no residual named '" + name + "'");
}

ClosureSummary closure_study(FamilyTag family, std::size_t n, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw Error(ErrorKind::InvalidInput, "closure_study: trials must be positive");
    const StructureContext ctx = structure_context(family, n);
    const std::vector<double> coeffs = default_coefficients(ctx);
    const SpectralFrame frame = build_frame(regular_element(ctx, coeffs));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const std::optional<StructureContext> with_ctx = ctx;

    std::vector<MembershipReport> reports(trials);
    parallel_for(trials, [&](std::size_t t) {
        const ComplexMatrix g = sample_group(ctx, trial_seed(seed, t), scale);
        const KanFactors f = kan_factor(frame, g);
        MembershipReport report = verify_kan(frame, g, f, with_ctx);

        // a n = n' a' with a' the block diagonal of a n in frame coordinates.
        const ComplexMatrix an = f.a * f.n;
        const ComplexMatrix a_prime = from_frame(frame, keep_diagonal_blocks(frame, to_frame(frame, an)));
        const ComplexMatrix n_prime = an * inverse(a_prime);
        const double norm_an = frobenius_norm(an);
        report.add("swap: a n - n' a'", frobenius_norm(an - n_prime * a_prime), 1e-9 * (1.0 + norm_an));
        report.add("swap: a' - a", frobenius_norm(a_prime - f.a), 1e-9 * (1.0 + frobenius_norm(f.a)));
        const ComplexMatrix npf = to_frame(frame, n_prime);
        report.add("swap: n' unipotence",
                   frobenius_norm(npf - keep_strict_upper_blocks(frame, npf) - ComplexMatrix::identity(n)),
                   1e-9 * (1.0 + frobenius_norm(npf)));
        for (const auto& r : group_membership(ctx, n_prime, 1e-8).residuals)
            report.add("swap: n' in G: " + r.name, r.value, r.bound);
        reports[t] = std::move(report);
    });

    ClosureSummary summary{family, n, trials, classify(frame), {}, true};
    for (const auto& report : reports) {
        for (const auto& r : report.residuals) {
            auto it = std::find_if(summary.worst.begin(), summary.worst.end(),
                                   [&](const Residual& w) { return w.name == r.name; });
            if (it == summary.worst.end()) {
                summary.worst.push_back(r);
                continue;
            }
            const double cur = it->bound > 0.0 ? it->value / it->bound : it->value;
            const double cand = r.bound > 0.0 ? r.value / r.bound : r.value;
            if (cand > cur) *it = r;
        }
        if (!report.passed) summary.passed = false;
    }
    return summary;
}

std::vector<CurvePoint> truncation_convergence(const StructureContext& ctx, const ComplexMatrix& g,
                                               std::span<const std::size_t> ranks, SchattenP p) {
    const std::size_t n = ctx.dim;
    if (!g.square() || g.rows() != n) {
        std::ostringstream msg;
        msg << "truncation_convergence: expected " << n << "x" << n << ", got " << g.rows() << "x" << g.cols();
        throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
    if (ranks.empty() || ranks.back() != n)
        throw Error(ErrorKind::InvalidInput, "truncation_convergence: ranks must end at the dimension");
    for (std::size_t i = 0; i < ranks.size(); ++i)
        if (ranks[i] == 0 || (i > 0 && ranks[i] <= ranks[i - 1]))
            throw Error(ErrorKind::InvalidInput, "truncation_convergence: ranks must be positive and increasing");

    const ComplexMatrix& basis = ctx.adapted_basis;
    const ComplexMatrix x0 = regular_element(ctx, default_coefficients(ctx));
    const ComplexMatrix x0_adapted = adjoint(basis) * x0 * basis;
    const ComplexMatrix g_adapted = adjoint(basis) * g * basis;

    const KanFactors full = kan_factor(build_frame(x0), g);

    std::vector<CurvePoint> curve;
    for (std::size_t r : ranks) {
        const SpectralFrame frame_r = build_frame(x0_adapted.block(0, 0, r, r));
        KanFactors fr;
        try {
            fr = kan_factor(frame_r, g_adapted.block(0, 0, r, r));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Singular) throw;
            std::ostringstream msg;
            msg << "compression to rank " << r << " is not invertible";
            throw Error(ErrorKind::SingularCompression, msg.str());
        }
        auto embed = [&](const ComplexMatrix& m) {
            ComplexMatrix e = ComplexMatrix::identity(n);
            e.set_block(0, 0, m);
            return basis * e * adjoint(basis);
        };
        curve.push_back({r, schatten_norm(embed(fr.k) - full.k, p), schatten_norm(embed(fr.a) - full.a, p),
                         schatten_norm(embed(fr.n) - full.n, p)});
    }
    return curve;
}

}  // namespace iwasawa
