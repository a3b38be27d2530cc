#include "iwasawa/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "iwasawa/linalg.hpp"

namespace iwasawa {

namespace {

using Op = StructureContext::Operator;

constexpr double kStructureTol = 1e-12;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// The defining relations a family is cut out by.
enum class Relation {
    Orthogonal,     // x = -J x* J^-1
    Symplectic,     // x = -Jt x* Jt^-1
    Real,           // x J = J x
    Quaternionic,   // x Jt = Jt x
    IndefiniteUnitary,  // x* V = -V x
};

std::vector<Relation> relations_of(FamilyTag f) {
    switch (f) {
        case FamilyTag::A: return {};
        case FamilyTag::AI: return {Relation::Real};
        case FamilyTag::AII: return {Relation::Quaternionic};
        case FamilyTag::AIII: return {Relation::IndefiniteUnitary};
        case FamilyTag::B: return {Relation::Orthogonal};
        case FamilyTag::BI: return {Relation::Orthogonal, Relation::IndefiniteUnitary};
        case FamilyTag::BII: return {Relation::Orthogonal, Relation::Quaternionic};
        case FamilyTag::C: return {Relation::Symplectic};
        case FamilyTag::CI: return {Relation::Symplectic, Relation::Real};
        case FamilyTag::CII: return {Relation::Symplectic, Relation::IndefiniteUnitary};
    }
    return {};
}

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::Orthogonal: return "x = -J x* J^-1";
        case Relation::Symplectic: return "x = -Jt x* Jt^-1";
        case Relation::Real: return "x J = J x";
        case Relation::Quaternionic: return "x Jt = Jt x";
        case Relation::IndefiniteUnitary: return "x* V = -V x";
    }
    return "";
}

const char* group_relation_name(Relation r) {
    switch (r) {
        case Relation::Orthogonal: return "g^-1 = J g* J^-1";
        case Relation::Symplectic: return "g^-1 = Jt g* Jt^-1";
        case Relation::Real: return "g J = J g";
        case Relation::Quaternionic: return "g Jt = Jt g";
        case Relation::IndefiniteUnitary: return "g* V g = V";
    }
    return "";
}

const ComplexMatrix& require_op(const std::optional<ComplexMatrix>& m, const char* name) {
    if (!m) throw std::logic_error(std::string("structure context lacks ") + name);
    return *m;
}

// Linear part of the involution sigma whose fixed points are the relation's
// solutions. Orthogonal linear parts satisfy M^-1 = M^T.
ComplexMatrix involution(const StructureContext& ctx, Relation r, const ComplexMatrix& x) {
    switch (r) {
        case Relation::Orthogonal: {
            const auto& m = require_op(ctx.J, "J");
            return -(m * transpose(x) * transpose(m));
        }
        case Relation::Symplectic: {
            const auto& m = require_op(ctx.Jt, "Jt");
            return -(m * transpose(x) * transpose(m));
        }
        case Relation::Real: {
            const auto& m = require_op(ctx.J, "J");
            return m * conj(x) * transpose(m);
        }
        case Relation::Quaternionic: {
            const auto& m = require_op(ctx.Jt, "Jt");
            return m * conj(x) * transpose(m);
        }
        case Relation::IndefiniteUnitary: {
            const auto& v = require_op(ctx.V, "V");
            return -(v * adjoint(x) * v);
        }
    }
    return x;
}

double algebra_residual(const StructureContext& ctx, Relation r, const ComplexMatrix& x) {
    switch (r) {
        case Relation::Orthogonal:
        case Relation::Symplectic: return frobenius_norm(x - involution(ctx, r, x));
        case Relation::Real: {
            const auto& m = require_op(ctx.J, "J");
            return frobenius_norm(x * m - m * conj(x));
        }
        case Relation::Quaternionic: {
            const auto& m = require_op(ctx.Jt, "Jt");
            return frobenius_norm(x * m - m * conj(x));
        }
        case Relation::IndefiniteUnitary: {
            const auto& v = require_op(ctx.V, "V");
            return frobenius_norm(adjoint(x) * v + v * x);
        }
    }
    return 0.0;
}

double group_residual(const StructureContext& ctx, Relation r, const ComplexMatrix& g) {
    const ComplexMatrix id = ComplexMatrix::identity(g.rows());
    switch (r) {
        case Relation::Orthogonal: {
            const auto& m = require_op(ctx.J, "J");
            return frobenius_norm(g * (m * transpose(g) * transpose(m)) - id);
        }
        case Relation::Symplectic: {
            const auto& m = require_op(ctx.Jt, "Jt");
            return frobenius_norm(g * (m * transpose(g) * transpose(m)) - id);
        }
        case Relation::Real: {
            const auto& m = require_op(ctx.J, "J");
            return frobenius_norm(g * m - m * conj(g));
        }
        case Relation::Quaternionic: {
            const auto& m = require_op(ctx.Jt, "Jt");
            return frobenius_norm(g * m - m * conj(g));
        }
        case Relation::IndefiniteUnitary: {
            const auto& v = require_op(ctx.V, "V");
            return frobenius_norm(adjoint(g) * v * g - v);
        }
    }
    return 0.0;
}

ComplexMatrix signature(std::size_t n) {
    ComplexMatrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
    return v;
}

// Rotation [[0,-1],[1,0]] on each pair (first, second): e_first -> e_second,
// e_second -> -e_first.
void add_rotation(ComplexMatrix& m, std::size_t first, std::size_t second) {
    m(second, first) = 1.0;
    m(first, second) = -1.0;
}

ComplexMatrix pair_rotation(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t p = 0; p + 1 < n; p += 2) add_rotation(m, p, p + 1);
    return m;
}

ComplexMatrix quad_rotation(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t q = 0; q + 3 < n; q += 4) {
        add_rotation(m, q, q + 2);
        add_rotation(m, q + 1, q + 3);
    }
    return m;
}

// xi_(+/-l) = (x_l +/- i x_{-l}) / sqrt2 on each pair.
ComplexMatrix complexified_pair_basis(std::size_t n) {
    ComplexMatrix b(n, n);
    for (std::size_t p = 0; p + 1 < n; p += 2) {
        b(p, p) = kInvSqrt2;
        b(p + 1, p) = cplx(0.0, kInvSqrt2);
        b(p, p + 1) = kInvSqrt2;
        b(p + 1, p + 1) = cplx(0.0, -kInvSqrt2);
    }
    return b;
}

// xi_l = e_l, xi_{-l} = -Jt xi_l = -e_{-l} for the pair rotation.
ComplexMatrix quaternionic_pair_basis(std::size_t n) {
    ComplexMatrix b(n, n);
    for (std::size_t p = 0; p + 1 < n; p += 2) {
        b(p, p) = 1.0;
        b(p + 1, p + 1) = -1.0;
    }
    return b;
}

// f_l^(+/-) = (e_l^+ +/- e_l^-) / sqrt2 on each pair.
ComplexMatrix signature_pair_basis(std::size_t n) {
    ComplexMatrix b(n, n);
    for (std::size_t p = 0; p + 1 < n; p += 2) {
        b(p, p) = kInvSqrt2;
        b(p + 1, p) = kInvSqrt2;
        b(p, p + 1) = kInvSqrt2;
        b(p + 1, p + 1) = -kInvSqrt2;
    }
    return b;
}

// e_l^eps = std, e_{-l}^eps = -std, then f^(+/-) = (e^+ +/- e^-) / sqrt2.
ComplexMatrix cii_basis(std::size_t n) {
    ComplexMatrix b(n, n);
    for (std::size_t q = 0; q + 3 < n; q += 4) {
        for (std::size_t half = 0; half < 2; ++half) {
            const std::size_t c = q + 2 * half;
            const double s = half == 0 ? 1.0 : -1.0;
            b(c, c) = s * kInvSqrt2;
            b(c + 1, c) = s * kInvSqrt2;
            b(c, c + 1) = s * kInvSqrt2;
            b(c + 1, c + 1) = -s * kInvSqrt2;
        }
    }
    return b;
}

// Op maps column l <-> column -l of each pair with the given signs.
void add_pair_relations(std::vector<StructureContext::BasisRelation>& rel, Op op, std::size_t n, double forward,
                        double backward) {
    for (std::size_t p = 0; p + 1 < n; p += 2) {
        rel.push_back({op, p, p + 1, forward});
        rel.push_back({op, p + 1, p, backward});
    }
}

void add_fixed_relations(std::vector<StructureContext::BasisRelation>& rel, Op op, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) rel.push_back({op, i, i, 1.0});
}

void verify_context(StructureContext& ctx) {
    const std::size_t n = ctx.dim;
    const ComplexMatrix id = ComplexMatrix::identity(n);
    auto record = [&](std::string name, double value) {
        ctx.invariants.push_back({std::move(name), value, kStructureTol});
    };
    if (ctx.J) {
        record("J^2 = 1", frobenius_norm(*ctx.J * *ctx.J - id));
        record("J isometric", unitarity_defect(*ctx.J));
    }
    if (ctx.Jt) {
        record("Jt^2 = -1", frobenius_norm(*ctx.Jt * *ctx.Jt + id));
        record("Jt isometric", unitarity_defect(*ctx.Jt));
    }
    if (ctx.V) {
        record("V^2 = 1", frobenius_norm(*ctx.V * *ctx.V - id));
        record("V = V*", hermitian_defect(*ctx.V));
    }
    // Both antilinear parts are real, so J Jt = Jt J reduces to M Mt = Mt M.
    if (ctx.J && ctx.Jt) record("J Jt = Jt J", frobenius_norm(*ctx.J * *ctx.Jt - *ctx.Jt * *ctx.J));
    if (ctx.J && ctx.V) record("J(H+/-) in H+/-", frobenius_norm(*ctx.J * *ctx.V - *ctx.V * *ctx.J));
    if (ctx.Jt && ctx.V) record("Jt(H+/-) in H+/-", frobenius_norm(*ctx.Jt * *ctx.V - *ctx.V * *ctx.Jt));
    record("adapted basis unitary", unitarity_defect(ctx.adapted_basis));

    double worst[3] = {0.0, 0.0, 0.0};
    bool seen[3] = {false, false, false};
    for (const auto& r : ctx.basis_relations) {
        const std::vector<cplx> src = ctx.adapted_basis.column(r.from);
        const std::vector<cplx> image = apply_operator(ctx, r.op, src);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) err += std::norm(image[i] - r.sign * ctx.adapted_basis(i, r.to));
        const auto idx = static_cast<std::size_t>(r.op);
        worst[idx] = std::max(worst[idx], std::sqrt(err));
        seen[idx] = true;
    }
    for (std::size_t idx = 0; idx < 3; ++idx)
        if (seen[idx])
            record(std::string("basis relations for ") + to_string(static_cast<Op>(idx)), worst[idx]);

    for (const auto& inv : ctx.invariants) {
        if (!inv.ok()) {
            std::ostringstream msg;
            msg << to_string(ctx.family) << " context invariant '" << inv.name << "' failed with residual "
                << inv.value;
            throw std::logic_error(msg.str());
        }
    }
}

bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-8 * (1.0 + scale); }

void require_count(const StructureContext& ctx, std::span<const double> coeffs) {
    const std::size_t want = coefficient_count(ctx);
    if (coeffs.size() != want) {
        std::ostringstream msg;
        msg << to_string(ctx.family) << " at dimension " << ctx.dim << " takes " << want << " coefficients, got "
            << coeffs.size();
        throw Error(ErrorKind::ConstraintViolation, msg.str());
    }
    for (double c : coeffs)
        if (!std::isfinite(c)) throw Error(ErrorKind::ConstraintViolation, "coefficients must be finite");
}

double max_abs_value(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void require_mutually_different(std::span<const double> c, const char* rule) {
    const double scale = max_abs_value(c);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (close(c[i], c[j], scale)) {
                std::ostringstream msg;
                msg << rule << " (coefficients " << i << " and " << j << " coincide)";
                throw Error(ErrorKind::ConstraintViolation, msg.str());
            }
}

// c_j != +/- c_l for j != l, and c_l != 0.
void require_distinct_up_to_sign(std::span<const double> c, const char* rule) {
    const double scale = max_abs_value(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (close(c[i], 0.0, scale)) {
            std::ostringstream msg;
            msg << rule << " (coefficient " << i << " is zero)";
            throw Error(ErrorKind::ConstraintViolation, msg.str());
        }
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (close(std::abs(c[i]), std::abs(c[j]), scale)) {
                std::ostringstream msg;
                msg << rule << " (coefficients " << i << " and " << j << " agree up to sign)";
                throw Error(ErrorKind::ConstraintViolation, msg.str());
            }
    }
}

}  // namespace

const char* to_string(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::A: return "A";
        case FamilyTag::AI: return "AI";
        case FamilyTag::AII: return "AII";
        case FamilyTag::AIII: return "AIII";
        case FamilyTag::B: return "B";
        case FamilyTag::BI: return "BI";
        case FamilyTag::BII: return "BII";
        case FamilyTag::C: return "C";
        case FamilyTag::CI: return "CI";
        case FamilyTag::CII: return "CII";
    }
    return "?";
}

FamilyTag parse_family(const std::string& token) {
    std::string lower = token;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    for (FamilyTag f : kAllFamilies) {
        std::string name = to_string(f);
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (name == lower) return f;
    }
    throw Error(ErrorKind::InvalidInput, "unknown family '" + token + "' (expected one of a, ai, aii, aiii, b, bi, "
                                         "bii, c, ci, cii)");
}

std::optional<std::string> dimension_violation(FamilyTag tag, std::size_t n) {
    if (n < 2) return "dimension must be at least 2";
    switch (tag) {
        case FamilyTag::A:
        case FamilyTag::AI: return std::nullopt;
        case FamilyTag::BII:
        case FamilyTag::CII:
            if (n % 4 != 0) return "dimension must be divisible by 4";
            return std::nullopt;
        default:
            if (n % 2 != 0) return "dimension must be even";
            return std::nullopt;
    }
}

std::size_t minimal_dimension(FamilyTag tag) {
    return (tag == FamilyTag::BII || tag == FamilyTag::CII) ? 4 : 2;
}

void MembershipReport::add(std::string name, double value, double bound) {
    residuals.push_back({std::move(name), value, bound});
    if (!(value <= bound)) passed = false;
}

void MembershipReport::note(std::string name, double value) {
    diagnostics.push_back({std::move(name), value, std::numeric_limits<double>::infinity()});
}

const Residual* MembershipReport::find(const std::string& name) const {
    for (const auto& r : residuals)
        if (r.name == name) return &r;
    for (const auto& r : diagnostics)
        if (r.name == name) return &r;
    return nullptr;
}

const char* to_string(StructureContext::Operator op) {
    switch (op) {
        case Op::J: return "J";
        case Op::Jt: return "Jt";
        case Op::V: return "V";
    }
    return "?";
}

StructureContext structure_context(FamilyTag family, std::size_t n) {
    if (auto why = dimension_violation(family, n)) {
        std::ostringstream msg;
        msg << to_string(family) << " at dimension " << n << ": " << *why;
        throw Error(ErrorKind::BadDimension, msg.str());
    }
    StructureContext ctx{family, n, std::nullopt, std::nullopt, std::nullopt, ComplexMatrix::identity(n), {}, {}};
    auto& rel = ctx.basis_relations;
    switch (family) {
        case FamilyTag::A: break;
        case FamilyTag::AI:
            ctx.J = ComplexMatrix::identity(n);
            add_fixed_relations(rel, Op::J, n);
            break;
        case FamilyTag::AII:
        case FamilyTag::C:
            ctx.Jt = pair_rotation(n);
            ctx.adapted_basis = quaternionic_pair_basis(n);
            // Jt xi_l = -xi_{-l}, Jt xi_{-l} = xi_l
            add_pair_relations(rel, Op::Jt, n, -1.0, 1.0);
            break;
        case FamilyTag::CI:
            ctx.J = ComplexMatrix::identity(n);
            ctx.Jt = pair_rotation(n);
            ctx.adapted_basis = quaternionic_pair_basis(n);
            add_pair_relations(rel, Op::Jt, n, -1.0, 1.0);
            add_fixed_relations(rel, Op::J, n);
            break;
        case FamilyTag::AIII:
            ctx.V = signature(n);
            ctx.adapted_basis = signature_pair_basis(n);
            add_pair_relations(rel, Op::V, n, 1.0, 1.0);
            break;
        case FamilyTag::B:
            ctx.J = ComplexMatrix::identity(n);
            ctx.adapted_basis = complexified_pair_basis(n);
            add_pair_relations(rel, Op::J, n, 1.0, 1.0);
            break;
        case FamilyTag::BI:
            ctx.J = ComplexMatrix::identity(n);
            ctx.V = signature(n);
            ctx.adapted_basis = complexified_pair_basis(n);
            add_pair_relations(rel, Op::J, n, 1.0, 1.0);
            add_pair_relations(rel, Op::V, n, 1.0, 1.0);
            break;
        case FamilyTag::BII:
            ctx.J = ComplexMatrix::identity(n);
            ctx.Jt = quad_rotation(n);
            ctx.adapted_basis = complexified_pair_basis(n);
            add_pair_relations(rel, Op::J, n, 1.0, 1.0);
            // Columns per group: xi_{2s-1}, xi_{-(2s-1)}, xi_{2s}, xi_{-2s}.
            // Jt xi_{+/-(2s-1)} = xi_{-/+2s}, Jt xi_{+/-2s} = -xi_{-/+(2s-1)}.
            for (std::size_t q = 0; q + 3 < n; q += 4) {
                rel.push_back({Op::Jt, q, q + 3, 1.0});
                rel.push_back({Op::Jt, q + 1, q + 2, 1.0});
                rel.push_back({Op::Jt, q + 2, q + 1, -1.0});
                rel.push_back({Op::Jt, q + 3, q, -1.0});
            }
            break;
        case FamilyTag::CII:
            ctx.Jt = quad_rotation(n);
            ctx.V = signature(n);
            ctx.adapted_basis = cii_basis(n);
            // Columns per group: f_l^+, f_l^-, f_{-l}^+, f_{-l}^-.
            // Jt f_l^eps = -f_{-l}^eps, Jt f_{-l}^eps = f_l^eps, V f^(+/-) = f^(-/+).
            for (std::size_t q = 0; q + 3 < n; q += 4) {
                rel.push_back({Op::Jt, q, q + 2, -1.0});
                rel.push_back({Op::Jt, q + 1, q + 3, -1.0});
                rel.push_back({Op::Jt, q + 2, q, 1.0});
                rel.push_back({Op::Jt, q + 3, q + 1, 1.0});
            }
            add_pair_relations(rel, Op::V, n, 1.0, 1.0);
            break;
    }
    verify_context(ctx);
    return ctx;
}

std::vector<cplx> apply_operator(const StructureContext& ctx, StructureContext::Operator op,
                                 std::span<const cplx> v) {
    const ComplexMatrix* m = nullptr;
    switch (op) {
        case Op::J: m = &require_op(ctx.J, "J"); break;
        case Op::Jt: m = &require_op(ctx.Jt, "Jt"); break;
        case Op::V: m = &require_op(ctx.V, "V"); break;
    }
    const bool antilinear = op != Op::V;
    std::vector<cplx> out(ctx.dim);
    for (std::size_t i = 0; i < ctx.dim; ++i) {
        cplx acc{};
        for (std::size_t j = 0; j < ctx.dim; ++j) acc += (*m)(i, j) * (antilinear ? std::conj(v[j]) : v[j]);
        out[i] = acc;
    }
    return out;
}

MembershipReport algebra_membership(const StructureContext& ctx, const ComplexMatrix& x, double tol) {
    if (x.rows() != ctx.dim || x.cols() != ctx.dim) {
        std::ostringstream msg;
        msg << "algebra_membership: expected " << ctx.dim << "x" << ctx.dim << ", got " << x.rows() << "x" << x.cols();
        throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
    MembershipReport report;
    const double bound = tol * (1.0 + frobenius_norm(x));
    for (Relation r : relations_of(ctx.family)) report.add(relation_name(r), algebra_residual(ctx, r, x), bound);
    return report;
}

MembershipReport group_membership(const StructureContext& ctx, const ComplexMatrix& g, double tol) {
    if (g.rows() != ctx.dim || g.cols() != ctx.dim) {
        std::ostringstream msg;
        msg << "group_membership: expected " << ctx.dim << "x" << ctx.dim << ", got " << g.rows() << "x" << g.cols();
        throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
    (void)inverse(g);  // throws Singular
    MembershipReport report;
    const double bound = tol * (1.0 + frobenius_norm(g));
    for (Relation r : relations_of(ctx.family)) report.add(group_relation_name(r), group_residual(ctx, r, g), bound);
    // Every finite matrix is an ideal perturbation of 1; logged only.
    report.note("||g - 1||_F", frobenius_norm(g - ComplexMatrix::identity(ctx.dim)));
    return report;
}

std::size_t coefficient_count(const StructureContext& ctx) {
    switch (ctx.family) {
        case FamilyTag::A:
        case FamilyTag::AI: return ctx.dim;
        case FamilyTag::BII:
        case FamilyTag::CII: return ctx.dim / 4;
        default: return ctx.dim / 2;
    }
}

std::vector<double> expand_coefficients(const StructureContext& ctx, std::span<const double> coeffs) {
    require_count(ctx, coeffs);
    std::vector<double> alpha;
    alpha.reserve(ctx.dim);
    switch (ctx.family) {
        case FamilyTag::A:
        case FamilyTag::AI:
            require_mutually_different(coeffs, "alpha_l must be mutually different");
            alpha.assign(coeffs.begin(), coeffs.end());
            break;
        case FamilyTag::AII:
            require_mutually_different(coeffs, "alpha_l (l >= 1) must be mutually different");
            for (double c : coeffs) alpha.insert(alpha.end(), {c, c});  // alpha_{-l} = alpha_l
            break;
        case FamilyTag::AIII:
            require_distinct_up_to_sign(coeffs, "lambda_j != +/- lambda_l and lambda_l != 0");
            for (double c : coeffs) alpha.insert(alpha.end(), {c, -c});  // f^+ -> lambda, f^- -> -lambda
            break;
        case FamilyTag::B:
        case FamilyTag::BI:
        case FamilyTag::C:
        case FamilyTag::CI:
            require_distinct_up_to_sign(coeffs, "alpha_{-l} = -alpha_l with all alpha mutually different");
            for (double c : coeffs) alpha.insert(alpha.end(), {c, -c});
            break;
        case FamilyTag::BII:
            require_distinct_up_to_sign(coeffs, "alpha_{2s-1} != +/- alpha_{2t-1} and alpha_{2s-1} != 0");
            // alpha_{2s-1} = a, alpha_{-(2s-1)} = -a, alpha_{2s} = -a, alpha_{-2s} = a
            for (double c : coeffs) alpha.insert(alpha.end(), {c, -c, -c, c});
            break;
        case FamilyTag::CII:
            require_distinct_up_to_sign(coeffs, "lambda_{-l} = -lambda_l with all lambda mutually different");
            // f_l^+ -> lambda_l, f_l^- -> -lambda_l, f_{-l}^+ -> -lambda_l, f_{-l}^- -> lambda_l
            for (double c : coeffs) alpha.insert(alpha.end(), {c, -c, -c, c});
            break;
    }
    return alpha;
}

std::vector<double> default_coefficients(const StructureContext& ctx) {
    const std::size_t k = coefficient_count(ctx);
    std::vector<double> c(k);
    for (std::size_t p = 0; p < k; ++p) c[p] = static_cast<double>(k - p);
    return c;
}

ComplexMatrix regular_element(const StructureContext& ctx, std::span<const double> coeffs, double check_tol) {
    const std::vector<double> alpha = expand_coefficients(ctx, coeffs);
    const ComplexMatrix& b = ctx.adapted_basis;
    ComplexMatrix scaled = b;
    for (std::size_t i = 0; i < ctx.dim; ++i)
        for (std::size_t j = 0; j < ctx.dim; ++j) scaled(i, j) *= alpha[j];
    ComplexMatrix x0 = scaled * adjoint(b);
    x0 = 0.5 * (x0 + adjoint(x0));
    const MembershipReport report = algebra_membership(ctx, x0, check_tol);
    if (!report.passed) throw std::logic_error("regular_element: constructed X0 is not in the Lie algebra");
    return x0;
}

StructureContext::Operator sign_rule_operator(const StructureContext& ctx) {
    switch (ctx.family) {
        case FamilyTag::A:
        case FamilyTag::AI:
            throw Error(ErrorKind::NotApplicable,
                        std::string("no basis-pairing operator for family ") + to_string(ctx.family));
        case FamilyTag::AII:
        case FamilyTag::C:
        case FamilyTag::CI:
        case FamilyTag::CII: return Op::Jt;
        case FamilyTag::AIII: return Op::V;
        case FamilyTag::B:
        case FamilyTag::BI:
        case FamilyTag::BII: return Op::J;
    }
    return Op::J;
}

int sign_rule_epsilon(const StructureContext& ctx) {
    (void)sign_rule_operator(ctx);
    return ctx.family == FamilyTag::AII ? 1 : -1;
}

bool coefficient_sign_rule(const StructureContext& ctx, std::span<const double> alpha, int epsilon, double tol) {
    if (alpha.size() != ctx.dim) throw Error(ErrorKind::DimensionMismatch, "coefficient_sign_rule: wrong length");
    const Op z = sign_rule_operator(ctx);
    const double bound = tol * (1.0 + max_abs_value(alpha));
    for (const auto& r : ctx.basis_relations) {
        if (r.op != z) continue;
        if (std::abs(alpha[r.to] - epsilon * alpha[r.from]) > bound) return false;
    }
    return true;
}

bool verify_sign_rule(const StructureContext& ctx, const ComplexMatrix& x0, int epsilon) {
    if (x0.rows() != ctx.dim || x0.cols() != ctx.dim)
        throw Error(ErrorKind::DimensionMismatch, "verify_sign_rule: dimension mismatch");
    if (epsilon != 1 && epsilon != -1) throw Error(ErrorKind::InvalidInput, "epsilon must be +1 or -1");
    const Op z = sign_rule_operator(ctx);
    const double norm = frobenius_norm(x0);

    const ComplexMatrix in_basis = adjoint(ctx.adapted_basis) * x0 * ctx.adapted_basis;
    std::vector<double> alpha(ctx.dim);
    double off_diag = 0.0;
    for (std::size_t i = 0; i < ctx.dim; ++i) {
        alpha[i] = in_basis(i, i).real();
        for (std::size_t j = 0; j < ctx.dim; ++j)
            if (i != j) off_diag += std::norm(in_basis(i, j));
    }
    if (std::sqrt(off_diag) > 1e-10 * (1.0 + norm))
        throw Error(ErrorKind::InvalidInput, "verify_sign_rule: x0 is not diagonal in the adapted basis");

    ComplexMatrix conjugated;
    if (z == Op::V) {
        const auto& v = require_op(ctx.V, "V");
        conjugated = v * x0 * v;
    } else {
        const auto& m = require_op(z == Op::J ? ctx.J : ctx.Jt, z == Op::J ? "J" : "Jt");
        conjugated = m * conj(x0) * transpose(m);
    }
    const bool matrix_form = frobenius_norm(x0 - static_cast<double>(epsilon) * conjugated) <= 1e-10 * (1.0 + norm);
    const bool coefficient_form = coefficient_sign_rule(ctx, alpha, epsilon, 1e-10);
    if (matrix_form != coefficient_form)
        throw std::logic_error("verify_sign_rule: matrix and coefficient forms disagree");
    return matrix_form;
}

ComplexMatrix sample_algebra(const StructureContext& ctx, std::uint64_t seed) {
    ComplexMatrix x = random_ginibre(ctx.dim, seed);
    // The involutions of a family commute, so composing the averaging
    // projections averages over the whole group they generate.
    for (Relation r : relations_of(ctx.family)) x = 0.5 * (x + involution(ctx, r, x));
    if (!algebra_membership(ctx, x, 1e-10).passed)
        throw std::logic_error("sample_algebra: averaged sample failed membership");
    return x;
}

ComplexMatrix sample_group(const StructureContext& ctx, std::uint64_t seed, double scale) {
    if (!(scale >= 0.0) || !std::isfinite(scale)) throw Error(ErrorKind::InvalidInput, "scale must be >= 0");
    return matrix_exp(scale * sample_algebra(ctx, seed));
}

}  // namespace iwasawa
