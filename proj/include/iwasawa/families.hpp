#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iwasawa/matrix.hpp"

namespace iwasawa {

/// The ten classical families: complex A, B, C and real AI ... CII.
enum class FamilyTag { A, AI, AII, AIII, B, BI, BII, C, CI, CII };

inline constexpr FamilyTag kAllFamilies[] = {FamilyTag::A,  FamilyTag::AI,  FamilyTag::AII, FamilyTag::AIII,
                                             FamilyTag::B,  FamilyTag::BI,  FamilyTag::BII, FamilyTag::C,
                                             FamilyTag::CI, FamilyTag::CII};

const char* to_string(FamilyTag tag);
/// Case-insensitive: a, ai, aii, aiii, b, bi, bii, c, ci, cii.
FamilyTag parse_family(const std::string& token);

/// Violated dimension constraint as a message, or nullopt when n is valid.
/// A, AI: n >= 2; AII, AIII, B, BI, C, CI: n even; BII, CII: n divisible by 4.
std::optional<std::string> dimension_violation(FamilyTag tag, std::size_t n);
std::size_t minimal_dimension(FamilyTag tag);

/// A residual with the bound it is judged against.
struct Residual {
    std::string name;
    double value;
    double bound;
    bool ok() const { return value <= bound; }
};

struct MembershipReport {
    std::vector<Residual> residuals;    // gating
    std::vector<Residual> diagnostics;  // logged only
    bool passed = true;

    void add(std::string name, double value, double bound);
    void note(std::string name, double value);
    const Residual* find(const std::string& name) const;
};

/// Structure operators act on the standard basis of C^n.
///
/// Antilinear operators are stored by their real orthogonal linear part M and
/// act as x -> M conj(x): J (conjugation, M^2 = 1) and Jt (anti-conjugation,
/// M^2 = -1). V is the signature diag(+1, -1, +1, -1, ...).
///
/// Index layout: the paired indices l, -l (l = 1, 2, ...) occupy columns
/// 2(l-1) and 2(l-1)+1. For CII the four vectors e_l^+, e_l^-, e_{-l}^+,
/// e_{-l}^- occupy columns 4(l-1) .. 4(l-1)+3, and the adapted basis holds
/// f_l^+, f_l^-, f_{-l}^+, f_{-l}^- in the same positions.
///
///   A     no operators, adapted basis = identity
///   AI    J = conj, basis = identity (J fixes every basis vector)
///   AII   Jt = conj followed by the pair rotation [[0,-1],[1,0]];
///         basis xi_l = e, xi_{-l} = -Jt xi_l
///   AIII  V; f_l^(+/-) = (e_l^+ +/- e_l^-)/sqrt2
///   B     J = conj; xi_(+/-l) = (x_l +/- i x_{-l})/sqrt2
///   BI    J = conj and V, same basis as B (J xi_l = V xi_l = xi_{-l})
///   BII   J = conj and Jt rotating (2s-1) -> 2s within groups of four, basis as B
///   C     Jt as in AII, same basis
///   CI    Jt as in C plus J = conj (J fixes the basis)
///   CII   Jt rotating e_l^eps -> e_{-l}^eps, and V
struct StructureContext {
    enum class Operator { J, Jt, V };

    /// op(basis column `from`) = sign * basis column `to`.
    struct BasisRelation {
        Operator op;
        std::size_t from;
        std::size_t to;
        double sign;
    };

    FamilyTag family;
    std::size_t dim;
    std::optional<ComplexMatrix> J;
    std::optional<ComplexMatrix> Jt;
    std::optional<ComplexMatrix> V;
    ComplexMatrix adapted_basis;
    std::vector<BasisRelation> basis_relations;
    /// Construction invariants, each verified at 1e-12.
    std::vector<Residual> invariants;
};

const char* to_string(StructureContext::Operator op);

StructureContext structure_context(FamilyTag family, std::size_t n);

/// Applies a structure operator to a vector (antilinear for J and Jt).
std::vector<cplx> apply_operator(const StructureContext& ctx, StructureContext::Operator op,
                                 std::span<const cplx> v);

MembershipReport algebra_membership(const StructureContext& ctx, const ComplexMatrix& x, double tol);
MembershipReport group_membership(const StructureContext& ctx, const ComplexMatrix& g, double tol);

/// Number of free coefficients regular_element expects.
std::size_t coefficient_count(const StructureContext& ctx);

/// Eigenvalue attached to each adapted-basis column after applying the
/// family's sign and pairing rules. Throws ConstraintViolation naming the rule.
std::vector<double> expand_coefficients(const StructureContext& ctx, std::span<const double> coeffs);

/// k, k-1, ..., 1 for k = coefficient_count(ctx); satisfies every constraint.
std::vector<double> default_coefficients(const StructureContext& ctx);

/// X0 = sum_l alpha_l (. | xi_l) xi_l over the adapted basis.
ComplexMatrix regular_element(const StructureContext& ctx, std::span<const double> coeffs, double check_tol = 1e-10);

/// The operator Z and sign epsilon under which the family's regular elements
/// satisfy X0 = eps Z X0 Z^-1. Throws NotApplicable for A and AI.
StructureContext::Operator sign_rule_operator(const StructureContext& ctx);
/// +1 for AII, -1 for every other family with a sign rule.
int sign_rule_epsilon(const StructureContext& ctx);

/// Coefficient form of the sign rule: alpha_{pair(i)} = eps alpha_i for every
/// Z-pair of adapted-basis columns.
bool coefficient_sign_rule(const StructureContext& ctx, std::span<const double> alpha, int epsilon,
                           double tol = 1e-10);

/// Matrix form: x0 = eps Z x0 Z^-1 to 1e-10 (1 + ||x0||_F). x0 must be diagonal
/// in the adapted basis; the coefficient form is evaluated as a cross-check and
/// a disagreement raises std::logic_error.
bool verify_sign_rule(const StructureContext& ctx, const ComplexMatrix& x0, int epsilon);

/// Ginibre draw projected onto the family's Lie algebra by averaging over the
/// finite group generated by its defining involutions.
ComplexMatrix sample_algebra(const StructureContext& ctx, std::uint64_t seed);

/// matrix_exp(scale * sample_algebra(ctx, seed)).
ComplexMatrix sample_group(const StructureContext& ctx, std::uint64_t seed, double scale);

}  // namespace iwasawa
