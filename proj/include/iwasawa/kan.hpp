#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iwasawa/families.hpp"
#include "iwasawa/matrix.hpp"
#include "iwasawa/spectral_frame.hpp"

namespace iwasawa {

/// g = k a n relative to a frame. In frame coordinates a is block diagonal
/// positive definite (diagonal for a Regular frame) and n - 1 is strictly upper
/// block triangular.
struct KanFactors {
    ComplexMatrix k;
    ComplexMatrix a;
    ComplexMatrix n;
    double residual_recon;    // ||k a n - g||_F
    double residual_unitary;  // ||k* k - 1||_F
};

/// a = (1 + r)* d (1 + r) with d block diagonal positive and r strictly upper
/// block triangular in frame coordinates. Stored in original coordinates.
struct NestFactors {
    ComplexMatrix d;
    ComplexMatrix r;
};

/// Block LDL* in frame coordinates. Throws NotPositive unless a is Hermitian
/// with smallest eigenvalue above 1e-12 ||a||.
NestFactors nest_factor(const SpectralFrame& frame, const ComplexMatrix& a);

/// Block Gram-Schmidt with reorthogonalisation on the columns of g in frame
/// coordinates, then a polar split of each diagonal block so that the diagonal
/// blocks of R are positive definite. Throws FrameMismatch when the sizes
/// differ and Singular when a pivot falls below 1e-13 ||g||_F.
KanFactors kan_factor(const SpectralFrame& frame, const ComplexMatrix& g);

struct VerifyTolerances {
    double residual = 1e-10;
    double membership = 1e-8;
};

/// Reconstruction, unitarity, positivity and unipotence residuals. With a
/// structure context, also the group membership of k, a and n separately.
MembershipReport verify_kan(const SpectralFrame& frame, const ComplexMatrix& g, const KanFactors& f,
                            const std::optional<StructureContext>& ctx = std::nullopt,
                            VerifyTolerances tol = {});

/// Worst residual seen under each name, judged by value / bound.
struct ClosureSummary {
    FamilyTag family;
    std::size_t dim;
    std::size_t trials;
    RegularityClass regularity;
    std::vector<Residual> worst;
    bool passed;

    /// Largest value recorded under a name; throws std::out_of_range if absent.
    double max_value(const std::string& name) const;
};

/// Trials of sample_group -> kan_factor -> verify_kan against the frame of
/// regular_element(default_coefficients). Each a n is also refactored as
/// n' a' with a' its block diagonal and n' = a n a'^-1.
/// Trial t draws from trial_seed(seed, t) at exponent scale 1/sqrt(n).
ClosureSummary closure_study(FamilyTag family, std::size_t n, std::size_t trials, std::uint64_t seed);

struct CurvePoint {
    std::size_t rank;
    double err_k;
    double err_a;
    double err_n;
};

/// Compresses g to the leading r adapted-basis vectors as P g P + (1 - P),
/// factors it against the matching compression of regular_element(default
/// coefficients), and reports the Schatten-p distance of each embedded factor
/// from the full factor. Ranks must increase and end at the dimension.
/// Throws SingularCompression naming the first rank whose compression is not
/// invertible.
std::vector<CurvePoint> truncation_convergence(const StructureContext& ctx, const ComplexMatrix& g,
                                               std::span<const std::size_t> ranks, SchattenP p);

}  // namespace iwasawa
