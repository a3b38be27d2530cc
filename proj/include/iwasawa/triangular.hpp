#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "iwasawa/matrix.hpp"
#include "iwasawa/spectral_frame.hpp"

namespace iwasawa {

/// Components of a Lie-algebra element under the triadic split, in original
/// coordinates: skew-Hermitian part, Hermitian part commuting with X0, and
/// strictly upper block-triangular part.
struct TriadicParts {
    ComplexMatrix k_part;
    ComplexMatrix a_part;
    ComplexMatrix n_part;
};

// Block masks in frame coordinates. These operate on matrices already
// expressed in the frame's eigenbasis.
ComplexMatrix keep_diagonal_blocks(const SpectralFrame& frame, const ComplexMatrix& frame_coords);
ComplexMatrix keep_upper_blocks(const SpectralFrame& frame, const ComplexMatrix& frame_coords);
ComplexMatrix keep_strict_upper_blocks(const SpectralFrame& frame, const ComplexMatrix& frame_coords);

/// D(z) = sum over clusters of E z E: the block-diagonal compression.
ComplexMatrix diag_expectation(const SpectralFrame& frame, const ComplexMatrix& z);

/// T(z): blocks (i, j) with i <= j in frame order, diagonal blocks included.
ComplexMatrix triangular_projection(const SpectralFrame& frame, const ComplexMatrix& z);

/// (T - D)(z): strictly upper blocks only. This is the projection onto the n-space.
ComplexMatrix strict_upper_projection(const SpectralFrame& frame, const ComplexMatrix& z);

/// k = (1-T)X - ((1-T)X)* + (DX - (DX)*)/2
/// a = (DX + (DX)*)/2
/// n = (T-D)X + ((1-T)X)*
TriadicParts triadic_decompose(const SpectralFrame& frame, const ComplexMatrix& x);

/// W[j, l] = 1/(j - l) with 1-based indices, zero diagonal. Real and skew.
ComplexMatrix hilbert_witness(std::size_t n);

struct GrowthRow {
    std::size_t n;
    double op_norm_w;
    double op_norm_tw;
    double ratio_op;
    double s2_norm_w;
    double s2_norm_tw;
    double ratio_s2;
};

/// Largest size for which operator norms come from a dense SVD; larger sizes
/// use power iteration to 1e-6 relative.
inline constexpr std::size_t kDenseNormLimit = 1024;

/// Operator-norm and Hilbert-Schmidt growth of triangular truncation applied to
/// the skew Hilbert matrix, with X0 = diag(n, ..., 1) in the standard basis.
/// Sizes are evaluated independently, in parallel when workers are available.
std::vector<GrowthRow> truncation_growth(std::span<const std::size_t> sizes);

inline const std::vector<std::size_t> kDefaultGrowthSizes{16, 32, 64, 128, 256, 512, 1024};

}  // namespace iwasawa
