#include "iwasawa/triangular.hpp"

#include <cmath>
#include <sstream>

#include "iwasawa/linalg.hpp"
#include "iwasawa/parallel.hpp"

namespace iwasawa {

namespace {

template <typename Keep>
ComplexMatrix mask_blocks(const SpectralFrame& frame, const ComplexMatrix& m, Keep keep) {
    if (m.rows() != frame.dim() || m.cols() != frame.dim()) {
        std::ostringstream msg;
        msg << "expected " << frame.dim() << "x" << frame.dim() << ", got " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
    const auto& block = frame.block_of();
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (keep(block[i], block[j])) out(i, j) = m(i, j);
    return out;
}

// Largest singular value of a real matrix held in a ComplexMatrix.
double op_norm(const ComplexMatrix& m) {
    if (m.rows() <= kDenseNormLimit) return singular_values(m).front();
    return operator_norm_power(m, 1e-6);
}

}  // namespace

ComplexMatrix keep_diagonal_blocks(const SpectralFrame& frame, const ComplexMatrix& frame_coords) {
    return mask_blocks(frame, frame_coords, [](std::size_t bi, std::size_t bj) { return bi == bj; });
}

ComplexMatrix keep_upper_blocks(const SpectralFrame& frame, const ComplexMatrix& frame_coords) {
    return mask_blocks(frame, frame_coords, [](std::size_t bi, std::size_t bj) { return bi <= bj; });
}

ComplexMatrix keep_strict_upper_blocks(const SpectralFrame& frame, const ComplexMatrix& frame_coords) {
    return mask_blocks(frame, frame_coords, [](std::size_t bi, std::size_t bj) { return bi < bj; });
}

ComplexMatrix diag_expectation(const SpectralFrame& frame, const ComplexMatrix& z) {
    return from_frame(frame, keep_diagonal_blocks(frame, to_frame(frame, z)));
}

ComplexMatrix triangular_projection(const SpectralFrame& frame, const ComplexMatrix& z) {
    return from_frame(frame, keep_upper_blocks(frame, to_frame(frame, z)));
}

ComplexMatrix strict_upper_projection(const SpectralFrame& frame, const ComplexMatrix& z) {
    return from_frame(frame, keep_strict_upper_blocks(frame, to_frame(frame, z)));
}

TriadicParts triadic_decompose(const SpectralFrame& frame, const ComplexMatrix& x) {
    // Every step commutes with the unitary change of basis, so work in frame
    // coordinates and transform the three parts back at the end.
    const ComplexMatrix xf = to_frame(frame, x);
    const ComplexMatrix lower = mask_blocks(frame, xf, [](std::size_t bi, std::size_t bj) { return bi > bj; });
    const ComplexMatrix diag = keep_diagonal_blocks(frame, xf);
    const ComplexMatrix strict = keep_strict_upper_blocks(frame, xf);
    const ComplexMatrix lower_adj = adjoint(lower);
    const ComplexMatrix diag_adj = adjoint(diag);

    ComplexMatrix k = lower - lower_adj + 0.5 * (diag - diag_adj);
    ComplexMatrix a = 0.5 * (diag + diag_adj);
    ComplexMatrix n = strict + lower_adj;
    return {from_frame(frame, k), from_frame(frame, a), from_frame(frame, n)};
}

ComplexMatrix hilbert_witness(std::size_t n) {
    if (n < 2) throw Error(ErrorKind::InvalidInput, "hilbert_witness: n must be at least 2");
    ComplexMatrix w(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
            if (j != l) w(j, l) = 1.0 / (static_cast<double>(j) - static_cast<double>(l));
    return w;
}

std::vector<GrowthRow> truncation_growth(std::span<const std::size_t> sizes) {
    if (sizes.empty()) throw Error(ErrorKind::InvalidInput, "truncation_growth: no sizes given");
    for (std::size_t n : sizes)
        if (n < 2) throw Error(ErrorKind::InvalidInput, "truncation_growth: sizes must be at least 2");

    std::vector<GrowthRow> rows(sizes.size());
    parallel_for(sizes.size(), [&](std::size_t idx) {
        const std::size_t n = sizes[idx];
        std::vector<double> spectrum(n);
        for (std::size_t i = 0; i < n; ++i) spectrum[i] = static_cast<double>(n - i);
        const SpectralFrame frame = SpectralFrame::standard(spectrum);
        const ComplexMatrix w = hilbert_witness(n);
        const ComplexMatrix tw = triangular_projection(frame, w);

        GrowthRow row{};
        row.n = n;
        row.op_norm_w = op_norm(w);
        row.op_norm_tw = op_norm(tw);
        row.ratio_op = row.op_norm_tw / row.op_norm_w;
        row.s2_norm_w = frobenius_norm(w);
        row.s2_norm_tw = frobenius_norm(tw);
        row.ratio_s2 = row.s2_norm_tw / row.s2_norm_w;
        rows[idx] = row;
    });
    return rows;
}

}  // namespace iwasawa
