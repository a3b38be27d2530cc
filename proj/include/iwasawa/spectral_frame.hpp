#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "iwasawa/matrix.hpp"

namespace iwasawa {

inline constexpr double kClusterTol = 1e-8;

struct Cluster {
    double value;
    std::size_t multiplicity;
};

enum class RegularityClass { Regular, QuasiRegular };

const char* to_string(RegularityClass c);

/// Spectral data of a Hermitian element X0: eigenvalue clusters in strictly
/// descending order and an ordered unitary eigenbasis whose columns are grouped
/// by cluster. "Upper triangular" everywhere in the library means upper with
/// respect to this column order.
class SpectralFrame {
public:
    /// Validates the invariants (descending clusters, multiplicities summing to
    /// the basis size, unitary basis to 1e-10).
    SpectralFrame(std::vector<Cluster> clusters, ComplexMatrix basis);

    /// Frame of diag(values) in the standard basis; values must be strictly
    /// decreasing. Skips the eigensolver.
    static SpectralFrame standard(std::span<const double> values);

    std::size_t dim() const noexcept { return basis_.rows(); }
    const std::vector<Cluster>& clusters() const noexcept { return clusters_; }
    const ComplexMatrix& basis() const noexcept { return basis_; }
    /// Prefix sums of multiplicities; size clusters().size() + 1.
    const std::vector<std::size_t>& block_offsets() const noexcept { return offsets_; }
    /// Cluster index of each frame coordinate.
    const std::vector<std::size_t>& block_of() const noexcept { return block_of_; }
    std::size_t block_count() const noexcept { return clusters_.size(); }
    bool basis_is_identity() const noexcept { return identity_basis_; }

    /// X0 reassembled as basis * diag(cluster values) * basis*.
    ComplexMatrix element() const;

private:
    std::vector<Cluster> clusters_;
    ComplexMatrix basis_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> block_of_;
    bool identity_basis_ = false;
};

/// Eigenvalues within cluster_tol * (1 + ||x0||_2) of their neighbour merge
/// into one cluster. Within a cluster the columns are phase-normalised (first
/// significant coordinate real positive) and ordered by descending magnitude of
/// that coordinate, then by its index.
SpectralFrame build_frame(const ComplexMatrix& x0, double cluster_tol = kClusterTol);

RegularityClass classify(const SpectralFrame& frame);

/// basis* m basis.
ComplexMatrix to_frame(const SpectralFrame& frame, const ComplexMatrix& m);
/// basis m basis*.
ComplexMatrix from_frame(const SpectralFrame& frame, const ComplexMatrix& m);

}  // namespace iwasawa
