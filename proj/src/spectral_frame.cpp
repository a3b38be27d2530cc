#include "iwasawa/spectral_frame.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "iwasawa/linalg.hpp"

namespace iwasawa {

namespace {

constexpr double kSignificant = 1e-8;

std::size_t first_significant(std::span<const cplx> v) {
    double largest = 0.0;
    for (const auto& z : v) largest = std::max(largest, std::abs(z));
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > kSignificant * largest) return i;
    return 0;
}

void require_frame_dim(const SpectralFrame& frame, const ComplexMatrix& m, const char* what) {
    if (m.rows() != frame.dim() || m.cols() != frame.dim()) {
        std::ostringstream msg;
        msg << what << ": expected " << frame.dim() << "x" << frame.dim() << ", got " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
}

}  // namespace

const char* to_string(RegularityClass c) { return c == RegularityClass::Regular ? "Regular" : "QuasiRegular"; }

SpectralFrame::SpectralFrame(std::vector<Cluster> clusters, ComplexMatrix basis)
    : clusters_(std::move(clusters)), basis_(std::move(basis)) {
    require_square(basis_, "SpectralFrame basis");
    if (clusters_.empty()) throw Error(ErrorKind::InvalidInput, "frame needs at least one cluster");
    offsets_.assign(1, 0);
    for (std::size_t c = 0; c < clusters_.size(); ++c) {
        if (clusters_[c].multiplicity == 0) throw Error(ErrorKind::InvalidInput, "cluster multiplicity must be positive");
        if (!std::isfinite(clusters_[c].value)) throw Error(ErrorKind::InvalidInput, "cluster value must be finite");
        if (c > 0 && !(clusters_[c].value < clusters_[c - 1].value))
            throw Error(ErrorKind::InvalidInput, "cluster values must be strictly decreasing");
        offsets_.push_back(offsets_.back() + clusters_[c].multiplicity);
    }
    if (offsets_.back() != basis_.rows()) {
        std::ostringstream msg;
        msg << "multiplicities sum to " << offsets_.back() << " but basis is " << basis_.rows() << "x" << basis_.rows();
        throw Error(ErrorKind::InvalidInput, msg.str());
    }
    const double defect = unitarity_defect(basis_);
    if (defect > 1e-10) {
        std::ostringstream msg;
        msg << "frame basis is not unitary (||B*B - 1||_F = " << defect << ")";
        throw Error(ErrorKind::InvalidInput, msg.str());
    }
    block_of_.resize(dim());
    for (std::size_t c = 0; c < clusters_.size(); ++c)
        for (std::size_t i = offsets_[c]; i < offsets_[c + 1]; ++i) block_of_[i] = c;
    identity_basis_ = basis_.data().size() == 0 || [&] {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                if (basis_(i, j) != (i == j ? cplx{1.0} : cplx{})) return false;
        return true;
    }();
}

SpectralFrame SpectralFrame::standard(std::span<const double> values) {
    std::vector<Cluster> clusters;
    clusters.reserve(values.size());
    for (double v : values) clusters.push_back({v, 1});
    return SpectralFrame(std::move(clusters), ComplexMatrix::identity(values.size()));
}

ComplexMatrix SpectralFrame::element() const {
    std::vector<double> diag(dim());
    for (std::size_t i = 0; i < dim(); ++i) diag[i] = clusters_[block_of_[i]].value;
    return from_frame(*this, ComplexMatrix::diagonal(std::span<const double>(diag)));
}

SpectralFrame build_frame(const ComplexMatrix& x0, double cluster_tol) {
    const HermitianEig eig = hermitian_eig(x0);
    const std::size_t n = x0.rows();
    const double scale = 1.0 + std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));

    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 || eig.values[i - 1] - eig.values[i] > cluster_tol * scale)
            groups.emplace_back();
        groups.back().push_back(i);
    }

    std::vector<Cluster> clusters;
    ComplexMatrix basis(n, n);
    std::size_t out_col = 0;
    for (const auto& members : groups) {
        double mean = 0.0;
        for (std::size_t i : members) mean += eig.values[i];
        mean /= static_cast<double>(members.size());
        clusters.push_back({mean, members.size()});

        struct Column {
            std::vector<cplx> v;
            std::size_t lead;
            double lead_abs;
            std::size_t original;
        };
        std::vector<Column> cols;
        for (std::size_t i : members) {
            std::vector<cplx> v = eig.vectors.column(i);
            const std::size_t lead = first_significant(v);
            const double mag = std::abs(v[lead]);
            if (mag > 0.0) {
                const cplx phase = std::conj(v[lead]) / mag;
                for (auto& z : v) z *= phase;
                v[lead] = mag;
            }
            cols.push_back({std::move(v), lead, mag, i});
        }
        std::stable_sort(cols.begin(), cols.end(), [](const Column& a, const Column& b) {
            if (a.lead_abs != b.lead_abs) return a.lead_abs > b.lead_abs;
            if (a.lead != b.lead) return a.lead < b.lead;
            return a.original < b.original;
        });
        for (const auto& c : cols) basis.set_column(out_col++, c.v);
    }
    // Merged means can tie only if cluster_tol is negative; guard anyway.
    for (std::size_t c = 1; c < clusters.size(); ++c)
        if (!(clusters[c].value < clusters[c - 1].value))
            throw Error(ErrorKind::InvalidInput, "cluster tolerance produced non-decreasing clusters");
    return SpectralFrame(std::move(clusters), std::move(basis));
}

RegularityClass classify(const SpectralFrame& frame) {
    for (const auto& c : frame.clusters())
        if (c.multiplicity != 1) return RegularityClass::QuasiRegular;
    return RegularityClass::Regular;
}

ComplexMatrix to_frame(const SpectralFrame& frame, const ComplexMatrix& m) {
    require_frame_dim(frame, m, "to_frame");
    if (frame.basis_is_identity()) return m;
    return adjoint(frame.basis()) * (m * frame.basis());
}

ComplexMatrix from_frame(const SpectralFrame& frame, const ComplexMatrix& m) {
    require_frame_dim(frame, m, "from_frame");
    if (frame.basis_is_identity()) return m;
    return frame.basis() * (m * adjoint(frame.basis()));
}

}  // namespace iwasawa
