#include "iwasawa/matrix.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "iwasawa/kernels.hpp"

namespace iwasawa {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::Singular: return "Singular";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::BadDimension: return "BadDimension";
        case ErrorKind::ConstraintViolation: return "ConstraintViolation";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::FrameMismatch: return "FrameMismatch";
        case ErrorKind::SingularCompression: return "SingularCompression";
        case ErrorKind::NotApplicable: return "NotApplicable";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        std::ostringstream msg;
        msg << "expected " << rows_ * cols_ << " entries for a " << rows_ << "x" << cols_ << " matrix, got "
            << data_.size();
        throw Error(ErrorKind::InvalidInput, msg.str());
    }
    if (!all_finite()) throw Error(ErrorKind::InvalidInput, "matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorKind::InvalidInput, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    if (!all_finite()) throw Error(ErrorKind::InvalidInput, "matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    if (!m.all_finite()) throw Error(ErrorKind::InvalidInput, "matrix entries must be finite");
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    if (!m.all_finite()) throw Error(ErrorKind::InvalidInput, "matrix entries must be finite");
    return m;
}

std::vector<cplx> ComplexMatrix::column(std::size_t j) const {
    std::vector<cplx> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

void ComplexMatrix::set_column(std::size_t j, std::span<const cplx> values) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

ComplexMatrix ComplexMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                                   std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_)
        throw Error(ErrorKind::DimensionMismatch, "block exceeds matrix bounds");
    ComplexMatrix out(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
    return out;
}

void ComplexMatrix::set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b) {
    if (row0 + b.rows() > rows_ || col0 + b.cols() > cols_)
        throw Error(ErrorKind::DimensionMismatch, "block exceeds matrix bounds");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_shape(*this, rhs, "matrix addition");
    kernels::active().axpy(1.0, rhs.data_.data(), data_.data(), data_.size());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_shape(*this, rhs, "matrix subtraction");
    kernels::active().axpy(-1.0, rhs.data_.data(), data_.data(), data_.size());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

bool ComplexMatrix::all_finite() const noexcept {
    for (const auto& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator-(ComplexMatrix m) { return m *= -1.0; }
ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) {
        std::ostringstream msg;
        msg << "cannot multiply " << lhs.rows() << "x" << lhs.cols() << " by " << rhs.rows() << "x" << rhs.cols();
        throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
    ComplexMatrix out(lhs.rows(), rhs.cols());
    kernels::active().gemm(lhs.data().data(), rhs.data().data(), out.data().data(), lhs.rows(), lhs.cols(),
                           rhs.cols());
    return out;
}

SchattenP SchattenP::finite(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidInput, "Schatten exponent must be >= 1");
    SchattenP s;
    s.p_ = p;
    s.infinite_ = false;
    return s;
}

double SchattenP::value() const {
    if (infinite_) throw Error(ErrorKind::InvalidInput, "Schatten exponent is infinite");
    return p_;
}

std::string SchattenP::to_string() const {
    if (infinite_) return "inf";
    std::ostringstream out;
    out << p_;
    return out.str();
}

SchattenP SchattenP::parse(const std::string& token) {
    if (token == "inf" || token == "Infinity" || token == "infinity") return infinity();
    std::size_t used = 0;
    double p = 0.0;
    try {
        p = std::stod(token, &used);
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "cannot parse Schatten exponent '" + token + "'");
    }
    if (used != token.size()) throw Error(ErrorKind::InvalidInput, "cannot parse Schatten exponent '" + token + "'");
    return finite(p);
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << what << ": " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
        throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (!m.square()) {
        std::ostringstream msg;
        msg << what << ": matrix is " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::NotSquare, msg.str());
    }
}

}  // namespace iwasawa
