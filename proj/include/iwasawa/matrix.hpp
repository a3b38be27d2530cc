#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwasawa {

using cplx = std::complex<double>;

enum class ErrorKind {
    NotHermitian,
    ConvergenceFailure,
    NotSquare,
    Singular,
    DimensionMismatch,
    BadDimension,
    ConstraintViolation,
    NotPositive,
    FrameMismatch,
    SingularCompression,
    NotApplicable,
    InvalidInput,
};

const char* to_string(ErrorKind kind);

/// Library error. `what()` starts with the kind name, e.g. "Singular: pivot 3 ...".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);
    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

/// Dense complex matrix, row-major. Entries are finite on construction.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::span<const cplx> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }
    std::span<cplx> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<cplx> column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const cplx> values);

    ComplexMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
    void set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b);

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

    bool all_finite() const noexcept;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix m);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

/// Schatten exponent: a real p >= 1 or the operator norm.
class SchattenP {
public:
    static SchattenP finite(double p);
    static SchattenP infinity() { return SchattenP{}; }

    bool is_infinity() const noexcept { return infinite_; }
    double value() const;  // throws for infinity
    std::string to_string() const;
    static SchattenP parse(const std::string& token);  // "1.5", "2", "inf"

private:
    SchattenP() = default;
    double p_ = 0.0;
    bool infinite_ = true;
};

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);
void require_square(const ComplexMatrix& m, const char* what);

}  // namespace iwasawa
