#include "qtau/matrix.hpp"

#include <cmath>
#include <string>

namespace qtau {

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(c, r) = std::conj((*this)(r, c));
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(c, r) = (*this)(r, c);
    return out;
}

Matrix Matrix::conjugate() const {
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = std::conj(data_[i]);
    return out;
}

Complex Matrix::trace() const {
    Complex t{0.0, 0.0};
    const std::size_t n = std::min(rows_, cols_);
    for (std::size_t i = 0; i < n; ++i)
        t += (*this)(i, i);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : data_)
        s += std::norm(z);
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_)
        m = std::max(m, std::abs(z));
    return m;
}

double Matrix::hermiticity_defect() const {
    if (!square())
        return max_abs();
    double m = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return m;
}

bool Matrix::all_finite() const {
    for (const Complex& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            return false;
    return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw InvalidInputError("matrix addition: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += o.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw InvalidInputError("matrix subtraction: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= o.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(Complex s) {
    for (Complex& z : data_)
        z *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw InvalidInputError("matrix product: inner dimension mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex arik = a(r, k);
            if (arik == Complex{0.0, 0.0})
                continue;
            for (std::size_t c = 0; c < b.cols(); ++c)
                out(r, c) += arik * b(k, c);
        }
    }
    return out;
}

DimsSpec::DimsSpec(std::vector<std::size_t> factors) : factors_(std::move(factors)) {
    if (factors_.empty())
        throw InvalidInputError("DimsSpec: no factors");
    total_ = 1;
    for (std::size_t f : factors_) {
        if (f < 2)
            throw InvalidInputError("DimsSpec: every factor must be >= 2, got " +
                                    std::to_string(f));
        total_ *= f;
    }
}

std::size_t DimsSpec::flatten(std::span<const std::size_t> multi) const {
    std::size_t flat = 0;
    for (std::size_t t = 0; t < factors_.size(); ++t)
        flat = flat * factors_[t] + multi[t];
    return flat;
}

void DimsSpec::unflatten(std::size_t flat, std::span<std::size_t> multi) const {
    for (std::size_t t = factors_.size(); t-- > 0;) {
        multi[t] = flat % factors_[t];
        flat /= factors_[t];
    }
}

} // namespace qtau
