#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qtau/errors.hpp"

namespace qtau {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. The workhorse container for density
/// matrices, eigenvector bundles and intermediates. Kept deliberately small:
/// arithmetic that the algorithms need, nothing more.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Complex> data() { return data_; }
    std::span<const Complex> data() const { return data_; }

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conjugate() const;
    Complex trace() const;

    double frobenius_norm() const;
    /// Largest |entry|.
    double max_abs() const;
    /// Largest |M - M†| entry; 0 for the empty matrix.
    double hermiticity_defect() const;
    bool all_finite() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(Complex s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Ordered subsystem dimensions annotating a composite Hilbert space.
///
/// Flat-index convention used everywhere in this library: the basis label
/// (i_1, ..., i_k) maps to ((i_1*d_2 + i_2)*d_3 + ...) — subsystem 1 is the
/// most significant digit.
class DimsSpec {
  public:
    DimsSpec() = default;
    explicit DimsSpec(std::vector<std::size_t> factors);

    std::size_t count() const { return factors_.size(); }
    std::size_t factor(std::size_t i) const { return factors_[i]; }
    const std::vector<std::size_t>& factors() const { return factors_; }
    /// Product of all factors == the side length this spec annotates.
    std::size_t total() const { return total_; }
    bool bipartite() const { return factors_.size() == 2; }

    std::size_t flatten(std::span<const std::size_t> multi) const;
    void unflatten(std::size_t flat, std::span<std::size_t> multi) const;

    bool operator==(const DimsSpec& o) const { return factors_ == o.factors_; }

  private:
    std::vector<std::size_t> factors_;
    std::size_t total_ = 0;
};

} // namespace qtau
