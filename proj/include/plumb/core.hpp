#pragma once

// Shared numeric types and the error hierarchy used across the library.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace plumb {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (parse errors, invalid graphs, bad arguments).
class InputError : public Error {
public:
    using Error::Error;
};

/// A mathematical precondition does not hold (e.g. the form is not negative definite).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Never a verdict about the input.
class InternalError : public Error {
public:
    using Error::Error;
};

/// Dense row-major matrix. Small sizes only; no expression templates.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    template <typename U>
    Matrix<U> cast() const {
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = U((*this)(i, j));
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using BigMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

/// Evaluation vector of a cohomology class on the vertex spheres, in canonical vertex order.
struct CharVector {
    std::vector<std::int64_t> values;

    std::size_t size() const { return values.size(); }
    std::int64_t operator[](std::size_t i) const { return values[i]; }
    std::int64_t& operator[](std::size_t i) { return values[i]; }

    friend bool operator==(const CharVector&, const CharVector&) = default;
    friend auto operator<=>(const CharVector&, const CharVector&) = default;
};

CharVector negate(const CharVector& k);

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Floor and ceiling of an exact rational.
Integer floor(const Rational& r);
Integer ceil(const Rational& r);

}  // namespace plumb
