#pragma once

// Dense exact linear algebra over a cyclotomic field.

#include "hhks/field.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace hhks {

class Mat {
  public:
    Mat(const CyclotomicField &field, std::size_t rows, std::size_t cols);
    static Mat identity(const CyclotomicField &field, std::size_t n);

    const CyclotomicField &field() const noexcept { return *field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    FieldElement &operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const FieldElement &operator()(std::size_t r, std::size_t c) const {
        return a_[r * cols_ + c];
    }

    std::span<const FieldElement> row(std::size_t r) const {
        return {a_.data() + r * cols_, cols_};
    }
    std::vector<FieldElement> column(std::size_t c) const;

    bool is_zero() const noexcept;

    Mat transpose() const;
    // Keep only the listed columns, in the given order.
    Mat select_columns(std::span<const std::size_t> idx) const;
    // Stack rows of `other` below this matrix.
    Mat vstack(const Mat &other) const;
    Mat hstack(const Mat &other) const;

    std::vector<FieldElement> apply(std::span<const FieldElement> v) const;

    friend Mat operator*(const Mat &a, const Mat &b);
    friend bool operator==(const Mat &a, const Mat &b);

  private:
    const CyclotomicField *field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<FieldElement> a_;
};

struct RrefResult {
    Mat matrix;
    std::vector<std::size_t> pivots;
};

// Reduced row echelon form; pivot = first nonzero column of each row.
RrefResult rref(Mat m);
std::size_t rank(const Mat &m);

// Row space in RREF: rows are basis vectors, pivots strictly increasing.
class SubspaceBasis {
  public:
    SubspaceBasis(const CyclotomicField &field, std::size_t ambient);
    // Row span of `generators` (any rows, dependent allowed).
    static SubspaceBasis span_of(const Mat &generators);

    std::size_t ambient_dim() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const Mat &basis() const noexcept { return basis_; }
    const std::vector<std::size_t> &pivots() const noexcept { return pivots_; }

    bool contains(std::span<const FieldElement> v) const;

  private:
    SubspaceBasis(Mat basis, std::vector<std::size_t> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    Mat basis_;
    std::vector<std::size_t> pivots_;
};

// {v : m v = 0}.
SubspaceBasis kernel_basis(const Mat &m);

struct QuotientBasis {
    // Non-pivot coordinates of the subspace's RREF, increasing.
    std::vector<std::size_t> complement;
    // (ambient - dim sub) x ambient; identity on complement columns, kills sub.
    Mat projection;
};

QuotientBasis quotient_basis(std::size_t ambient_dim, const SubspaceBasis &sub);

// Solve m x = b for one particular solution; empty optional-like flag via bool.
bool solve(const Mat &m, std::span<const FieldElement> b, std::vector<FieldElement> &x);

} // namespace hhks
