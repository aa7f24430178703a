#pragma once

#include "ldrn/gf.hpp"
#include "ldrn/labels.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ldrn {

/**
 * Dense row-major matrix over a Field, optionally carrying row and column port labels.
 *
 * Unlabeled matrices keep both label lists empty. A labeled matrix has exactly one distinct
 * label per row and per column, which is what submatrix() addresses.
 */
class Matrix {
public:
    Matrix() = default;
    Matrix(Field field, std::size_t rows, std::size_t cols);

    /// Throws ldrn::Error for ragged input or entries outside the field.
    static Matrix from_rows(Field field, const std::vector<std::vector<Elem>>& rows);
    static Matrix identity(Field field, std::size_t n);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::vector<Elem> column(std::size_t c) const;
    std::vector<std::vector<Elem>> to_rows() const;
    const std::vector<Elem>& data() const noexcept { return data_; }

    bool has_labels() const noexcept { return !row_labels_.empty() || !col_labels_.empty(); }
    const std::vector<PortLabel>& row_labels() const noexcept { return row_labels_; }
    const std::vector<PortLabel>& col_labels() const noexcept { return col_labels_; }
    /// Either list may be empty; non-empty lists must match the dimension and be duplicate free.
    void set_labels(std::vector<PortLabel> row_labels, std::vector<PortLabel> col_labels);

    void append_row(std::span<const Elem> values);
    void append_column(std::span<const Elem> values);

    /// Same entries reinterpreted in another field of equal characteristic (subfield embedding).
    Matrix embedded(Field target) const;

    bool is_zero() const noexcept;

    /// Compares field, shape, entries and labels.
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
    std::vector<PortLabel> row_labels_;
    std::vector<PortLabel> col_labels_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);

/// y = m x.
std::vector<Elem> mat_vec(const Matrix& m, std::span<const Elem> x);
/// y = v m for a row vector v.
std::vector<Elem> apply_left(std::span<const Elem> v, const Matrix& m);

/// Gaussian elimination with first-nonzero pivoting. Empty matrices have rank 0.
std::size_t rank(const Matrix& m);

/// Throws ldrn::Error when m is not square.
Elem determinant(const Matrix& m);

/// nullopt when m is singular. Throws ldrn::Error when m is not square.
std::optional<Matrix> inverse(const Matrix& m);

/// The unique x with m x = b, or nullopt when m is singular.
std::optional<std::vector<Elem>> solve(const Matrix& m, std::span<const Elem> b);

/// Rows and columns picked by label, in the order given. Throws ldrn::Error on an unknown label.
Matrix submatrix(const Matrix& m, std::span<const PortLabel> row_labels, std::span<const PortLabel> col_labels);

/// Rows and columns picked by index, in the order given. Labels, when present, follow along.
Matrix select(const Matrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols);

} // namespace ldrn
