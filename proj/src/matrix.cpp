#include "ldrn/matrix.hpp"

#include "ldrn/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace ldrn {

namespace {

void require_same_field(const Field& a, const Field& b, const char* op)
{
    if (!(a == b))
        throw Error(std::string(op) + ": field mismatch (" + a.name() + " vs " + b.name() + ")");
}

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void check_distinct(const std::vector<PortLabel>& labels, const char* what)
{
    const std::set<PortLabel> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size())
        throw Error(std::string("duplicate ") + what + " label");
}

// Row-reduces m in place to row echelon form; returns the pivot columns.
std::vector<std::size_t> eliminate(Matrix& m)
{
    const Field& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0)
            ++piv;
        if (piv == m.rows())
            continue;
        if (piv != r)
            for (std::size_t j = c; j < m.cols(); ++j)
                std::swap(m(piv, j), m(r, j));
        const Elem inv = f.inv(m(r, c));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const Elem factor = m(i, c);
            if (factor == 0)
                continue;
            const Elem scale = f.neg(f.mul(factor, inv));
            for (std::size_t j = c; j < m.cols(); ++j)
                if (m(r, j) != 0)
                    m(i, j) = f.add(m(i, j), f.mul(scale, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0)
{
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<Elem>>& rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(std::move(field), rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw Error("ragged matrix: row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                        " entries, expected " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) {
            if (!m.field_.contains(rows[r][c]))
                throw Error("entry " + std::to_string(rows[r][c]) + " is not an element of " + m.field_.name());
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

Matrix Matrix::identity(Field field, std::size_t n)
{
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

std::vector<Elem> Matrix::column(std::size_t c) const
{
    std::vector<Elem> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

std::vector<std::vector<Elem>> Matrix::to_rows() const
{
    std::vector<std::vector<Elem>> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r].assign(row(r).begin(), row(r).end());
    return out;
}

void Matrix::set_labels(std::vector<PortLabel> row_labels, std::vector<PortLabel> col_labels)
{
    if (!row_labels.empty() && row_labels.size() != rows_)
        throw Error("row label count " + std::to_string(row_labels.size()) + " does not match " + shape(*this));
    if (!col_labels.empty() && col_labels.size() != cols_)
        throw Error("column label count " + std::to_string(col_labels.size()) + " does not match " + shape(*this));
    check_distinct(row_labels, "row");
    check_distinct(col_labels, "column");
    row_labels_ = std::move(row_labels);
    col_labels_ = std::move(col_labels);
}

void Matrix::append_row(std::span<const Elem> values)
{
    if (rows_ == 0 && cols_ == 0)
        cols_ = values.size();
    if (values.size() != cols_)
        throw Error("append_row: length " + std::to_string(values.size()) + " does not match " + shape(*this));
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
    row_labels_.clear();
}

void Matrix::append_column(std::span<const Elem> values)
{
    if (rows_ == 0 && cols_ == 0)
        rows_ = values.size();
    if (values.size() != rows_)
        throw Error("append_column: length " + std::to_string(values.size()) + " does not match " + shape(*this));
    std::vector<Elem> next;
    next.reserve(rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
        auto src = row(r);
        next.insert(next.end(), src.begin(), src.end());
        next.push_back(values[r]);
    }
    data_ = std::move(next);
    ++cols_;
    col_labels_.clear();
}

Matrix Matrix::embedded(Field target) const
{
    if (target.characteristic() != field_.characteristic() || !field_.is_prime_field())
        throw Error("cannot embed " + field_.name() + " into " + target.name());
    Matrix out = *this;
    out.field_ = std::move(target);
    return out;
}

bool Matrix::is_zero() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

bool operator==(const Matrix& a, const Matrix& b)
{
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
           a.row_labels_ == b.row_labels_ && a.col_labels_ == b.col_labels_;
}

Matrix multiply(const Matrix& a, const Matrix& b)
{
    require_same_field(a.field(), b.field(), "multiply");
    if (a.cols() != b.rows())
        throw Error("multiply: dimension mismatch " + shape(a) + " * " + shape(b));
    const Field& f = a.field();
    Matrix out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t t = 0; t < a.cols(); ++t) {
            const Elem x = a(i, t);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(t, j) != 0)
                    out(i, j) = f.add(out(i, j), f.mul(x, b(t, j)));
        }
    out.set_labels(a.row_labels(), b.col_labels());
    return out;
}

Matrix add(const Matrix& a, const Matrix& b)
{
    require_same_field(a.field(), b.field(), "add");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error("add: dimension mismatch " + shape(a) + " + " + shape(b));
    Matrix out(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a.field().add(a(i, j), b(i, j));
    return out;
}

Matrix transpose(const Matrix& m)
{
    Matrix out(m.field(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(j, i) = m(i, j);
    out.set_labels(m.col_labels(), m.row_labels());
    return out;
}

std::vector<Elem> mat_vec(const Matrix& m, std::span<const Elem> x)
{
    if (x.size() != m.cols())
        throw Error("apply: vector length " + std::to_string(x.size()) + " does not match " + shape(m));
    std::vector<Elem> y(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        y[r] = m.field().dot(m.row(r), x);
    return y;
}

std::vector<Elem> apply_left(std::span<const Elem> v, const Matrix& m)
{
    if (v.size() != m.rows())
        throw Error("apply_left: vector length " + std::to_string(v.size()) + " does not match " + shape(m));
    const Field& f = m.field();
    std::vector<Elem> out(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (v[r] == 0)
            continue;
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0)
                out[c] = f.add(out[c], f.mul(v[r], m(r, c)));
    }
    return out;
}

std::size_t rank(const Matrix& m)
{
    if (m.empty())
        return 0;
    Matrix work(m.field(), m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        std::copy(m.row(r).begin(), m.row(r).end(), work.row(r).begin());
    return eliminate(work).size();
}

Elem determinant(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw Error("determinant: matrix is not square (" + shape(m) + ")");
    const Field& f = m.field();
    Matrix work(f, m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        std::copy(m.row(r).begin(), m.row(r).end(), work.row(r).begin());
    Elem det = 1;
    for (std::size_t c = 0; c < work.cols(); ++c) {
        std::size_t piv = c;
        while (piv < work.rows() && work(piv, c) == 0)
            ++piv;
        if (piv == work.rows())
            return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < work.cols(); ++j)
                std::swap(work(piv, j), work(c, j));
            det = f.neg(det);
        }
        det = f.mul(det, work(c, c));
        const Elem inv = f.inv(work(c, c));
        for (std::size_t i = c + 1; i < work.rows(); ++i) {
            const Elem factor = work(i, c);
            if (factor == 0)
                continue;
            const Elem scale = f.neg(f.mul(factor, inv));
            for (std::size_t j = c; j < work.cols(); ++j)
                work(i, j) = f.add(work(i, j), f.mul(scale, work(c, j)));
        }
    }
    return det;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw Error("inverse: matrix is not square (" + shape(m) + ")");
    const Field& f = m.field();
    const std::size_t n = m.rows();
    // Gauss-Jordan on [m | I].
    Matrix aug(f, n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && aug(piv, c) == 0)
            ++piv;
        if (piv == n)
            return std::nullopt;
        if (piv != c)
            for (std::size_t j = 0; j < 2 * n; ++j)
                std::swap(aug(piv, j), aug(c, j));
        const Elem inv = f.inv(aug(c, c));
        for (std::size_t j = 0; j < 2 * n; ++j)
            aug(c, j) = f.mul(aug(c, j), inv);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || aug(i, c) == 0)
                continue;
            const Elem scale = f.neg(aug(i, c));
            for (std::size_t j = 0; j < 2 * n; ++j)
                if (aug(c, j) != 0)
                    aug(i, j) = f.add(aug(i, j), f.mul(scale, aug(c, j)));
        }
    }
    Matrix out(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out(r, c) = aug(r, n + c);
    return out;
}

std::optional<std::vector<Elem>> solve(const Matrix& m, std::span<const Elem> b)
{
    if (b.size() != m.rows())
        throw Error("solve: right-hand side length " + std::to_string(b.size()) + " does not match " + shape(m));
    auto inv = inverse(m);
    if (!inv)
        return std::nullopt;
    return mat_vec(*inv, b);
}

Matrix submatrix(const Matrix& m, std::span<const PortLabel> row_labels, std::span<const PortLabel> col_labels)
{
    auto lookup = [](const std::vector<PortLabel>& labels, const PortLabel& want, const char* what) {
        const auto it = std::find(labels.begin(), labels.end(), want);
        if (it == labels.end())
            throw Error(std::string("unknown ") + what + " label " + to_string(want));
        return static_cast<std::size_t>(it - labels.begin());
    };
    std::vector<std::size_t> rows, cols;
    rows.reserve(row_labels.size());
    cols.reserve(col_labels.size());
    for (const auto& l : row_labels)
        rows.push_back(lookup(m.row_labels(), l, "row"));
    for (const auto& l : col_labels)
        cols.push_back(lookup(m.col_labels(), l, "column"));
    return select(m, rows, cols);
}

Matrix select(const Matrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols)
{
    Matrix out(m.field(), rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(i, j) = m(rows[i], cols[j]);
    std::vector<PortLabel> rl, cl;
    if (!m.row_labels().empty())
        for (auto r : rows)
            rl.push_back(m.row_labels()[r]);
    if (!m.col_labels().empty())
        for (auto c : cols)
            cl.push_back(m.col_labels()[c]);
    out.set_labels(std::move(rl), std::move(cl));
    return out;
}

} // namespace ldrn
