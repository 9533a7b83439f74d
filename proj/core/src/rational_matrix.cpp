#include <fgl/rational_matrix.hpp>

#include <stdexcept>

namespace fgl
{

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols)
{
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = 1;
    }
    return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<std::vector<mpq_class>> &columns, std::size_t rows)
{
    RationalMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) {
            throw std::invalid_argument("column length does not match the row count");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            m.at(r, c) = columns[c][r];
        }
    }
    return m;
}

std::vector<mpq_class> RationalMatrix::column(std::size_t c) const
{
    std::vector<mpq_class> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = at(r, c);
    }
    return out;
}

RationalMatrix operator*(const RationalMatrix &a, const RationalMatrix &b)
{
    if (a.cols_ != b.rows_) {
        throw std::invalid_argument("matrix shapes do not match");
    }
    RationalMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const mpq_class &x = a.at(i, k);
            if (sgn(x) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) {
                out.at(i, j) += x * b.at(k, j);
            }
        }
    }
    return out;
}

bool operator==(const RationalMatrix &a, const RationalMatrix &b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RationalMatrix RationalMatrix::hconcat(const RationalMatrix &other) const
{
    if (rows_ != other.rows_) {
        throw std::invalid_argument("row counts differ");
    }
    RationalMatrix out(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out.at(r, c) = at(r, c);
        }
        for (std::size_t c = 0; c < other.cols_; ++c) {
            out.at(r, cols_ + c) = other.at(r, c);
        }
    }
    return out;
}

std::vector<std::size_t> RationalMatrix::rref()
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t sel = row;
        while (sel < rows_ && sgn(at(sel, col)) == 0) {
            ++sel;
        }
        if (sel == rows_) {
            continue;
        }
        if (sel != row) {
            for (std::size_t c = 0; c < cols_; ++c) {
                std::swap(at(sel, c), at(row, c));
            }
        }
        const mpq_class inv = 1 / at(row, col);
        for (std::size_t c = col; c < cols_; ++c) {
            at(row, c) *= inv;
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row || sgn(at(r, col)) == 0) {
                continue;
            }
            const mpq_class f = at(r, col);
            for (std::size_t c = col; c < cols_; ++c) {
                at(r, c) -= f * at(row, c);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t RationalMatrix::rank() const
{
    RationalMatrix copy = *this;
    return copy.rref().size();
}

std::vector<std::vector<mpq_class>> RationalMatrix::nullspace() const
{
    RationalMatrix red = *this;
    const auto pivots = red.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<std::vector<mpq_class>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<mpq_class> v(cols_);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            v[pivots[i]] = -red.at(i, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace fgl
