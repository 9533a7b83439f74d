#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace fgl
{

// Dense matrix over Q with exact entries.
class RationalMatrix
{
public:
    RationalMatrix(std::size_t rows, std::size_t cols);

    static RationalMatrix identity(std::size_t n);
    // Columns given as vectors of equal length.
    static RationalMatrix from_columns(const std::vector<std::vector<mpq_class>> &columns, std::size_t rows);

    std::size_t rows() const
    {
        return rows_;
    }
    std::size_t cols() const
    {
        return cols_;
    }
    mpq_class &at(std::size_t r, std::size_t c)
    {
        return data_[r * cols_ + c];
    }
    const mpq_class &at(std::size_t r, std::size_t c) const
    {
        return data_[r * cols_ + c];
    }

    std::vector<mpq_class> column(std::size_t c) const;

    friend RationalMatrix operator*(const RationalMatrix &a, const RationalMatrix &b);
    friend bool operator==(const RationalMatrix &a, const RationalMatrix &b);

    // [this | other]
    RationalMatrix hconcat(const RationalMatrix &other) const;

    std::size_t rank() const;
    // Basis of {v : M v = 0}, one vector per free column of the reduced
    // row echelon form.
    std::vector<std::vector<mpq_class>> nullspace() const;

private:
    // Reduced row echelon form in place; returns the pivot columns.
    std::vector<std::size_t> rref();

    std::size_t rows_;
    std::size_t cols_;
    std::vector<mpq_class> data_;
};

} // namespace fgl
