#pragma once

#include "gkw/bigfloat.hpp"

#include <cstddef>
#include <vector>

namespace gkw {

// Dense row-major matrix of BigFloat values at a fixed precision.
class BigMatrix {
public:
    BigMatrix(std::size_t rows, std::size_t cols, Precision p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Precision precision() const { return prec_; }

    BigFloat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigFloat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    BigFloat trace() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    Precision prec_;
    std::vector<BigFloat> data_;
};

// Least-squares solution of A x = y (rows >= cols) by Householder QR.
std::vector<BigFloat> least_squares(BigMatrix a, std::vector<BigFloat> y);

// Row vector r with r . y = x_0 for the least-squares solution x of A x = y,
// i.e. the first row of the pseudo-inverse. Lets one linear fit be applied to
// many right-hand sides.
std::vector<BigFloat> least_squares_first_row(const BigMatrix& a);

}  // namespace gkw
