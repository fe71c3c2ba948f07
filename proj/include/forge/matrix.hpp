#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace forge {

using cplx = std::complex<double>;

// Row-major dense complex matrix. Only the handful of operations the
// library needs; no BLAS, sizes stay at desk scale.
class CMatrix {
public:
    CMatrix() : rows_(0), cols_(0) {}
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    CMatrix adjoint() const;
    CMatrix multiply(const CMatrix& other) const;
    CMatrix& add_scaled(const CMatrix& other, cplx factor);

    cplx trace() const;
    double max_abs() const;
    // max |this - other| entrywise
    double max_abs_diff(const CMatrix& other) const;

private:
    std::size_t rows_, cols_;
    std::vector<cplx> data_;
};

}  // namespace forge
