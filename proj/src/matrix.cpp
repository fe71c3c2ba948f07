#include "forge/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "forge/errors.hpp"

namespace forge {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = std::conj(at(r, c));
    return out;
}

CMatrix CMatrix::multiply(const CMatrix& other) const {
    if (cols_ != other.rows_) throw ValidationError("CMatrix::multiply: shape mismatch");
    CMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx a = at(r, k);
            if (a == cplx{}) continue;
            const cplx* src = &other.data_[k * other.cols_];
            cplx* dst = &out.data_[r * other.cols_];
            for (std::size_t c = 0; c < other.cols_; ++c) dst[c] += a * src[c];
        }
    }
    return out;
}

CMatrix& CMatrix::add_scaled(const CMatrix& other, cplx factor) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw ValidationError("CMatrix::add_scaled: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += factor * other.data_[i];
    return *this;
}

cplx CMatrix::trace() const {
    cplx t = 0.0;
    const std::size_t n = std::min(rows_, cols_);
    for (std::size_t i = 0; i < n; ++i) t += at(i, i);
    return t;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double CMatrix::max_abs_diff(const CMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw ValidationError("CMatrix::max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        m = std::max(m, std::abs(data_[i] - other.data_[i]));
    return m;
}

}  // namespace forge
