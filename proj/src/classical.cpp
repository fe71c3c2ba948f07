#include "forge/classical.hpp"

#include <algorithm>

#include "forge/errors.hpp"

namespace forge {

namespace {

void validate_entries(const Field& f, const IntMatrix& m) {
    for (const auto& row : m)
        for (int x : row)
            if (x < 0 || x >= f.size())
                throw ValidationError("matrix entry outside the field");
}

}  // namespace

IntMatrix gf_rref(const Field& f, IntMatrix m) {
    if (m.empty()) return m;
    const int cols = static_cast<int>(m[0].size());
    int pivot_row = 0;
    for (int col = 0; col < cols && pivot_row < static_cast<int>(m.size()); ++col) {
        int sel = -1;
        for (int r = pivot_row; r < static_cast<int>(m.size()); ++r) {
            if (m[r][col] != 0) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(m[pivot_row], m[sel]);
        const int scale = f.inv(m[pivot_row][col]);
        for (int c = 0; c < cols; ++c) m[pivot_row][c] = f.mul(m[pivot_row][c], scale);
        for (int r = 0; r < static_cast<int>(m.size()); ++r) {
            if (r == pivot_row || m[r][col] == 0) continue;
            const int factor = m[r][col];
            for (int c = 0; c < cols; ++c)
                m[r][c] = f.sub(m[r][c], f.mul(factor, m[pivot_row][c]));
        }
        ++pivot_row;
    }
    m.resize(pivot_row);
    return m;
}

int gf_rank(const Field& f, IntMatrix m) { return static_cast<int>(gf_rref(f, std::move(m)).size()); }

IntMatrix gf_nullspace(const Field& f, const IntMatrix& m) {
    if (m.empty()) return {};
    const int cols = static_cast<int>(m[0].size());
    IntMatrix r = gf_rref(f, m);
    std::vector<int> pivot_col;
    for (const auto& row : r) {
        int c = 0;
        while (c < cols && row[c] == 0) ++c;
        pivot_col.push_back(c);
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;

    IntMatrix basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<int> v(cols, 0);
        v[free] = 1;
        for (std::size_t k = 0; k < r.size(); ++k)
            v[pivot_col[k]] = f.neg(r[k][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

ClassicalCode::ClassicalCode(Field field, IntMatrix generator)
    : field_(std::move(field)), generator_(std::move(generator)) {
    if (generator_.empty() || generator_[0].empty())
        throw ValidationError("ClassicalCode: empty generator matrix");
    n_ = static_cast<int>(generator_[0].size());
    kappa_ = static_cast<int>(generator_.size());
    for (const auto& row : generator_)
        if (static_cast<int>(row.size()) != n_)
            throw ValidationError("ClassicalCode: ragged generator matrix");
    validate_entries(field_, generator_);
    if (gf_rank(field_, generator_) != kappa_)
        throw ValidationError("ClassicalCode: generator rows are dependent");
    parity_ = gf_nullspace(field_, generator_);
}

ClassicalCode grs_generator(const Field& f, int n, int kappa, const std::vector<int>& points,
                            const std::vector<int>& multipliers) {
    if (n > f.size()) throw ValidationError("grs_generator: n exceeds the field size");
    if (kappa < 1 || kappa > n) throw ValidationError("grs_generator: kappa outside [1, n]");
    if (static_cast<int>(points.size()) != n || static_cast<int>(multipliers.size()) != n)
        throw ValidationError("grs_generator: points/multipliers must have length n");
    for (int i = 0; i < n; ++i) {
        if (points[i] < 0 || points[i] >= f.size())
            throw ValidationError("grs_generator: evaluation point outside the field");
        if (multipliers[i] <= 0 || multipliers[i] >= f.size())
            throw ValidationError("grs_generator: multipliers must be nonzero field elements");
        for (int j = i + 1; j < n; ++j)
            if (points[i] == points[j])
                throw ValidationError("grs_generator: repeated evaluation point");
    }
    IntMatrix g(kappa, std::vector<int>(n));
    for (int j = 0; j < n; ++j) {
        int power = 1;  // points[j]^0
        for (int i = 0; i < kappa; ++i) {
            g[i][j] = f.mul(multipliers[j], power);
            power = f.mul(power, points[j]);
        }
    }
    return ClassicalCode(f, std::move(g));
}

int min_distance_bruteforce(const ClassicalCode& c) {
    const Field& f = c.field();
    long long words = 1;
    for (int i = 0; i < c.dimension(); ++i) {
        words *= f.size();
        if (words > 1000000)
            throw CapacityError("min_distance_bruteforce: q^kappa above the 10^6 guard");
    }
    int best = c.length() + 1;
    std::vector<int> msg(c.dimension(), 0);
    for (long long w = 1; w < words; ++w) {
        long long t = w;
        for (int i = 0; i < c.dimension(); ++i) {
            msg[i] = static_cast<int>(t % f.size());
            t /= f.size();
        }
        int weight = 0;
        for (int col = 0; col < c.length(); ++col) {
            int acc = 0;
            for (int i = 0; i < c.dimension(); ++i)
                acc = f.add(acc, f.mul(msg[i], c.generator()[i][col]));
            if (acc != 0) ++weight;
        }
        best = std::min(best, weight);
        if (best == 1) break;
    }
    return best;
}

bool self_orthogonality_check(const Field& f, const IntMatrix& rows) {
    validate_entries(f, rows);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i; j < rows.size(); ++j) {
            int acc = 0;
            for (std::size_t col = 0; col < rows[i].size(); ++col)
                acc = f.add(acc, f.mul(rows[i][col], rows[j][col]));
            if (acc != 0) return false;
        }
    }
    return true;
}

bool self_orthogonality_check(const ClassicalCode& c) {
    return self_orthogonality_check(c.field(), c.generator());
}

}  // namespace forge
