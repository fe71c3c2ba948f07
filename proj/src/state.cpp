#include "forge/state.hpp"

#include <cmath>

#include "forge/capacity.hpp"
#include "forge/errors.hpp"
#include "forge/indexer.hpp"
#include "forge/tolerances.hpp"

namespace forge {

namespace {

double norm_sq(const std::vector<cplx>& amps) {
    double n = 0.0;
    for (const cplx& a : amps) n += std::norm(a);
    return n;
}

}  // namespace

PureState::PureState(Shape shape, std::vector<cplx> amplitudes)
    : shape_(std::move(shape)), amps_(std::move(amplitudes)) {
    if (amps_.size() != shape_.total_dim())
        throw ValidationError("PureState: amplitude count " + std::to_string(amps_.size()) +
                              " does not match shape " + shape_.to_string());
    const double n = std::sqrt(norm_sq(amps_));
    if (std::abs(n - 1.0) > kNormTol)
        throw ValidationError("PureState: norm " + std::to_string(n) +
                              " deviates from 1 beyond 1e-12");
}

PureState PureState::basis_state(Shape shape, std::uint64_t index) {
    if (index >= shape.total_dim())
        throw IndexError("basis_state: index out of range");
    std::vector<cplx> amps(shape.total_dim());
    amps[index] = 1.0;
    return PureState(std::move(shape), std::move(amps));
}

cplx inner_product(const PureState& a, const PureState& b) {
    if (a.shape() != b.shape())
        throw ValidationError("inner_product: shape mismatch");
    cplx acc = 0.0;
    for (std::uint64_t i = 0; i < a.dim(); ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

PureState tensor_product(const PureState& a, const PureState& b) {
    std::vector<int> dims = a.shape().dims();
    dims.insert(dims.end(), b.shape().dims().begin(), b.shape().dims().end());
    Shape shape(std::move(dims));  // throws CapacityError on overflow
    std::vector<cplx> amps(shape.total_dim());
    const std::uint64_t db = b.dim();
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        const cplx ai = a[i];
        if (ai == cplx{}) continue;
        cplx* dst = amps.data() + i * db;
        for (std::uint64_t j = 0; j < db; ++j) dst[j] = ai * b[j];
    }
    return PureState(std::move(shape), std::move(amps));
}

PureState permute_parties(const PureState& s, std::span<const int> perm) {
    const int n = s.shape().num_parties();
    if (static_cast<int>(perm.size()) != n)
        throw ValidationError("permute_parties: permutation length mismatch");
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p])
            throw ValidationError("permute_parties: not a permutation of [0, n)");
        seen[p] = true;
    }
    std::vector<int> dims(n);
    for (int k = 0; k < n; ++k) dims[k] = s.shape().dim(perm[k]);
    Shape out_shape(std::move(dims));

    // destination stride of each source party
    std::vector<std::uint64_t> dst_stride(n);
    for (int k = 0; k < n; ++k) dst_stride[perm[k]] = out_shape.stride(k);

    std::vector<cplx> amps(out_shape.total_dim());
    std::vector<int> digits(n, 0);
    std::uint64_t dst = 0;
    const std::uint64_t total = s.dim();
    for (std::uint64_t src = 0; src < total; ++src) {
        amps[dst] = s[src];
        for (int k = n - 1; k >= 0; --k) {
            dst += dst_stride[k];
            if (++digits[k] < s.shape().dim(k)) break;
            digits[k] = 0;
            dst -= static_cast<std::uint64_t>(s.shape().dim(k)) * dst_stride[k];
        }
    }
    return PureState(std::move(out_shape), std::move(amps));
}

CMatrix reshape_bipartition(const PureState& s, const PartySubset& subset) {
    BipartitionIndexer ix(s.shape(), subset);
    CMatrix m(ix.row_dim(), ix.col_dim());
    for (std::uint64_t r = 0; r < ix.row_dim(); ++r)
        for (std::uint64_t c = 0; c < ix.col_dim(); ++c)
            m.at(r, c) = s[ix.offset(r, c)];
    return m;
}

DensityBlock reduce(const PureState& s, const PartySubset& subset) {
    return reduce_cross(s, s, subset);
}

DensityBlock reduce_cross(const PureState& a, const PureState& b, const PartySubset& subset) {
    if (a.shape() != b.shape())
        throw ValidationError("reduce_cross: shape mismatch");
    BipartitionIndexer ix(a.shape(), subset);
    const std::uint64_t ds = ix.row_dim();
    const std::uint64_t dc = ix.col_dim();
    check_capacity(ds * ds, "reduce: output matrix");
    CMatrix g(ds, ds);
    for (std::uint64_t r1 = 0; r1 < ds; ++r1) {
        for (std::uint64_t r2 = 0; r2 < ds; ++r2) {
            cplx acc = 0.0;
            for (std::uint64_t c = 0; c < dc; ++c)
                acc += a[ix.offset(r1, c)] * std::conj(b[ix.offset(r2, c)]);
            g.at(r1, r2) = acc;
        }
    }
    return DensityBlock{subset, std::move(g)};
}

DensityBlock oracle_reduce(const PureState& s, const PartySubset& subset) {
    if (s.dim() > 10000)
        throw CapacityError("oracle_reduce: total dimension above the 10^4 test-scale guard");
    subset.validate_against(s.shape());
    if (subset.size() == 0 || subset.size() == s.shape().num_parties())
        throw ValidationError("oracle_reduce: subset must be proper and non-empty");

    const Shape& shape = s.shape();
    const int n = shape.num_parties();
    const std::vector<int>& kept = subset.parties();
    const std::vector<int> traced = subset.complement(shape).parties();

    std::uint64_t ds = 1;
    for (int p : kept) ds *= static_cast<std::uint64_t>(shape.dim(p));
    CMatrix rho(ds, ds);

    // Walk every pair of full multi-indices that agree on the traced
    // parties, assembling indices digit by digit. Deliberately naive.
    std::vector<int> row(kept.size(), 0), col(kept.size(), 0), rest(traced.size(), 0);
    std::vector<int> multi_a(n), multi_b(n);
    std::uint64_t r1 = 0;
    do {
        std::uint64_t r2 = 0;
        do {
            do {
                for (std::size_t k = 0; k < kept.size(); ++k) {
                    multi_a[kept[k]] = row[k];
                    multi_b[kept[k]] = col[k];
                }
                for (std::size_t k = 0; k < traced.size(); ++k) {
                    multi_a[traced[k]] = rest[k];
                    multi_b[traced[k]] = rest[k];
                }
                const cplx va = s[shape.linear_index(multi_a)];
                const cplx vb = s[shape.linear_index(multi_b)];
                rho.at(r1, r2) += va * std::conj(vb);

                int k = static_cast<int>(traced.size()) - 1;
                while (k >= 0 && ++rest[k] == shape.dim(traced[k])) rest[k--] = 0;
                if (k < 0) break;
            } while (true);

            int k = static_cast<int>(kept.size()) - 1;
            while (k >= 0 && ++col[k] == shape.dim(kept[k])) col[k--] = 0;
            ++r2;
            if (k < 0) break;
        } while (true);

        int k = static_cast<int>(kept.size()) - 1;
        while (k >= 0 && ++row[k] == shape.dim(kept[k])) row[k--] = 0;
        ++r1;
        if (k < 0) break;
    } while (true);

    return DensityBlock{subset, std::move(rho)};
}

}  // namespace forge
