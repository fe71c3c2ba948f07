#include "forge/subspace.hpp"

#include <cmath>

#include "forge/capacity.hpp"
#include "forge/errors.hpp"
#include "forge/indexer.hpp"
#include "forge/tolerances.hpp"

namespace forge {

Subspace::Subspace(Shape shape, std::vector<PureState> basis,
                   std::optional<int> claimed_uniformity)
    : shape_(std::move(shape)),
      basis_(std::move(basis)),
      claimed_uniformity_(claimed_uniformity) {
    if (basis_.empty()) throw ValidationError("Subspace: empty basis");
    if (basis_.size() > shape_.total_dim())
        throw ValidationError("Subspace: more basis vectors than the space dimension");
    for (const PureState& v : basis_) {
        if (v.shape() != shape_)
            throw ValidationError("Subspace: basis vector shape mismatch");
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        for (std::size_t j = i; j < basis_.size(); ++j) {
            const cplx g = inner_product(basis_[i], basis_[j]);
            const double target = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - target) > kOrthoTol)
                throw ValidationError("Subspace: basis is not orthonormal (pair " +
                                      std::to_string(i) + "," + std::to_string(j) +
                                      " deviates by " + std::to_string(std::abs(g - target)) +
                                      ")");
        }
    }
}

Subspace Subspace::from_state(PureState s, std::optional<int> claimed_uniformity) {
    Shape shape = s.shape();
    std::vector<PureState> basis;
    basis.push_back(std::move(s));
    return Subspace(std::move(shape), std::move(basis), claimed_uniformity);
}

Subspace Subspace::full_space(Shape shape) {
    std::vector<PureState> basis;
    basis.reserve(shape.total_dim());
    for (std::uint64_t j = 0; j < shape.total_dim(); ++j)
        basis.push_back(PureState::basis_state(shape, j));
    return Subspace(std::move(shape), std::move(basis), 0);
}

Subspace Subspace::with_claimed_uniformity(std::optional<int> r) const {
    return Subspace(shape_, basis_, r);
}

CMatrix Subspace::projector() const {
    const std::uint64_t d = shape_.total_dim();
    check_capacity(d * d, "Subspace::projector");
    CMatrix p(d, d);
    for (const PureState& v : basis_) {
        for (std::uint64_t r = 0; r < d; ++r) {
            const cplx vr = v[r];
            if (vr == cplx{}) continue;
            for (std::uint64_t c = 0; c < d; ++c) p.at(r, c) += vr * std::conj(v[c]);
        }
    }
    return p;
}

PureState apply_isometry(const Subspace& V, const PureState& s, const PartySubset& targets) {
    targets.validate_against(s.shape());
    if (targets.size() == 0)
        throw ValidationError("apply_isometry: empty target subset");
    const std::uint64_t merged = targets.dim_product(s.shape());
    if (merged > static_cast<std::uint64_t>(V.dimension()))
        throw DimensionError("apply_isometry: isometry input dimension " +
                             std::to_string(V.dimension()) +
                             " is smaller than the merged target dimension " +
                             std::to_string(merged));

    const Shape& in_shape = s.shape();
    const std::vector<int>& tgt = targets.parties();
    const std::vector<int> rest = targets.complement(in_shape).parties();

    // Output shape: untouched parties stay in order, V's parties replace the
    // block at the first target's position.
    std::vector<int> out_dims;
    const int insert_at = tgt.front();
    for (int p = 0; p < insert_at; ++p)
        if (!targets.contains(p)) out_dims.push_back(in_shape.dim(p));
    const std::size_t block_pos = out_dims.size();
    for (int d : V.shape().dims()) out_dims.push_back(d);
    for (int p = insert_at + 1; p < in_shape.num_parties(); ++p)
        if (!targets.contains(p)) out_dims.push_back(in_shape.dim(p));
    Shape out_shape(std::move(out_dims));

    // Offset tables: input indexed by (rest, merged target), output by
    // (rest-prefix, V index, rest-suffix).
    const std::vector<std::uint64_t> tgt_in = group_offsets(in_shape, tgt);
    const std::vector<std::uint64_t> rest_in = group_offsets(in_shape, rest);

    std::vector<int> out_prefix(block_pos), out_suffix;
    for (std::size_t k = 0; k < block_pos; ++k) out_prefix[k] = static_cast<int>(k);
    for (std::size_t k = block_pos + V.shape().num_parties(); k < static_cast<std::size_t>(out_shape.num_parties()); ++k)
        out_suffix.push_back(static_cast<int>(k));
    std::vector<int> vparties(V.shape().num_parties());
    for (std::size_t k = 0; k < vparties.size(); ++k)
        vparties[k] = static_cast<int>(block_pos + k);

    const std::vector<std::uint64_t> v_out = group_offsets(out_shape, vparties);
    // rest parties keep their relative order; prefix parties come before the
    // block, suffix after, so the rest index splits as (prefix, suffix).
    std::vector<int> out_rest(out_prefix);
    out_rest.insert(out_rest.end(), out_suffix.begin(), out_suffix.end());
    const std::vector<std::uint64_t> rest_out = group_offsets(out_shape, out_rest);

    const std::uint64_t vdim = V.shape().total_dim();
    std::vector<cplx> amps(out_shape.total_dim());
    for (std::uint64_t u = 0; u < rest_in.size(); ++u) {
        for (std::uint64_t j = 0; j < merged; ++j) {
            const cplx a = s[rest_in[u] + tgt_in[j]];
            if (a == cplx{}) continue;
            const PureState& col = V.basis(static_cast<int>(j));
            cplx* dst = amps.data();
            const std::uint64_t base = rest_out[u];
            for (std::uint64_t y = 0; y < vdim; ++y) {
                const cplx c = col[y];
                if (c != cplx{}) dst[base + v_out[y]] += a * c;
            }
        }
    }
    return PureState(std::move(out_shape), std::move(amps));
}

Subspace apply_isometry(const Subspace& V, const Subspace& W, const PartySubset& targets) {
    std::vector<PureState> basis;
    basis.reserve(W.dimension());
    for (int j = 0; j < W.dimension(); ++j)
        basis.push_back(apply_isometry(V, W.basis(j), targets));
    Shape shape = basis.front().shape();
    return Subspace(std::move(shape), std::move(basis));
}

}  // namespace forge
