#pragma once

#include <complex>
#include <span>
#include <vector>

#include "forge/matrix.hpp"
#include "forge/shape.hpp"

namespace forge {

// Normalized pure state over a Shape, amplitudes in big-endian mixed-radix
// index order.
class PureState {
public:
    PureState(Shape shape, std::vector<cplx> amplitudes);

    static PureState basis_state(Shape shape, std::uint64_t index);

    const Shape& shape() const { return shape_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::uint64_t dim() const { return shape_.total_dim(); }
    const cplx& operator[](std::uint64_t i) const { return amps_[i]; }

private:
    Shape shape_;
    std::vector<cplx> amps_;
};

// Reduction of a state (or of a cross dyad) to a party subset.
struct DensityBlock {
    PartySubset subset;
    CMatrix matrix;
};

cplx inner_product(const PureState& a, const PureState& b);

PureState tensor_product(const PureState& a, const PureState& b);

// perm[k] names the original party that lands at position k of the result.
PureState permute_parties(const PureState& s, std::span<const int> perm);

// Matrix of size (prod of subset dims) x (prod of complement dims) whose
// entries are the amplitudes; M M^dagger is the reduction to the subset.
CMatrix reshape_bipartition(const PureState& s, const PartySubset& subset);

DensityBlock reduce(const PureState& s, const PartySubset& subset);
DensityBlock reduce_cross(const PureState& a, const PureState& b, const PartySubset& subset);

// Brute-force partial trace by explicit multi-index loops. Test oracle;
// guarded to total dimension <= 10^4.
DensityBlock oracle_reduce(const PureState& s, const PartySubset& subset);

}  // namespace forge
