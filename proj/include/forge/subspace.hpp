#pragma once

#include <optional>
#include <vector>

#include "forge/state.hpp"

namespace forge {

// Orthonormal list of pure states over one shape. The basis doubles as an
// encoding isometry: column j of the isometry is basis(j).
class Subspace {
public:
    Subspace(Shape shape, std::vector<PureState> basis,
             std::optional<int> claimed_uniformity = std::nullopt);

    static Subspace from_state(PureState s, std::optional<int> claimed_uniformity = std::nullopt);
    // Full computational basis of the given shape (identity isometry).
    static Subspace full_space(Shape shape);

    const Shape& shape() const { return shape_; }
    int dimension() const { return static_cast<int>(basis_.size()); }
    const PureState& basis(int j) const { return basis_.at(j); }
    const std::vector<PureState>& basis() const { return basis_; }
    std::optional<int> claimed_uniformity() const { return claimed_uniformity_; }

    Subspace with_claimed_uniformity(std::optional<int> r) const;

    // Sum of dyads: the orthogonal projector onto the subspace.
    CMatrix projector() const;

private:
    Shape shape_;
    std::vector<PureState> basis_;
    std::optional<int> claimed_uniformity_;
};

// Replaces the target parties (merged into one index in ascending party
// order) by the output parties of V, inserted at the first target's
// position. The merged index j enters V as the j-th input basis vector;
// this canonical embedding requires prod of target dims <= dim(V).
PureState apply_isometry(const Subspace& V, const PureState& s, const PartySubset& targets);
Subspace apply_isometry(const Subspace& V, const Subspace& W, const PartySubset& targets);

}  // namespace forge
