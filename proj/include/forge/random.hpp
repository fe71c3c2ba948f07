#pragma once

#include <cstdint>
#include <vector>

#include "forge/state.hpp"
#include "forge/subspace.hpp"

namespace forge {

// Deterministic random source. Gaussian samples are produced by an explicit
// Box-Muller transform over the raw 64-bit stream so results do not depend
// on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64();
    double uniform();   // [0, 1)
    double gaussian();  // standard normal
    cplx gaussian_cplx();

    // Derives an independent deterministic stream for a labeled sub-task.
    Rng fork(std::uint64_t label) const;

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

PureState random_state(const Shape& shape, Rng& rng);

// Random unit vector in the span of the subspace basis.
PureState random_combination(const Subspace& w, Rng& rng);

// Random orthonormal basis of C^d (Gram-Schmidt on Gaussian vectors).
std::vector<std::vector<cplx>> random_orthonormal_basis(int d, Rng& rng);

}  // namespace forge
