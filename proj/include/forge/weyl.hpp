#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "forge/matrix.hpp"
#include "forge/shape.hpp"

namespace forge {

// Tensor product of per-party shift/clock powers X^a Z^b, with
// X|j> = |j+1 mod d>, Z|j> = w^j |j>, w = exp(2*pi*i/d), plus a global
// phase. Phases of any product of such operators live in the cyclic group
// of 2L-th roots of unity, L = lcm of the local dimensions, so they are
// tracked exactly as integer exponents.
struct WeylOperator {
    Shape shape;
    std::vector<int> x_exp;  // a_i in [0, d_i)
    std::vector<int> z_exp;  // b_i in [0, d_i)
    int phase_exp = 0;       // exponent of the 2L-th root of unity

    WeylOperator(Shape s, std::vector<int> a, std::vector<int> b, int phase = 0);

    static WeylOperator identity(Shape s);

    int weight() const;
    bool is_identity_word() const;  // all exponents zero (phase ignored)
};

// 2L, the order of the phase group for this shape.
int phase_denominator(const Shape& shape);

WeylOperator weyl_mul(const WeylOperator& g, const WeylOperator& h);
WeylOperator weyl_pow(const WeylOperator& g, int k);

// exp(2*pi*i * num / den)
cplx root_of_unity(int num, int den);

// Action on one computational basis vector: |j> -> phase * |target>.
// Returns the target index; *phase_exp_out accumulates the exponent.
std::uint64_t weyl_action_on_basis(const WeylOperator& g, std::uint64_t j, int* phase_exp_out);

// Monomial matrix form: column j maps to row target[j] with factor phase[j].
struct MonomialOp {
    std::vector<std::uint64_t> target;
    std::vector<cplx> phase;

    void apply(std::span<const cplx> in, std::span<cplx> out) const;
    CMatrix to_matrix() const;
};

// Guarded to total dimension <= 10^6.
MonomialOp weyl_matrix(const WeylOperator& g);

// Symplectic product sum_i (a_i b'_i - b_i a'_i) mod p for a homogeneous
// prime-dimension shape; zero iff the operators commute.
int symplectic_product(const WeylOperator& g, const WeylOperator& h, int p);

}  // namespace forge
