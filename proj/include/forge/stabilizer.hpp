#pragma once

#include <cstdint>
#include <vector>

#include "forge/classical.hpp"
#include "forge/field.hpp"
#include "forge/subspace.hpp"
#include "forge/weyl.hpp"

namespace forge {

// One stabilizer generator as symplectic exponent rows plus a phase
// exponent over the 2p-th root of unity (relevant only for p = 2, where it
// selects the Hermitian Y convention).
struct GeneratorRow {
    std::vector<int> x;  // length n
    std::vector<int> z;  // length n
    int phase = 0;
};

// Stabilizer code over n parties of prime local dimension p.
struct StabilizerSpec {
    int p = 2;
    int num_parties = 0;
    std::vector<GeneratorRow> generators;

    Shape shape() const { return Shape(std::vector<int>(num_parties, p)); }
    std::uint64_t expected_dimension() const;  // p^(n - #generators)
    WeylOperator generator_operator(int row) const;
};

// Joint +1 eigenspace of the stabilizer group, extracted by projecting
// computational basis vectors with P = |G|^-1 sum over the group and
// orthonormalizing the survivors. Validates: generators commute, rows are
// independent, each generator has order p, and the extracted rank equals
// p^(n-#generators) exactly. Every returned vector is certified against all
// generators (g v = v). Claimed uniformity is left unset.
Subspace codespace_from_stabilizer(const StabilizerSpec& spec);

// CSS construction: X-type generators from the rows of hx, Z-type from hz.
// Requires hx hz^T = 0 over GF(p). num_parties may be omitted when at least
// one row is present; with no rows at all the result is the whole space.
StabilizerSpec css(const IntMatrix& hx, const IntMatrix& hz, int p, int num_parties = -1);

// Stabilizer data over GF(q), q = p^m, stored as per-party symbol pairs.
// Materialization goes through expansion to the prime base.
struct GfqGeneratorRow {
    std::vector<int> a;  // symbols in [0, q)
    std::vector<int> b;
};

struct GfqStabilizerSpec {
    int p = 2;
    int m = 1;
    int num_parties = 0;
    std::vector<GfqGeneratorRow> generators;
    std::vector<int> modulus;  // optional field polynomial override
};

// Expands each GF(p^m) party into m parties of dimension p. Every GF(q)
// generator row becomes m prime rows (its multiples by the coefficient
// basis); X symbols expand to base-p digits, Z symbols through the trace
// form. Sub-party 0 carries the most significant digit so that merging the
// m-tuples back reproduces the field's integer encoding.
StabilizerSpec expand_prime_power(const GfqStabilizerSpec& spec);

// Party pairs to merge after expansion to recover q-dimensional parties.
std::vector<std::pair<int, int>> expansion_merge_pairs(int num_parties, int m);

}  // namespace forge
