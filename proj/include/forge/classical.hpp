#pragma once

#include <vector>

#include "forge/field.hpp"

namespace forge {

using IntMatrix = std::vector<std::vector<int>>;

// Linear code over a finite field, described by a full-rank generator
// matrix. The parity check is derived on construction.
class ClassicalCode {
public:
    ClassicalCode(Field field, IntMatrix generator);

    const Field& field() const { return field_; }
    const IntMatrix& generator() const { return generator_; }
    const IntMatrix& parity_check() const { return parity_; }
    int length() const { return n_; }
    int dimension() const { return kappa_; }

private:
    Field field_;
    IntMatrix generator_;
    IntMatrix parity_;
    int n_, kappa_;
};

// Generalized Reed-Solomon code: rows are coordinatewise-scaled evaluations
// of 1, x, ..., x^(kappa-1) at distinct points.
ClassicalCode grs_generator(const Field& f, int n, int kappa, const std::vector<int>& points,
                            const std::vector<int>& multipliers);

// Minimum Hamming weight over all nonzero codewords; guarded to q^kappa <= 10^6.
int min_distance_bruteforce(const ClassicalCode& c);

// Euclidean self-orthogonality: G G^T = 0. The row-matrix overload accepts
// an empty matrix (vacuously true).
bool self_orthogonality_check(const ClassicalCode& c);
bool self_orthogonality_check(const Field& f, const IntMatrix& rows);

// Row-space helpers over a field.
int gf_rank(const Field& f, IntMatrix m);
IntMatrix gf_nullspace(const Field& f, const IntMatrix& m);  // basis of right null space
IntMatrix gf_rref(const Field& f, IntMatrix m);              // reduced row echelon, zero rows dropped

}  // namespace forge
