#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "forge/subspace.hpp"

namespace forge {

// Declared parameters of a code ((n, K, d))_D.
struct CodeParams {
    int n = 0;
    long long K = 0;
    int d = 0;
    int D = 0;

    bool is_qmds() const;  // K saturates D^(n - 2(d-1))
};

// A code together with its materialized subspace.
struct MaterializedCode {
    CodeParams params;
    Subspace space;
};

struct CombinePrediction {
    int l = 0;
    long long dim = 0;
    int n1 = 0, r1 = 0, d1 = 0;
    int n2 = 0, r2 = 0, d2 = 0;
    int alpha = 0, beta = 0;
};

// Tensor product of two subspaces: all pairwise products of basis vectors.
// Claimed uniformity becomes min of the operands' claims when both are set.
Subspace glue(const Subspace& w1, const Subspace& w2);

// Party elimination: contracts the given party against an orthonormal basis
// of C^d (computational by default), returning the d*K vectors
// sqrt(d) <v_j | psi_s>, ordered j-major. Requires a claimed uniformity
// >= 1 on the input; the output claims one less.
Subspace eliminate(const Subspace& w, int party,
                   const std::vector<std::vector<cplx>>& elim_basis = {});

// Lexicographic split of one party of dimension d1*d2 into two parties.
// Amplitudes are untouched (pure index relabeling under the big-endian
// convention); claimed uniformity carries over.
Subspace split(const Subspace& w, int party, int d1, int d2);
PureState split(const PureState& s, int party, int d1, int d2);

// Inverse of split for a list of disjoint party pairs (i, j): party j is
// folded into party i as the least significant digit. Claimed uniformity is
// cleared (merging can change it in either direction).
Subspace merge(const Subspace& w, const std::vector<std::pair<int, int>>& pairs);
PureState merge(const PureState& s, const std::vector<std::pair<int, int>>& pairs);

// |phi> = K^(-1/2) sum_j |jj> on C^K x C^K.
PureState me_state(int k);

// Subspace of C^2 x C^p of dimension floor(p/2) spanned by
// (|0>|2k> + |1>|2k+1>)/sqrt(2); every unit combination is maximally
// entangled with respect to party 0.
Subspace me_subspace(int p);

// Combines two QMDS codes with equal K > 1 through a maximally entangled
// pair: (V1 (x) V2) |phi>.
PureState combine(const MaterializedCode& c1, const MaterializedCode& c2);

// Combination followed by elimination of the last `alpha` parties of code 1
// and the last `beta` parties of code 2 against the chosen per-slot bases
// (computational by default). Returns D1^alpha * D2^beta orthonormal
// vectors indexed by the elimination tuples.
Subspace combine_eliminate(const MaterializedCode& c1, const MaterializedCode& c2, int alpha,
                           int beta,
                           const std::vector<std::vector<std::vector<cplx>>>& picks1 = {},
                           const std::vector<std::vector<std::vector<cplx>>>& picks2 = {});

int predict_combine(int n1, int r1, int n2, int r2);
CombinePrediction predict_combine_eliminate(int n1, int r1, int d1, int n2, int r2, int d2,
                                            int alpha, int beta);
int predict_corollary1(int n, int d);

// Schmidt feasibility: true iff prod of the r largest local dimensions does
// not exceed the product of the rest.
bool feasibility_check(const Shape& shape, int r);

}  // namespace forge
