#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "forge/errors.hpp"
#include "forge/matrix.hpp"
#include "forge/state.hpp"
#include "forge/subspace.hpp"

namespace forge {

struct VerifyOptions {
    double tolerance = 1e-9;
    int threads = 1;
    std::uint64_t seed = 1;
};

struct SubsetDeviation {
    std::vector<int> parties;
    double deviation = 0.0;
};

struct VerificationReport {
    std::string target;
    std::string kind;
    int parameter = 0;  // r or d
    double tolerance = 0.0;
    bool pass = false;
    double worst_deviation = 0.0;
    std::vector<int> worst_subset;
    std::uint64_t subsets_checked = 0;
    std::uint64_t pairs_checked = 0;
    std::uint64_t operators_checked = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;  // informational; excluded from serialized reports
    std::vector<SubsetDeviation> subset_deviations;  // populated up to a size limit
};

// Compares M against (trace(M)/dim) * I entrywise.
std::pair<bool, double> is_prop_identity(const CMatrix& m, double tolerance);

// Checks every size-r reduction of the state against the maximally mixed
// operator. Smaller-side Gram matrices are used when possible; oversized
// subset sides are streamed row by row.
VerificationReport state_uniformity(const PureState& s, int r, const VerifyOptions& opts = {},
                                    std::string target = {});

// Largest r for which state_uniformity passes, ascending from 1.
int max_uniformity(const PureState& s, const VerifyOptions& opts = {});

// Subspace uniformity: for every size-r subset, diagonal pairs of basis
// cross-reductions must be proportional to the identity and off-diagonal
// pairs must vanish. Exhaustive over basis pairs, no sampling.
VerificationReport subspace_uniformity(const Subspace& w, int r, const VerifyOptions& opts = {},
                                       std::string target = {});

// Pure-code check: |<psi_i| E |psi_j>| <= tol for every Weyl operator E of
// weight 1..d-1 (per-party exponent pairs, identity excluded) and every
// ordered basis pair, including i = j.
VerificationReport verify_pure_code(const Subspace& w, int d, const VerifyOptions& opts = {},
                                    std::string target = {});

// For QMDS-parameterized codes: every reduction of the codespace projector
// to n-(d-1) parties must be proportional to the identity.
VerificationReport qmds_projector_check(const Subspace& w, int d, const VerifyOptions& opts = {},
                                        std::string target = {});

// Maximal entanglement of a subspace with respect to one party: exact
// basis-pair criterion plus randomized unit-combination spot checks.
VerificationReport me_subspace_check(const Subspace& w, int party, int trials,
                                     const VerifyOptions& opts = {}, std::string target = {});

}  // namespace forge
