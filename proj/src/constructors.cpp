#include "forge/constructors.hpp"

#include <algorithm>
#include <cmath>

#include "forge/errors.hpp"
#include "forge/indexer.hpp"
#include "forge/tolerances.hpp"

namespace forge {

namespace {

// orthonormality of a user-supplied elimination basis of C^d
void validate_local_basis(const std::vector<std::vector<cplx>>& basis, int d, const char* who) {
    if (static_cast<int>(basis.size()) != d)
        throw ValidationError(std::string(who) + ": elimination basis must have d vectors");
    for (const auto& v : basis)
        if (static_cast<int>(v.size()) != d)
            throw ValidationError(std::string(who) + ": elimination vector length mismatch");
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            cplx g = 0.0;
            for (int t = 0; t < d; ++t) g += std::conj(basis[i][t]) * basis[j][t];
            const double target = i == j ? 1.0 : 0.0;
            if (std::abs(g - target) > kOrthoTol)
                throw ValidationError(std::string(who) + ": elimination basis not orthonormal");
        }
}

std::vector<std::vector<cplx>> computational_basis(int d) {
    std::vector<std::vector<cplx>> basis(d, std::vector<cplx>(d));
    for (int j = 0; j < d; ++j) basis[j][j] = 1.0;
    return basis;
}

// <v| psi> on one party: returns the amplitude vector over the remaining
// parties (unnormalized partial scalar product).
std::vector<cplx> contract_party(const PureState& s, int party, const std::vector<cplx>& bra) {
    const Shape& shape = s.shape();
    BipartitionIndexer ix(shape, PartySubset({party}));
    const std::uint64_t d = ix.row_dim();
    const std::uint64_t rest = ix.col_dim();
    std::vector<cplx> out(rest);
    for (std::uint64_t j = 0; j < d; ++j) {
        const cplx c = std::conj(bra[j]);
        if (c == cplx{}) continue;
        for (std::uint64_t u = 0; u < rest; ++u) out[u] += c * s[ix.offset(j, u)];
    }
    return out;
}

Shape shape_without_party(const Shape& shape, int party) {
    std::vector<int> dims;
    for (int p = 0; p < shape.num_parties(); ++p)
        if (p != party) dims.push_back(shape.dim(p));
    return Shape(std::move(dims));
}

}  // namespace

bool CodeParams::is_qmds() const {
    if (n <= 0 || K <= 0 || d < 1 || D < 2) return false;
    const int exponent = n - 2 * (d - 1);
    if (exponent < 0) return false;
    long long bound = 1;
    for (int i = 0; i < exponent; ++i) {
        if (bound > (1LL << 62) / D) return false;
        bound *= D;
    }
    return K == bound;
}

Subspace glue(const Subspace& w1, const Subspace& w2) {
    std::vector<PureState> basis;
    basis.reserve(static_cast<std::size_t>(w1.dimension()) * w2.dimension());
    for (int i = 0; i < w1.dimension(); ++i)
        for (int j = 0; j < w2.dimension(); ++j)
            basis.push_back(tensor_product(w1.basis(i), w2.basis(j)));
    std::optional<int> claim;
    if (w1.claimed_uniformity() && w2.claimed_uniformity())
        claim = std::min(*w1.claimed_uniformity(), *w2.claimed_uniformity());
    Shape shape = basis.front().shape();
    return Subspace(std::move(shape), std::move(basis), claim);
}

Subspace eliminate(const Subspace& w, int party, const std::vector<std::vector<cplx>>& elim_basis) {
    const Shape& shape = w.shape();
    if (party < 0 || party >= shape.num_parties())
        throw ValidationError("eliminate: party out of range");
    if (!w.claimed_uniformity() || *w.claimed_uniformity() < 1)
        throw PreconditionError(
            "eliminate: input must carry a claimed uniformity of at least 1");
    const int d = shape.dim(party);
    std::vector<std::vector<cplx>> basis = elim_basis;
    if (basis.empty())
        basis = computational_basis(d);
    else
        validate_local_basis(basis, d, "eliminate");

    const double scale = std::sqrt(static_cast<double>(d));
    std::vector<PureState> out;
    out.reserve(static_cast<std::size_t>(d) * w.dimension());
    Shape out_shape = shape_without_party(shape, party);
    for (int j = 0; j < d; ++j) {
        for (int s = 0; s < w.dimension(); ++s) {
            std::vector<cplx> amps = contract_party(w.basis(s), party, basis[j]);
            for (cplx& a : amps) a *= scale;
            out.emplace_back(out_shape, std::move(amps));
        }
    }
    const int claim = *w.claimed_uniformity() - 1;
    return Subspace(std::move(out_shape), std::move(out), claim);
}

PureState split(const PureState& s, int party, int d1, int d2) {
    const Shape& shape = s.shape();
    if (party < 0 || party >= shape.num_parties())
        throw ValidationError("split: party out of range");
    if (d1 < 2 || d2 < 2 || d1 * d2 != shape.dim(party))
        throw ValidationError("split: " + std::to_string(shape.dim(party)) +
                              " does not factor as " + std::to_string(d1) + "*" +
                              std::to_string(d2));
    std::vector<int> dims;
    for (int p = 0; p < shape.num_parties(); ++p) {
        if (p == party) {
            dims.push_back(d1);
            dims.push_back(d2);
        } else {
            dims.push_back(shape.dim(p));
        }
    }
    // big-endian convention: |k*d2 + m> -> |k>|m> is the identity on linear
    // indices, so amplitudes transfer unchanged
    return PureState(Shape(std::move(dims)), s.amplitudes());
}

Subspace split(const Subspace& w, int party, int d1, int d2) {
    std::vector<PureState> basis;
    basis.reserve(w.dimension());
    for (int j = 0; j < w.dimension(); ++j) basis.push_back(split(w.basis(j), party, d1, d2));
    Shape shape = basis.front().shape();
    return Subspace(std::move(shape), std::move(basis), w.claimed_uniformity());
}

PureState merge(const PureState& s, const std::vector<std::pair<int, int>>& pairs) {
    const Shape& shape = s.shape();
    const int n = shape.num_parties();
    std::vector<int> partner(n, -1);
    std::vector<bool> is_second(n, false);
    for (const auto& [i, j] : pairs) {
        if (i < 0 || i >= n || j < 0 || j >= n || i == j)
            throw ValidationError("merge: bad party pair");
        if (partner[i] != -1 || partner[j] != -1 || is_second[i] || is_second[j])
            throw ValidationError("merge: overlapping pairs");
        partner[i] = j;
        is_second[j] = true;
    }

    // result parties: original order with each second party folded into its
    // partner as the least significant digit
    std::vector<int> dims;
    std::vector<std::uint64_t> dst_stride(n, 0);
    std::vector<int> order;  // first-party (or singleton) indices in output order
    for (int p = 0; p < n; ++p) {
        if (is_second[p]) continue;
        order.push_back(p);
        dims.push_back(partner[p] >= 0 ? shape.dim(p) * shape.dim(partner[p]) : shape.dim(p));
    }
    Shape out_shape(std::move(dims));
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int p = order[k];
        if (partner[p] >= 0) {
            dst_stride[p] = out_shape.stride(static_cast<int>(k)) *
                            static_cast<std::uint64_t>(shape.dim(partner[p]));
            dst_stride[partner[p]] = out_shape.stride(static_cast<int>(k));
        } else {
            dst_stride[p] = out_shape.stride(static_cast<int>(k));
        }
    }

    std::vector<cplx> amps(out_shape.total_dim());
    std::vector<int> digits(n, 0);
    std::uint64_t dst = 0;
    for (std::uint64_t src = 0; src < s.dim(); ++src) {
        amps[dst] = s[src];
        for (int k = n - 1; k >= 0; --k) {
            dst += dst_stride[k];
            if (++digits[k] < shape.dim(k)) break;
            digits[k] = 0;
            dst -= static_cast<std::uint64_t>(shape.dim(k)) * dst_stride[k];
        }
    }
    return PureState(std::move(out_shape), std::move(amps));
}

Subspace merge(const Subspace& w, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<PureState> basis;
    basis.reserve(w.dimension());
    for (int j = 0; j < w.dimension(); ++j) basis.push_back(merge(w.basis(j), pairs));
    Shape shape = basis.front().shape();
    return Subspace(std::move(shape), std::move(basis), std::nullopt);
}

PureState me_state(int k) {
    if (k < 2) throw ValidationError("me_state: K must be at least 2");
    Shape shape({k, k});
    std::vector<cplx> amps(shape.total_dim());
    const double a = 1.0 / std::sqrt(static_cast<double>(k));
    for (int j = 0; j < k; ++j) amps[static_cast<std::uint64_t>(j) * k + j] = a;
    return PureState(std::move(shape), std::move(amps));
}

Subspace me_subspace(int p) {
    if (p < 2) throw ValidationError("me_subspace: p must be at least 2");
    Shape shape({2, p});
    const int dim = p / 2;
    const double a = 1.0 / std::sqrt(2.0);
    std::vector<PureState> basis;
    basis.reserve(dim);
    for (int k = 0; k < dim; ++k) {
        std::vector<cplx> amps(shape.total_dim());
        amps[2 * k] = a;          // |0>|2k>
        amps[p + 2 * k + 1] = a;  // |1>|2k+1>
        basis.emplace_back(shape, std::move(amps));
    }
    return Subspace(std::move(shape), std::move(basis));
}

namespace {

void require_combinable(const MaterializedCode& c1, const MaterializedCode& c2) {
    if (c1.params.K != c2.params.K)
        throw PreconditionError("combine: codes must have equal subspace dimension K");
    if (c1.params.K <= 1)
        throw PreconditionError("combine: K must exceed 1");
    if (!c1.params.is_qmds() || !c2.params.is_qmds())
        throw PreconditionError(
            "combine: both codes must be QMDS (K = D^(n-2(d-1))); the projector "
            "reduction property the construction relies on fails otherwise");
    if (c1.space.dimension() != c1.params.K || c2.space.dimension() != c2.params.K)
        throw ValidationError("combine: materialized dimension does not match params");
}

}  // namespace

PureState combine(const MaterializedCode& c1, const MaterializedCode& c2) {
    require_combinable(c1, c2);
    const long long k = c1.params.K;
    // (V1 (x) V2) sum_j |jj> / sqrt(K)
    std::vector<int> dims = c1.space.shape().dims();
    dims.insert(dims.end(), c2.space.shape().dims().begin(), c2.space.shape().dims().end());
    Shape shape(std::move(dims));
    std::vector<cplx> amps(shape.total_dim());
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    const std::uint64_t d2 = c2.space.shape().total_dim();
    for (long long j = 0; j < k; ++j) {
        const PureState& u = c1.space.basis(static_cast<int>(j));
        const PureState& v = c2.space.basis(static_cast<int>(j));
        for (std::uint64_t x = 0; x < u.dim(); ++x) {
            const cplx ux = u[x] * scale;
            if (ux == cplx{}) continue;
            cplx* dst = amps.data() + x * d2;
            for (std::uint64_t y = 0; y < d2; ++y) dst[y] += ux * v[y];
        }
    }
    return PureState(std::move(shape), std::move(amps));
}

Subspace combine_eliminate(const MaterializedCode& c1, const MaterializedCode& c2, int alpha,
                           int beta,
                           const std::vector<std::vector<std::vector<cplx>>>& picks1,
                           const std::vector<std::vector<std::vector<cplx>>>& picks2) {
    require_combinable(c1, c2);
    const int r1 = c1.params.d - 1;
    const int r2 = c2.params.d - 1;
    if (alpha < 0 || alpha > r1 || beta < 0 || beta > r2)
        throw PreconditionError("combine_eliminate: need 0 <= alpha <= r1 and 0 <= beta <= r2");

    auto slot_bases = [](const std::vector<std::vector<std::vector<cplx>>>& picks, int count,
                         int d, const char* who) {
        std::vector<std::vector<std::vector<cplx>>> out;
        if (picks.empty()) {
            out.assign(count, computational_basis(d));
        } else {
            if (static_cast<int>(picks.size()) != count)
                throw ValidationError(std::string(who) + ": one basis per eliminated slot");
            for (const auto& b : picks) validate_local_basis(b, d, who);
            out = picks;
        }
        return out;
    };
    const auto bases1 = slot_bases(picks1, alpha, c1.params.D, "combine_eliminate");
    const auto bases2 = slot_bases(picks2, beta, c2.params.D, "combine_eliminate");

    const PureState seed = combine(c1, c2);
    const int n1 = c1.params.n;
    const int n2 = c2.params.n;

    long long out_dim = 1;
    for (int t = 0; t < alpha; ++t) out_dim *= c1.params.D;
    for (int t = 0; t < beta; ++t) out_dim *= c2.params.D;

    std::vector<int> tuple(alpha + beta, 0);
    std::vector<PureState> basis;
    basis.reserve(out_dim);
    std::optional<Shape> out_shape;
    for (long long idx = 0; idx < out_dim; ++idx) {
        // decode the elimination tuple, code-1 slots most significant
        long long t = idx;
        for (int s = alpha + beta - 1; s >= 0; --s) {
            const int d = s < alpha ? c1.params.D : c2.params.D;
            tuple[s] = static_cast<int>(t % d);
            t /= d;
        }
        PureState cur = seed;
        // eliminate last beta parties of code 2 first (highest indices), then
        // the last alpha parties of code 1
        for (int s = beta - 1; s >= 0; --s) {
            const int party = n1 + n2 - (beta - s);
            std::vector<cplx> amps =
                contract_party(cur, party, bases2[s][tuple[alpha + s]]);
            for (cplx& a : amps) a *= std::sqrt(static_cast<double>(c2.params.D));
            cur = PureState(shape_without_party(cur.shape(), party), std::move(amps));
        }
        for (int s = alpha - 1; s >= 0; --s) {
            const int party = n1 - (alpha - s);
            std::vector<cplx> amps = contract_party(cur, party, bases1[s][tuple[s]]);
            for (cplx& a : amps) a *= std::sqrt(static_cast<double>(c1.params.D));
            cur = PureState(shape_without_party(cur.shape(), party), std::move(amps));
        }
        out_shape = cur.shape();
        basis.push_back(std::move(cur));
    }
    const CombinePrediction pred = predict_combine_eliminate(
        n1, r1, c1.params.D, n2, r2, c2.params.D, alpha, beta);
    return Subspace(*out_shape, std::move(basis), pred.l);
}

int predict_combine(int n1, int r1, int n2, int r2) {
    if (n1 <= 0 || n2 <= 0 || r1 < 0 || r2 < 0)
        throw PreconditionError("predict_combine: parameters must be positive");
    return std::min({n1 - r1, n2 - r2, r1 + r2 + 1});
}

CombinePrediction predict_combine_eliminate(int n1, int r1, int d1, int n2, int r2, int d2,
                                            int alpha, int beta) {
    if (alpha < 0 || alpha > r1 || beta < 0 || beta > r2)
        throw PreconditionError("predict_combine_eliminate: need 0 <= alpha <= r1, 0 <= beta <= r2");
    if (n1 <= 0 || n2 <= 0 || d1 < 2 || d2 < 2)
        throw PreconditionError("predict_combine_eliminate: parameters must be positive");
    CombinePrediction p;
    p.n1 = n1;
    p.r1 = r1;
    p.d1 = d1;
    p.n2 = n2;
    p.r2 = r2;
    p.d2 = d2;
    p.alpha = alpha;
    p.beta = beta;
    p.l = std::min({n1 - r1 - alpha, n2 - r2 - beta, r1 + r2 + 1 - alpha - beta});
    p.dim = 1;
    for (int t = 0; t < alpha; ++t) p.dim *= d1;
    for (int t = 0; t < beta; ++t) p.dim *= d2;
    return p;
}

int predict_corollary1(int n, int d) {
    if (n <= 0 || d < 1) throw PreconditionError("predict_corollary1: parameters must be positive");
    return std::min(n - d + 2, 2 * d);
}

bool feasibility_check(const Shape& shape, int r) {
    const int n = shape.num_parties();
    if (r < 1 || r >= n) throw PreconditionError("feasibility_check: r must satisfy 1 <= r < n");
    std::vector<int> dims = shape.dims();
    std::sort(dims.begin(), dims.end(), std::greater<int>());
    unsigned __int128 top = 1, rest = 1;
    for (int i = 0; i < n; ++i) {
        if (i < r)
            top *= static_cast<unsigned>(dims[i]);
        else
            rest *= static_cast<unsigned>(dims[i]);
    }
    return top <= rest;
}

}  // namespace forge
