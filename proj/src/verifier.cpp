#include "forge/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "forge/constructors.hpp"
#include "forge/errors.hpp"
#include "forge/indexer.hpp"
#include "forge/random.hpp"
#include "forge/weyl.hpp"
#include "parallel_for.hpp"

namespace forge {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kMaxCheckCost = 1e12;          // rough op-count refusal threshold
constexpr std::uint64_t kMaxWeylTerms = 10000000;  // pure-code enumeration guard
constexpr std::size_t kKeepSubsetDeviations = 4096;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// max |rho_S - (tr/dim) I| for the reduction of `a` against `b` conjugate.
// dev_offdiag treats the target as zero (cross-reduction of distinct basis
// vectors). Works row by row so oversized subset sides never materialize.
double reduction_deviation(const PureState& a, const PureState& b, const BipartitionIndexer& ix,
                           bool against_identity) {
    const std::uint64_t ds = ix.row_dim();
    const std::uint64_t dc = ix.col_dim();
    double scale = 0.0;
    if (against_identity) {
        cplx tr = 0.0;
        for (std::uint64_t r = 0; r < ds; ++r) {
            cplx acc = 0.0;
            for (std::uint64_t c = 0; c < dc; ++c)
                acc += a[ix.offset(r, c)] * std::conj(b[ix.offset(r, c)]);
            tr += acc;
        }
        scale = tr.real() / static_cast<double>(ds);
    }
    double dev = 0.0;
    for (std::uint64_t r1 = 0; r1 < ds; ++r1) {
        for (std::uint64_t r2 = 0; r2 < ds; ++r2) {
            cplx acc = 0.0;
            for (std::uint64_t c = 0; c < dc; ++c)
                acc += a[ix.offset(r1, c)] * std::conj(b[ix.offset(r2, c)]);
            const double target = (against_identity && r1 == r2) ? scale : 0.0;
            dev = std::max(dev, std::abs(acc - target));
        }
    }
    return dev;
}

void guard_cost(double cost, const char* what) {
    if (cost > kMaxCheckCost)
        throw CapacityError(std::string(what) + ": estimated cost " + std::to_string(cost) +
                            " operations exceeds the verification guard");
}

void finalize(VerificationReport& rep, const std::vector<SubsetDeviation>& devs,
              double tolerance) {
    rep.worst_deviation = 0.0;
    bool first = true;
    for (const auto& d : devs) {
        // ties keep the first maximal subset in enumeration order
        if (first || d.deviation > rep.worst_deviation) {
            rep.worst_deviation = d.deviation;
            rep.worst_subset = d.parties;
            first = false;
        }
    }
    rep.pass = rep.worst_deviation <= tolerance;
    rep.subsets_checked = devs.size();
    if (devs.size() <= kKeepSubsetDeviations) rep.subset_deviations = devs;
}

}  // namespace

std::pair<bool, double> is_prop_identity(const CMatrix& m, double tolerance) {
    if (m.rows() != m.cols()) throw ValidationError("is_prop_identity: matrix must be square");
    const double scale = m.trace().real() / static_cast<double>(m.rows());
    double dev = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const double target = (r == c) ? scale : 0.0;
            dev = std::max(dev, std::abs(m.at(r, c) - target));
        }
    return {dev <= tolerance, dev};
}

VerificationReport state_uniformity(const PureState& s, int r, const VerifyOptions& opts,
                                    std::string target) {
    const auto start = Clock::now();
    const int n = s.shape().num_parties();
    if (r < 1 || r >= n)
        throw PreconditionError("state_uniformity: r must satisfy 1 <= r < n");

    const std::vector<PartySubset> subsets = all_subsets(n, r);
    double cost = 0.0;
    for (const PartySubset& sub : subsets) {
        const double ds = static_cast<double>(sub.dim_product(s.shape()));
        cost += ds * ds * (static_cast<double>(s.dim()) / ds);
    }
    guard_cost(cost, "state_uniformity");

    std::vector<SubsetDeviation> devs(subsets.size());
    detail::parallel_for(subsets.size(), opts.threads, [&](std::size_t i) {
        BipartitionIndexer ix(s.shape(), subsets[i]);
        devs[i] = {subsets[i].parties(), reduction_deviation(s, s, ix, true)};
    });

    VerificationReport rep;
    rep.target = std::move(target);
    rep.kind = "state_uniformity";
    rep.parameter = r;
    rep.tolerance = opts.tolerance;
    rep.seed = opts.seed;
    finalize(rep, devs, opts.tolerance);
    rep.wall_ms = elapsed_ms(start);
    return rep;
}

int max_uniformity(const PureState& s, const VerifyOptions& opts) {
    const int n = s.shape().num_parties();
    int best = 0;
    for (int r = 1; r < n; ++r) {
        if (!feasibility_check(s.shape(), r)) break;
        if (!state_uniformity(s, r, opts).pass) break;
        best = r;
    }
    return best;
}

VerificationReport subspace_uniformity(const Subspace& w, int r, const VerifyOptions& opts,
                                       std::string target) {
    const auto start = Clock::now();
    const int n = w.shape().num_parties();
    if (r < 1 || r >= n)
        throw PreconditionError("subspace_uniformity: r must satisfy 1 <= r < n");
    const int k = w.dimension();

    const std::vector<PartySubset> subsets = all_subsets(n, r);
    double cost = 0.0;
    for (const PartySubset& sub : subsets) {
        const double ds = static_cast<double>(sub.dim_product(w.shape()));
        cost += ds * static_cast<double>(w.shape().total_dim()) * k * (k + 1) / 2.0;
    }
    guard_cost(cost, "subspace_uniformity");

    std::vector<SubsetDeviation> devs(subsets.size());
    detail::parallel_for(subsets.size(), opts.threads, [&](std::size_t i) {
        BipartitionIndexer ix(w.shape(), subsets[i]);
        double dev = 0.0;
        for (int a = 0; a < k; ++a)
            for (int b = a; b < k; ++b)
                dev = std::max(dev, reduction_deviation(w.basis(a), w.basis(b), ix, a == b));
        devs[i] = {subsets[i].parties(), dev};
    });

    VerificationReport rep;
    rep.target = std::move(target);
    rep.kind = "subspace_uniformity";
    rep.parameter = r;
    rep.tolerance = opts.tolerance;
    rep.seed = opts.seed;
    rep.pairs_checked = static_cast<std::uint64_t>(k) * (k + 1) / 2 * subsets.size();
    finalize(rep, devs, opts.tolerance);
    rep.wall_ms = elapsed_ms(start);
    return rep;
}

VerificationReport verify_pure_code(const Subspace& w, int d, const VerifyOptions& opts,
                                    std::string target) {
    const auto start = Clock::now();
    if (d < 2) throw PreconditionError("verify_pure_code: d must be at least 2");
    const Shape& shape = w.shape();
    const int n = shape.num_parties();
    if (d - 1 >= n + 1)
        throw PreconditionError("verify_pure_code: d - 1 exceeds the party count");
    const int k = w.dimension();

    // enumeration guard: total operator count across weights 1..d-1
    std::vector<PartySubset> tasks;
    std::uint64_t total_ops = 0;
    for (int wgt = 1; wgt <= d - 1 && wgt <= n; ++wgt) {
        for (PartySubset& sub : all_subsets(n, wgt)) {
            std::uint64_t ops = 1;
            for (int p : sub.parties()) {
                const std::uint64_t local =
                    static_cast<std::uint64_t>(shape.dim(p)) * shape.dim(p) - 1;
                ops *= local;
                if (ops > kMaxWeylTerms) break;
            }
            total_ops += ops;
            if (total_ops > kMaxWeylTerms)
                throw CapacityError("verify_pure_code: Weyl enumeration above the 10^7 guard");
            tasks.push_back(std::move(sub));
        }
    }
    guard_cost(static_cast<double>(total_ops) * static_cast<double>(k) * (k + 1) *
                   static_cast<double>(shape.total_dim()),
               "verify_pure_code");

    std::vector<SubsetDeviation> devs(tasks.size());
    std::vector<std::uint64_t> op_counts(tasks.size(), 0);
    const std::uint64_t dim = shape.total_dim();

    detail::parallel_for(tasks.size(), opts.threads, [&](std::size_t ti) {
        const std::vector<int>& parties = tasks[ti].parties();
        const int wgt = static_cast<int>(parties.size());
        std::vector<int> tuple(wgt, 0);  // per-party codes in [0, d_i^2 - 1)
        std::vector<int> a(n, 0), b(n, 0);
        std::vector<cplx> image(dim);
        double dev = 0.0;
        std::uint64_t count = 0;
        while (true) {
            for (int t = 0; t < wgt; ++t) {
                const int di = shape.dim(parties[t]);
                const int code = tuple[t] + 1;  // skip (0,0)
                a[parties[t]] = code / di;
                b[parties[t]] = code % di;
            }
            const WeylOperator op(shape, a, b, 0);
            const MonomialOp mono = weyl_matrix(op);
            ++count;
            for (int j = 0; j < k; ++j) {
                mono.apply(w.basis(j).amplitudes(), image);
                for (int i = 0; i < k; ++i) {
                    cplx acc = 0.0;
                    const std::vector<cplx>& vi = w.basis(i).amplitudes();
                    for (std::uint64_t x = 0; x < dim; ++x) acc += std::conj(vi[x]) * image[x];
                    dev = std::max(dev, std::abs(acc));
                }
            }
            int t = wgt - 1;
            while (t >= 0) {
                const int di = shape.dim(parties[t]);
                if (++tuple[t] < di * di - 1) break;
                tuple[t] = 0;
                --t;
            }
            if (t < 0) break;
        }
        for (int p : parties) {
            a[p] = 0;
            b[p] = 0;
        }
        devs[ti] = {parties, dev};
        op_counts[ti] = count;
    });

    VerificationReport rep;
    rep.target = std::move(target);
    rep.kind = "pure_code";
    rep.parameter = d;
    rep.tolerance = opts.tolerance;
    rep.seed = opts.seed;
    rep.pairs_checked = static_cast<std::uint64_t>(k) * k;
    for (std::uint64_t c : op_counts) rep.operators_checked += c;
    finalize(rep, devs, opts.tolerance);
    rep.wall_ms = elapsed_ms(start);
    return rep;
}

VerificationReport qmds_projector_check(const Subspace& w, int d, const VerifyOptions& opts,
                                        std::string target) {
    const auto start = Clock::now();
    const Shape& shape = w.shape();
    const int n = shape.num_parties();
    if (d < 2 || d - 1 >= n)
        throw PreconditionError("qmds_projector_check: d out of range");
    const int dd = shape.dim(0);
    for (int i = 1; i < n; ++i)
        if (shape.dim(i) != dd)
            throw PreconditionError("qmds_projector_check: shape must be homogeneous");
    const int exponent = n - 2 * (d - 1);
    double singleton = exponent >= 0 ? std::pow(static_cast<double>(dd), exponent) : -1.0;
    if (singleton < 0 || static_cast<double>(w.dimension()) != singleton)
        throw PreconditionError(
            "qmds_projector_check: dimension does not saturate the Singleton bound; "
            "the projector reduction property holds only for QMDS codes");

    const int r = n - (d - 1);
    const std::vector<PartySubset> subsets = all_subsets(n, r);
    double cost = 0.0;
    for (const PartySubset& sub : subsets) {
        const double ds = static_cast<double>(sub.dim_product(shape));
        cost += ds * ds * (static_cast<double>(shape.total_dim()) / ds) * w.dimension();
    }
    guard_cost(cost, "qmds_projector_check");

    std::vector<SubsetDeviation> devs(subsets.size());
    detail::parallel_for(subsets.size(), opts.threads, [&](std::size_t i) {
        BipartitionIndexer ix(shape, subsets[i]);
        const std::uint64_t ds = ix.row_dim();
        const std::uint64_t dc = ix.col_dim();
        CMatrix sum(ds, ds);
        for (int s = 0; s < w.dimension(); ++s) {
            const PureState& v = w.basis(s);
            for (std::uint64_t r1 = 0; r1 < ds; ++r1)
                for (std::uint64_t r2 = 0; r2 < ds; ++r2) {
                    cplx acc = 0.0;
                    for (std::uint64_t c = 0; c < dc; ++c)
                        acc += v[ix.offset(r1, c)] * std::conj(v[ix.offset(r2, c)]);
                    sum.at(r1, r2) += acc;
                }
        }
        devs[i] = {subsets[i].parties(), is_prop_identity(sum, opts.tolerance).second};
    });

    VerificationReport rep;
    rep.target = std::move(target);
    rep.kind = "qmds_projector";
    rep.parameter = d;
    rep.tolerance = opts.tolerance;
    rep.seed = opts.seed;
    finalize(rep, devs, opts.tolerance);
    rep.wall_ms = elapsed_ms(start);
    return rep;
}

VerificationReport me_subspace_check(const Subspace& w, int party, int trials,
                                     const VerifyOptions& opts, std::string target) {
    const auto start = Clock::now();
    if (trials < 1) throw PreconditionError("me_subspace_check: trials must be >= 1");
    if (party < 0 || party >= w.shape().num_parties())
        throw ValidationError("me_subspace_check: party out of range");
    const PartySubset sub({party});
    BipartitionIndexer ix(w.shape(), sub);
    const int k = w.dimension();

    double dev = 0.0;
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b)
            dev = std::max(dev, reduction_deviation(w.basis(a), w.basis(b), ix, a == b));

    Rng rng(opts.seed);
    for (int t = 0; t < trials; ++t) {
        const PureState v = random_combination(w, rng);
        dev = std::max(dev, reduction_deviation(v, v, ix, true));
    }

    VerificationReport rep;
    rep.target = std::move(target);
    rep.kind = "me_subspace";
    rep.parameter = party;
    rep.tolerance = opts.tolerance;
    rep.seed = opts.seed;
    rep.trials = trials;
    rep.pairs_checked = static_cast<std::uint64_t>(k) * (k + 1) / 2;
    rep.subsets_checked = 1;
    rep.worst_deviation = dev;
    rep.worst_subset = sub.parties();
    rep.pass = dev <= opts.tolerance;
    rep.subset_deviations = {{sub.parties(), dev}};
    rep.wall_ms = elapsed_ms(start);
    return rep;
}

}  // namespace forge
