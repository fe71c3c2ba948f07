#include "forge/stabilizer.hpp"

#include <cmath>

#include "forge/capacity.hpp"
#include "forge/errors.hpp"
#include "forge/tolerances.hpp"

namespace forge {

namespace {

constexpr double kDiagSkipTol = 1e-7;
constexpr double kResidualTol = 1e-7;
constexpr std::uint64_t kMaxSpaceDim = 1000000;
constexpr std::uint64_t kMaxGroupOrder = 100000;

void validate_rows(const StabilizerSpec& spec) {
    if (!is_prime(spec.p))
        throw ValidationError("StabilizerSpec: local dimension must be prime");
    if (spec.num_parties < 1)
        throw ValidationError("StabilizerSpec: at least one party required");
    for (const GeneratorRow& g : spec.generators) {
        if (static_cast<int>(g.x.size()) != spec.num_parties ||
            static_cast<int>(g.z.size()) != spec.num_parties)
            throw ValidationError("StabilizerSpec: generator row length mismatch");
        for (int i = 0; i < spec.num_parties; ++i)
            if (g.x[i] < 0 || g.x[i] >= spec.p || g.z[i] < 0 || g.z[i] >= spec.p)
                throw ValidationError("StabilizerSpec: exponent outside [0, p)");
    }
}

}  // namespace

std::uint64_t StabilizerSpec::expected_dimension() const {
    std::uint64_t k = 1;
    for (int i = 0; i < num_parties - static_cast<int>(generators.size()); ++i)
        k *= static_cast<std::uint64_t>(p);
    return k;
}

WeylOperator StabilizerSpec::generator_operator(int row) const {
    const GeneratorRow& g = generators.at(row);
    return WeylOperator(shape(), g.x, g.z, g.phase);
}

Subspace codespace_from_stabilizer(const StabilizerSpec& spec) {
    validate_rows(spec);
    const Shape shape = spec.shape();
    if (shape.total_dim() > kMaxSpaceDim)
        throw CapacityError("codespace_from_stabilizer: space dimension above the 10^6 guard");
    const int p = spec.p;
    const int nk = static_cast<int>(spec.generators.size());
    if (nk > spec.num_parties)
        throw ConstructionError("codespace_from_stabilizer: more generators than parties");
    std::uint64_t group_order = 1;
    for (int i = 0; i < nk; ++i) {
        group_order *= static_cast<std::uint64_t>(p);
        if (group_order > kMaxGroupOrder)
            throw CapacityError("codespace_from_stabilizer: group order above the 10^5 guard");
    }

    std::vector<WeylOperator> gens;
    gens.reserve(nk);
    for (int i = 0; i < nk; ++i) gens.push_back(spec.generator_operator(i));

    // commutation
    for (int i = 0; i < nk; ++i)
        for (int j = i + 1; j < nk; ++j)
            if (symplectic_product(gens[i], gens[j], p) != 0)
                throw ConstructionError("codespace_from_stabilizer: generators " +
                                        std::to_string(i) + " and " + std::to_string(j) +
                                        " do not commute");

    // independence of symplectic rows over GF(p)
    {
        const Field fp = Field::make(p, 1);
        IntMatrix rows;
        for (const WeylOperator& g : gens) {
            std::vector<int> row = g.x_exp;
            row.insert(row.end(), g.z_exp.begin(), g.z_exp.end());
            rows.push_back(std::move(row));
        }
        if (!rows.empty() && gf_rank(fp, rows) != nk)
            throw ConstructionError("codespace_from_stabilizer: dependent generator rows");
    }

    // each generator must have order exactly p (phase included)
    for (int i = 0; i < nk; ++i) {
        const WeylOperator gp = weyl_pow(gens[i], p);
        if (!gp.is_identity_word() || gp.phase_exp != 0)
            throw ConstructionError("codespace_from_stabilizer: generator " + std::to_string(i) +
                                    " does not have order " + std::to_string(p) +
                                    "; check its phase exponent");
    }

    // enumerate the group
    std::vector<WeylOperator> group;
    group.reserve(group_order);
    group.push_back(WeylOperator::identity(shape));
    for (const WeylOperator& g : gens) {
        const std::size_t base = group.size();
        WeylOperator power = g;
        for (int e = 1; e < p; ++e) {
            for (std::size_t t = 0; t < base; ++t) group.push_back(weyl_mul(group[t], power));
            if (e + 1 < p) power = weyl_mul(power, g);
        }
    }

    const std::uint64_t dim = shape.total_dim();
    const int den = phase_denominator(shape);
    std::vector<cplx> roots(den);
    for (int k = 0; k < den; ++k) roots[k] = root_of_unity(k, den);
    const double inv_order = 1.0 / static_cast<double>(group.size());

    // The X parts of the group partition the basis indices into cosets, and
    // the projector maps each coset span into itself. Extract the range
    // block by block: build the restriction of P to one coset, take the
    // span of its columns, move on.
    std::vector<std::vector<int>> xparts;
    {
        std::vector<std::vector<int>> all;
        all.reserve(group.size());
        for (const WeylOperator& g : group) all.push_back(g.x_exp);
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        xparts = std::move(all);
    }
    const int n = spec.num_parties;
    const std::uint64_t expected = spec.expected_dimension();

    std::vector<bool> visited(dim, false);
    std::vector<std::vector<cplx>> basis;
    double trace_p = 0.0;
    std::vector<int> digits(n);
    for (std::uint64_t j = 0; j < dim; ++j) {
        if (visited[j]) continue;
        // the coset through j
        shape.multi_index(j, digits);
        std::vector<std::uint64_t> orbit;
        orbit.reserve(xparts.size());
        for (const std::vector<int>& a : xparts) {
            std::uint64_t t = 0;
            for (int i = 0; i < n; ++i)
                t += static_cast<std::uint64_t>((digits[i] + a[i]) % spec.p) * shape.stride(i);
            orbit.push_back(t);
        }
        std::sort(orbit.begin(), orbit.end());
        orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
        for (std::uint64_t t : orbit) visited[t] = true;

        // block of P on the coset, columns indexed by orbit position
        const std::size_t w = orbit.size();
        auto pos = [&orbit](std::uint64_t index) {
            return static_cast<std::size_t>(
                std::lower_bound(orbit.begin(), orbit.end(), index) - orbit.begin());
        };
        std::vector<cplx> block(w * w, cplx{});
        for (const WeylOperator& g : group) {
            for (std::size_t c = 0; c < w; ++c) {
                int ph = 0;
                const std::uint64_t t = weyl_action_on_basis(g, orbit[c], &ph);
                block[pos(t) * w + c] += roots[ph];
            }
        }
        for (cplx& v : block) v *= inv_order;
        double block_trace = 0.0;
        for (std::size_t i = 0; i < w; ++i) block_trace += block[i * w + i].real();
        trace_p += block_trace;
        if (block_trace < kDiagSkipTol) continue;

        // span of the block columns, embedded into the full space
        std::vector<std::vector<cplx>> local;
        for (std::size_t c = 0; c < w; ++c) {
            std::vector<cplx> cand(w);
            for (std::size_t r = 0; r < w; ++r) cand[r] = block[r * w + c];
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& b : local) {
                    cplx overlap = 0.0;
                    for (std::size_t r = 0; r < w; ++r) overlap += std::conj(b[r]) * cand[r];
                    for (std::size_t r = 0; r < w; ++r) cand[r] -= overlap * b[r];
                }
                if (pass == 0) {
                    double nsq = 0.0;
                    for (const cplx& v : cand) nsq += std::norm(v);
                    if (nsq <= kResidualTol) {
                        cand.clear();
                        break;
                    }
                }
            }
            if (cand.empty()) continue;
            double nsq = 0.0;
            for (const cplx& v : cand) nsq += std::norm(v);
            const double inv_n = 1.0 / std::sqrt(nsq);
            for (cplx& v : cand) v *= inv_n;
            local.push_back(std::move(cand));
        }
        for (const auto& lv : local) {
            std::vector<cplx> full(dim, cplx{});
            for (std::size_t r = 0; r < w; ++r) full[orbit[r]] = lv[r];
            basis.push_back(std::move(full));
            if (basis.size() > expected)
                throw ConstructionError("codespace_from_stabilizer: extracted rank exceeds " +
                                        std::to_string(expected));
        }
    }
    if (std::abs(trace_p - static_cast<double>(expected)) > 1e-8)
        throw ConstructionError("codespace_from_stabilizer: projector trace " +
                                std::to_string(trace_p) + " does not match expected rank " +
                                std::to_string(expected) +
                                " (inconsistent generator phases?)");
    if (basis.size() != expected)
        throw ConstructionError("codespace_from_stabilizer: extracted rank " +
                                std::to_string(basis.size()) + ", expected " +
                                std::to_string(expected));

    // certify every vector against every generator
    std::vector<cplx> image(dim);
    for (const auto& v : basis) {
        for (const WeylOperator& g : gens) {
            std::fill(image.begin(), image.end(), cplx{});
            for (std::uint64_t j = 0; j < dim; ++j) {
                if (v[j] == cplx{}) continue;
                int ph = 0;
                const std::uint64_t t = weyl_action_on_basis(g, j, &ph);
                image[t] += roots[ph] * v[j];
            }
            double dev = 0.0;
            for (std::uint64_t i = 0; i < dim; ++i)
                dev = std::max(dev, std::abs(image[i] - v[i]));
            if (dev > kProjectorTol)
                throw ConstructionError(
                    "codespace_from_stabilizer: extracted vector is not stabilized "
                    "(deviation " + std::to_string(dev) + ")");
        }
    }

    std::vector<PureState> states;
    states.reserve(basis.size());
    for (auto& v : basis) states.emplace_back(shape, std::move(v));
    return Subspace(shape, std::move(states));
}

StabilizerSpec css(const IntMatrix& hx, const IntMatrix& hz, int p, int num_parties) {
    if (!is_prime(p)) throw ValidationError("css: p must be prime");
    int n = num_parties;
    for (const auto& row : hx) n = std::max(n, static_cast<int>(row.size()));
    for (const auto& row : hz) n = std::max(n, static_cast<int>(row.size()));
    if (n < 1)
        throw ValidationError("css: pass num_parties explicitly when both inputs are empty");
    const Field fp = Field::make(p, 1);
    for (const auto& rx : hx) {
        if (static_cast<int>(rx.size()) != n) throw ValidationError("css: ragged hx");
        for (const auto& rz : hz) {
            if (static_cast<int>(rz.size()) != n) throw ValidationError("css: ragged hz");
            int acc = 0;
            for (int i = 0; i < n; ++i) acc = fp.add(acc, fp.mul(((rx[i] % p) + p) % p,
                                                                 ((rz[i] % p) + p) % p));
            if (acc != 0)
                throw ValidationError("css: hx and hz are not orthogonal over GF(p)");
        }
    }
    StabilizerSpec spec;
    spec.p = p;
    spec.num_parties = n;
    for (const auto& rx : hx) {
        GeneratorRow g;
        g.x = rx;
        for (int& v : g.x) v = ((v % p) + p) % p;
        g.z.assign(n, 0);
        spec.generators.push_back(std::move(g));
    }
    for (const auto& rz : hz) {
        GeneratorRow g;
        g.x.assign(n, 0);
        g.z = rz;
        for (int& v : g.z) v = ((v % p) + p) % p;
        spec.generators.push_back(std::move(g));
    }
    return spec;
}

std::vector<std::pair<int, int>> expansion_merge_pairs(int num_parties, int m) {
    if (m != 2) throw ValidationError("expansion_merge_pairs: only m = 2 pairs supported");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < num_parties; ++i) pairs.emplace_back(2 * i, 2 * i + 1);
    return pairs;
}

StabilizerSpec expand_prime_power(const GfqStabilizerSpec& spec) {
    if (!is_prime(spec.p)) throw ValidationError("expand_prime_power: p must be prime");
    if (spec.m < 1 || spec.m > 4)
        throw ValidationError("expand_prime_power: unsupported extension degree");
    const Field f = Field::make(spec.p, spec.m, spec.modulus);
    const int q = f.size();
    for (const GfqGeneratorRow& g : spec.generators) {
        if (static_cast<int>(g.a.size()) != spec.num_parties ||
            static_cast<int>(g.b.size()) != spec.num_parties)
            throw ValidationError("expand_prime_power: generator row length mismatch");
        for (int i = 0; i < spec.num_parties; ++i)
            if (g.a[i] < 0 || g.a[i] >= q || g.b[i] < 0 || g.b[i] >= q)
                throw ValidationError("expand_prime_power: symbol outside the field");
    }

    StabilizerSpec out;
    out.p = spec.p;
    out.num_parties = spec.num_parties * spec.m;
    const int m = spec.m;

    for (const GfqGeneratorRow& g : spec.generators) {
        for (int t = 0; t < m; ++t) {
            const int scalar = f.from_coeffs([&] {
                std::vector<int> c(m, 0);
                c[t] = 1;
                return c;
            }());
            GeneratorRow row;
            row.x.assign(out.num_parties, 0);
            row.z.assign(out.num_parties, 0);
            for (int i = 0; i < spec.num_parties; ++i) {
                const int a = f.mul(scalar, g.a[i]);
                const int b = f.mul(scalar, g.b[i]);
                for (int s = 0; s < m; ++s) {
                    // sub-party s carries digit m-1-s (most significant first)
                    const int basis_elem = f.from_coeffs([&] {
                        std::vector<int> c(m, 0);
                        c[m - 1 - s] = 1;
                        return c;
                    }());
                    row.x[i * m + s] = f.coeff(a, m - 1 - s);
                    row.z[i * m + s] = f.trace(f.mul(b, basis_elem));
                }
            }
            if (spec.p == 2) {
                int c = 0;
                for (int i = 0; i < out.num_parties; ++i) c += row.x[i] * row.z[i];
                row.phase = c % 4;  // units of i; makes the row order 2
            }
            out.generators.push_back(std::move(row));
        }
    }
    return out;
}

}  // namespace forge
