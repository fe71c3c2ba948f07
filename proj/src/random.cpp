#include "forge/random.hpp"

#include <cmath>

#include "forge/errors.hpp"

namespace forge {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::uint64_t Rng::next_u64() {
    // splitmix64; deterministic and platform-independent
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return mag * std::cos(kTwoPi * u2);
}

cplx Rng::gaussian_cplx() {
    const double re = gaussian();
    const double im = gaussian();
    return cplx(re, im);
}

Rng Rng::fork(std::uint64_t label) const {
    Rng child(state_ ^ (label * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
    return child;
}

PureState random_state(const Shape& shape, Rng& rng) {
    std::vector<cplx> amps(shape.total_dim());
    double n = 0.0;
    for (cplx& a : amps) {
        a = rng.gaussian_cplx();
        n += std::norm(a);
    }
    n = std::sqrt(n);
    for (cplx& a : amps) a /= n;
    return PureState(shape, std::move(amps));
}

PureState random_combination(const Subspace& w, Rng& rng) {
    std::vector<cplx> coeff(w.dimension());
    double n = 0.0;
    for (cplx& c : coeff) {
        c = rng.gaussian_cplx();
        n += std::norm(c);
    }
    n = std::sqrt(n);
    std::vector<cplx> amps(w.shape().total_dim());
    for (int j = 0; j < w.dimension(); ++j) {
        const cplx c = coeff[j] / n;
        const PureState& v = w.basis(j);
        for (std::uint64_t i = 0; i < v.dim(); ++i) amps[i] += c * v[i];
    }
    return PureState(w.shape(), std::move(amps));
}

std::vector<std::vector<cplx>> random_orthonormal_basis(int d, Rng& rng) {
    if (d < 1) throw ValidationError("random_orthonormal_basis: d must be positive");
    std::vector<std::vector<cplx>> basis;
    while (static_cast<int>(basis.size()) < d) {
        std::vector<cplx> v(d);
        for (cplx& x : v) x = rng.gaussian_cplx();
        for (const auto& b : basis) {
            cplx overlap = 0.0;
            for (int i = 0; i < d; ++i) overlap += std::conj(b[i]) * v[i];
            for (int i = 0; i < d; ++i) v[i] -= overlap * b[i];
        }
        double n = 0.0;
        for (const cplx& x : v) n += std::norm(x);
        n = std::sqrt(n);
        if (n < 1e-8) continue;  // resample on near-degenerate draw
        for (cplx& x : v) x /= n;
        // second pass tightens orthogonality
        for (const auto& b : basis) {
            cplx overlap = 0.0;
            for (int i = 0; i < d; ++i) overlap += std::conj(b[i]) * v[i];
            for (int i = 0; i < d; ++i) v[i] -= overlap * b[i];
        }
        n = 0.0;
        for (const cplx& x : v) n += std::norm(x);
        n = std::sqrt(n);
        for (cplx& x : v) x /= n;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace forge
