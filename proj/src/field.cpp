#include "forge/field.hpp"

#include <algorithm>

#include "forge/errors.hpp"

namespace forge {

namespace {

// polynomial arithmetic over GF(p), coefficient vectors with poly[i] = coeff of x^i
std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    std::vector<int> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    return out;
}

std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& mod, int p) {
    const int deg_mod = static_cast<int>(mod.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= deg_mod; --i) {
        const int factor = a[i];  // mod is monic
        if (factor == 0) continue;
        for (int j = 0; j <= deg_mod; ++j) {
            int& c = a[i - deg_mod + j];
            c = ((c - factor * mod[j]) % p + p) % p;
        }
    }
    a.resize(deg_mod, 0);
    return a;
}

bool poly_is_zero(const std::vector<int>& a) {
    return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

// irreducibility by trial division with all monic polynomials of degree <= deg/2
bool poly_irreducible(const std::vector<int>& f, int p) {
    const int deg = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= deg; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long idx = 0; idx < count; ++idx) {
            std::vector<int> g(d + 1, 0);
            long long t = idx;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<int>(t % p);
                t /= p;
            }
            g[d] = 1;
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

std::vector<int> default_poly(int p, int m) {
    if (p == 2 && m == 2) return {1, 1, 1};           // x^2 + x + 1
    if (p == 2 && m == 3) return {1, 1, 0, 1};        // x^3 + x + 1
    if (p == 2 && m == 4) return {1, 1, 0, 0, 1};     // x^4 + x + 1
    if (p == 3 && m == 2) return {1, 0, 1};           // x^2 + 1
    // search the lexicographically first irreducible monic polynomial
    long long count = 1;
    for (int i = 0; i < m; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
        std::vector<int> f(m + 1, 0);
        long long t = idx;
        for (int i = 0; i < m; ++i) {
            f[i] = static_cast<int>(t % p);
            t /= p;
        }
        f[m] = 1;
        if (poly_irreducible(f, p)) return f;
    }
    throw ValidationError("Field: no irreducible polynomial found");
}

}  // namespace

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Field Field::make(int p, int m, std::vector<int> irreducible_poly) {
    if (!is_prime(p)) throw ValidationError("Field: characteristic must be prime");
    if (m < 1 || m > 4) throw ValidationError("Field: degree must be in [1, 4]");
    long long q = 1;
    for (int i = 0; i < m; ++i) q *= p;
    if (q > 256) throw ValidationError("Field: size above 256 unsupported");

    Field f;
    f.p_ = p;
    f.m_ = m;
    f.q_ = static_cast<int>(q);
    if (m == 1) {
        f.poly_ = {0, 1};  // x
    } else if (irreducible_poly.empty()) {
        f.poly_ = default_poly(p, m);
    } else {
        if (static_cast<int>(irreducible_poly.size()) != m + 1 || irreducible_poly[m] != 1)
            throw ValidationError("Field: modulus must be monic of degree m");
        for (int& c : irreducible_poly) c = ((c % p) + p) % p;
        if (!poly_irreducible(irreducible_poly, p))
            throw ValidationError("Field: supplied polynomial is reducible");
        f.poly_ = std::move(irreducible_poly);
    }

    // find a multiplicative generator and fill the tables
    f.log_.assign(f.q_, -1);
    f.exp_.clear();
    for (int g = 1; g < f.q_; ++g) {
        std::vector<int> exps;
        std::vector<char> seen(f.q_, 0);
        int x = 1;
        while (!seen[x]) {
            seen[x] = 1;
            exps.push_back(x);
            x = f.mul_nolog(x, g);
        }
        if (static_cast<int>(exps.size()) == f.q_ - 1) {
            f.exp_ = std::move(exps);
            for (int k = 0; k < f.q_ - 1; ++k) f.log_[f.exp_[k]] = k;
            break;
        }
    }
    if (f.exp_.empty()) throw ValidationError("Field: no generator found");
    return f;
}

int Field::mul_nolog(int a, int b) const {
    if (m_ == 1) return (a * b) % p_;
    std::vector<int> pa(m_), pb(m_);
    int ta = a, tb = b;
    for (int i = 0; i < m_; ++i) {
        pa[i] = ta % p_;
        ta /= p_;
        pb[i] = tb % p_;
        tb /= p_;
    }
    std::vector<int> prod = poly_mod(poly_mul(pa, pb, p_), poly_, p_);
    int out = 0, w = 1;
    for (int i = 0; i < m_; ++i) {
        out += prod[i] * w;
        w *= p_;
    }
    return out;
}

int Field::add(int a, int b) const {
    if (m_ == 1) return (a + b) % p_;
    int out = 0, w = 1;
    for (int i = 0; i < m_; ++i) {
        out += ((a % p_ + b % p_) % p_) * w;
        a /= p_;
        b /= p_;
        w *= p_;
    }
    return out;
}

int Field::neg(int a) const {
    if (m_ == 1) return (p_ - a % p_) % p_;
    int out = 0, w = 1;
    for (int i = 0; i < m_; ++i) {
        out += ((p_ - a % p_) % p_) * w;
        a /= p_;
        w *= p_;
    }
    return out;
}

int Field::sub(int a, int b) const { return add(a, neg(b)); }

int Field::mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

int Field::inv(int a) const {
    if (a == 0) throw ValidationError("Field: zero has no inverse");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

int Field::pow(int a, long long e) const {
    if (a == 0) {
        if (e < 0) throw ValidationError("Field: zero to a negative power");
        return e == 0 ? 1 : 0;
    }
    long long le = (static_cast<long long>(log_[a]) * e) % (q_ - 1);
    if (le < 0) le += q_ - 1;
    return exp_[le];
}

int Field::coeff(int a, int i) const {
    for (int k = 0; k < i; ++k) a /= p_;
    return a % p_;
}

int Field::from_coeffs(const std::vector<int>& coeffs) const {
    if (static_cast<int>(coeffs.size()) > m_)
        throw ValidationError("Field: too many coefficients");
    int out = 0, w = 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const int c = ((coeffs[i] % p_) + p_) % p_;
        out += c * w;
        w *= p_;
    }
    return out;
}

int Field::trace(int a) const {
    int acc = 0;
    int x = a;
    for (int i = 0; i < m_; ++i) {
        acc = add(acc, x);
        x = pow(x, p_);
    }
    return acc;  // lies in the prime subfield, encoded as 0..p-1
}

}  // namespace forge
