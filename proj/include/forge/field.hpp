#pragma once

#include <vector>

namespace forge {

// GF(p^m) for prime p and p^m <= 256. Elements are integers 0..q-1 encoding
// polynomial coefficients base p (constant coefficient least significant).
// Multiplication goes through log/antilog tables built from a generator of
// the multiplicative group.
class Field {
public:
    static Field make(int p, int m, std::vector<int> irreducible_poly = {});

    int characteristic() const { return p_; }
    int degree() const { return m_; }
    int size() const { return q_; }
    const std::vector<int>& modulus() const { return poly_; }

    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    int inv(int a) const;
    int pow(int a, long long e) const;

    // i-th base-p coefficient of an element.
    int coeff(int a, int i) const;
    int from_coeffs(const std::vector<int>& coeffs) const;
    // Trace to the prime subfield: a + a^p + ... + a^(p^(m-1)), as 0..p-1.
    int trace(int a) const;

private:
    Field() = default;
    int p_ = 0, m_ = 0, q_ = 0;
    std::vector<int> poly_;       // monic modulus, poly_[i] = coefficient of x^i
    std::vector<int> log_, exp_;  // log_[a] for a != 0; exp_[k] = g^k
    int mul_nolog(int a, int b) const;
};

bool is_prime(int p);

}  // namespace forge
