#include "forge/weyl.hpp"

#include <cmath>
#include <numeric>

#include "forge/errors.hpp"

namespace forge {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

WeylOperator::WeylOperator(Shape s, std::vector<int> a, std::vector<int> b, int phase)
    : shape(std::move(s)), x_exp(std::move(a)), z_exp(std::move(b)), phase_exp(phase) {
    const int n = shape.num_parties();
    if (static_cast<int>(x_exp.size()) != n || static_cast<int>(z_exp.size()) != n)
        throw ValidationError("WeylOperator: exponent arrays must match the party count");
    for (int i = 0; i < n; ++i) {
        const int d = shape.dim(i);
        x_exp[i] = ((x_exp[i] % d) + d) % d;
        z_exp[i] = ((z_exp[i] % d) + d) % d;
    }
    const int den = phase_denominator(shape);
    phase_exp = ((phase_exp % den) + den) % den;
}

WeylOperator WeylOperator::identity(Shape s) {
    const int n = s.num_parties();
    return WeylOperator(std::move(s), std::vector<int>(n, 0), std::vector<int>(n, 0), 0);
}

int WeylOperator::weight() const {
    int w = 0;
    for (std::size_t i = 0; i < x_exp.size(); ++i)
        if (x_exp[i] != 0 || z_exp[i] != 0) ++w;
    return w;
}

bool WeylOperator::is_identity_word() const { return weight() == 0; }

int phase_denominator(const Shape& shape) {
    long long l = 1;
    for (int d : shape.dims()) l = std::lcm(l, static_cast<long long>(d));
    if (2 * l > 1 << 20) throw ValidationError("phase_denominator: dimension lcm too large");
    return static_cast<int>(2 * l);
}

cplx root_of_unity(int num, int den) {
    const double angle = kTwoPi * static_cast<double>(((num % den) + den) % den) / den;
    return cplx(std::cos(angle), std::sin(angle));
}

WeylOperator weyl_mul(const WeylOperator& g, const WeylOperator& h) {
    if (g.shape != h.shape) throw ValidationError("weyl_mul: shape mismatch");
    const int n = g.shape.num_parties();
    const int den = phase_denominator(g.shape);
    std::vector<int> a(n), b(n);
    long long phase = g.phase_exp + h.phase_exp;
    for (int i = 0; i < n; ++i) {
        const int d = g.shape.dim(i);
        a[i] = (g.x_exp[i] + h.x_exp[i]) % d;
        b[i] = (g.z_exp[i] + h.z_exp[i]) % d;
        // Z^b X^a' = w^(a'b) X^a' Z^b while commuting h's X part past g's Z part
        phase += static_cast<long long>(den / d) * g.z_exp[i] % den * h.x_exp[i] % den;
    }
    return WeylOperator(g.shape, std::move(a), std::move(b), static_cast<int>(phase % den));
}

WeylOperator weyl_pow(const WeylOperator& g, int k) {
    if (k < 0) throw ValidationError("weyl_pow: negative power");
    WeylOperator acc = WeylOperator::identity(g.shape);
    for (int i = 0; i < k; ++i) acc = weyl_mul(acc, g);
    return acc;
}

std::uint64_t weyl_action_on_basis(const WeylOperator& g, std::uint64_t j, int* phase_exp_out) {
    const Shape& shape = g.shape;
    const int n = shape.num_parties();
    const int den = phase_denominator(shape);
    long long phase = g.phase_exp;
    std::uint64_t target = 0;
    std::uint64_t rem = j;
    for (int i = 0; i < n; ++i) {
        const int d = shape.dim(i);
        const int digit = static_cast<int>(rem / shape.stride(i));
        rem %= shape.stride(i);
        target += static_cast<std::uint64_t>((digit + g.x_exp[i]) % d) * shape.stride(i);
        phase += static_cast<long long>(den / d) * g.z_exp[i] % den * digit % den;
    }
    if (phase_exp_out) *phase_exp_out = static_cast<int>(phase % den);
    return target;
}

void MonomialOp::apply(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != target.size() || out.size() != target.size())
        throw ValidationError("MonomialOp::apply: size mismatch");
    for (std::size_t j = 0; j < target.size(); ++j) out[target[j]] = phase[j] * in[j];
}

CMatrix MonomialOp::to_matrix() const {
    CMatrix m(target.size(), target.size());
    for (std::size_t j = 0; j < target.size(); ++j) m.at(target[j], j) = phase[j];
    return m;
}

MonomialOp weyl_matrix(const WeylOperator& g) {
    const Shape& shape = g.shape;
    if (shape.total_dim() > 1000000)
        throw CapacityError("weyl_matrix: total dimension above the 10^6 guard");
    const int n = shape.num_parties();
    const int den = phase_denominator(shape);

    // phase roots table
    std::vector<cplx> roots(den);
    for (int k = 0; k < den; ++k) roots[k] = root_of_unity(k, den);

    const std::uint64_t dim = shape.total_dim();
    MonomialOp op;
    op.target.resize(dim);
    op.phase.resize(dim);

    // odometer over source digits, maintaining target index and phase exponent
    std::vector<int> digit(n, 0), shifted(n);
    std::vector<int> phase_step(n);
    for (int i = 0; i < n; ++i) {
        shifted[i] = g.x_exp[i] % shape.dim(i);
        phase_step[i] = static_cast<int>(static_cast<long long>(den / shape.dim(i)) *
                                         g.z_exp[i] % den);
    }
    std::uint64_t target = 0;
    for (int i = 0; i < n; ++i)
        target += static_cast<std::uint64_t>(shifted[i]) * shape.stride(i);
    int phase = g.phase_exp % den;

    for (std::uint64_t j = 0; j < dim; ++j) {
        op.target[j] = target;
        op.phase[j] = roots[phase];
        for (int k = n - 1; k >= 0; --k) {
            const int d = shape.dim(k);
            phase = (phase + phase_step[k]) % den;
            if (++shifted[k] == d) {
                shifted[k] = 0;
                target -= static_cast<std::uint64_t>(d - 1) * shape.stride(k);
            } else {
                target += shape.stride(k);
            }
            if (++digit[k] < d) break;
            digit[k] = 0;
            phase = (phase - static_cast<int>(static_cast<long long>(phase_step[k]) * d % den) +
                     den * 2) % den;
            // undo the shifted-digit walk for this party: after d increments
            // shifted[k] returns to its start, target already consistent
        }
    }
    return op;
}

int symplectic_product(const WeylOperator& g, const WeylOperator& h, int p) {
    if (g.shape != h.shape) throw ValidationError("symplectic_product: shape mismatch");
    long long acc = 0;
    for (int i = 0; i < g.shape.num_parties(); ++i)
        acc += static_cast<long long>(g.x_exp[i]) * h.z_exp[i] -
               static_cast<long long>(g.z_exp[i]) * h.x_exp[i];
    return static_cast<int>(((acc % p) + p) % p);
}

}  // namespace forge
