#pragma once

// Shared test fixtures: canonical states and a small Jacobi eigensolver used
// as an independent check on reduction spectra.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "forge/matrix.hpp"
#include "forge/random.hpp"
#include "forge/state.hpp"
#include "forge/subspace.hpp"

namespace test {

using forge::cplx;

inline forge::PureState bell2() {
    forge::Shape shape({2, 2});
    std::vector<cplx> amps(4);
    amps[0] = amps[3] = 1.0 / std::sqrt(2.0);
    return forge::PureState(std::move(shape), std::move(amps));
}

inline forge::PureState ghz(int n, int d) {
    forge::Shape shape(std::vector<int>(n, d));
    std::vector<cplx> amps(shape.total_dim());
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    std::uint64_t step = 0;
    for (int k = 0; k < n; ++k) step = step * d + 1;
    for (int j = 0; j < d; ++j) amps[j * step] = a;
    return forge::PureState(std::move(shape), std::move(amps));
}

inline forge::PureState w3() {
    forge::Shape shape({2, 2, 2});
    std::vector<cplx> amps(8);
    const double a = 1.0 / std::sqrt(3.0);
    amps[1] = amps[2] = amps[4] = a;
    return forge::PureState(std::move(shape), std::move(amps));
}

inline forge::Subspace random_subspace(const forge::Shape& shape, int k, std::uint64_t seed) {
    forge::Rng rng(seed);
    std::vector<forge::PureState> basis;
    while (static_cast<int>(basis.size()) < k) {
        std::vector<cplx> amps = forge::random_state(shape, rng).amplitudes();
        for (int pass = 0; pass < 2; ++pass) {
            for (const forge::PureState& b : basis) {
                cplx overlap = 0.0;
                for (std::uint64_t i = 0; i < shape.total_dim(); ++i)
                    overlap += std::conj(b[i]) * amps[i];
                for (std::uint64_t i = 0; i < shape.total_dim(); ++i) amps[i] -= overlap * b[i];
            }
        }
        double n = 0.0;
        for (const cplx& c : amps) n += std::norm(c);
        n = std::sqrt(n);
        if (n < 1e-6) continue;
        for (cplx& c : amps) c /= n;
        basis.emplace_back(shape, std::move(amps));
    }
    return forge::Subspace(shape, std::move(basis));
}

// Cyclic Jacobi for Hermitian matrices; plenty for test-scale spectra.
inline std::vector<double> hermitian_eigenvalues(forge::CMatrix m) {
    const std::size_t n = m.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(m.at(p, q)));
        if (off < 1e-13) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = m.at(p, q);
                if (std::abs(apq) < 1e-15) continue;
                const double app = m.at(p, p).real();
                const double aqq = m.at(q, q).real();
                // phase so the pivot becomes real, then a real rotation
                const cplx phase = apq / std::abs(apq);
                const double g = std::abs(apq);
                const double theta = 0.5 * std::atan2(2.0 * g, aqq - app);
                const double c = std::cos(theta), s = std::sin(theta);
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx mip = m.at(i, p);
                    const cplx miq = m.at(i, q);
                    m.at(i, p) = c * mip - s * std::conj(phase) * miq;
                    m.at(i, q) = s * mip + c * std::conj(phase) * miq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx mpi = m.at(p, i);
                    const cplx mqi = m.at(q, i);
                    m.at(p, i) = c * mpi - s * phase * mqi;
                    m.at(q, i) = s * mpi + c * phase * mqi;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m.at(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace test
