#pragma once

// Test-only reference computations, deliberately written without the library's
// matrix-vector paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "teur/qstate.hpp"

namespace oracle {

using teur::CMatrix;
using teur::Complex;
using teur::CVector;

/// sum_ij conj(s_i) A_ij s_j by explicit loops.
inline Complex triple_sum(const CMatrix& a, const CVector& s) {
    Complex acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        for (Eigen::Index j = 0; j < s.size(); ++j) acc += std::conj(s(i)) * a(i, j) * s(j);
    }
    return acc;
}

struct Moments {
    double mean;
    double spread;
};

/// Energy moments from the eigen-decomposition: p_k = |<v_k|s>|^2.
inline Moments spectral_moments(const CMatrix& a, const CVector& s) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
    double m1 = 0.0;
    double m2 = 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        const double p = std::norm(es.eigenvectors().col(k).dot(s));
        m1 += p * es.eigenvalues()(k);
        m2 += p * es.eigenvalues()(k) * es.eigenvalues()(k);
    }
    return {m1, std::sqrt(std::max(0.0, m2 - m1 * m1))};
}

inline std::vector<double> eigenvalues(const CMatrix& a) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return v;
}

/// Random Hermitian matrix and normalized state from an independent generator.
struct Sampler {
    explicit Sampler(std::uint64_t seed) : rng(seed) {}

    CMatrix hermitian(Eigen::Index n) {
        CMatrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
        }
        return 0.5 * (m + m.adjoint());
    }

    CVector state(Eigen::Index n) {
        CVector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(u(rng), u(rng));
        return v / v.norm();
    }

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

    std::mt19937_64 rng;
    std::uniform_real_distribution<double> u{-1.0, 1.0};
};

/// Classical Ising energy of a bit string; bit q of `bits` (MSB first) is spin q.
inline double ising_energy(unsigned bits, unsigned n, const std::vector<std::tuple<unsigned, unsigned, double>>& J,
                           const std::vector<std::pair<unsigned, double>>& h) {
    auto spin = [&](unsigned q) { return ((bits >> (n - 1 - q)) & 1u) ? -1.0 : 1.0; };
    double e = 0.0;
    for (const auto& [i, j, c] : J) e += c * spin(i) * spin(j);
    for (const auto& [i, f] : h) e += f * spin(i);
    return e;
}

}  // namespace oracle
