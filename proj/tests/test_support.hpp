#pragma once

#include "cvbell/fock.hpp"
#include "cvbell/rng.hpp"

namespace test_support {

using cvbell::Complex;
using cvbell::CVector;
using cvbell::Matrix;
using cvbell::ModeSystem;
using cvbell::QuantumState;
using cvbell::Rng;

inline CVector random_amplitudes(Rng& rng, int dim) {
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(rng.normal(), rng.normal());
    if (v.norm() == 0.0) v(0) = 1.0;
    return v;
}

inline QuantumState random_pure_state(Rng& rng, const ModeSystem& system) {
    return QuantumState::pure(system, random_amplitudes(rng, system.total_dim()));
}

// Ginibre construction: rho = G G^dag / tr, full rank unless requested lower.
inline QuantumState random_mixed_state(Rng& rng, const ModeSystem& system,
                                       int rank = 0) {
    const int dim = system.total_dim();
    const int r = rank > 0 ? rank : dim;
    Matrix g(dim, r);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < r; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    Matrix rho = g * g.adjoint();
    rho = 0.5 * (rho + Matrix(rho.adjoint()));
    rho /= rho.trace().real();
    return QuantumState::from_density(system, std::move(rho));
}

inline QuantumState random_diagonal_state(Rng& rng, const ModeSystem& system) {
    const int dim = system.total_dim();
    Matrix rho = Matrix::Zero(dim, dim);
    double total = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double p = rng.uniform(0.0, 1.0) + 1e-12;
        rho(i, i) = p;
        total += p;
    }
    rho /= total;
    return QuantumState::from_density(system, std::move(rho));
}

}  // namespace test_support
