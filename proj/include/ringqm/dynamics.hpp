// Copyright 2026 The ringqm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "ringqm/fourier.hpp"
#include "ringqm/operators.hpp"

namespace ringqm {

// Free-particle setup: mass m and the time scale tau = 2 m a / g, the unit
// in which the quadratic phases of the free propagator become powers of
// omega.
struct EvolutionConfig {
    Dim dim;
    LatticeScales scales;
    double mass;

    EvolutionConfig(Dim d, const LatticeScales &s, double m = 1.0) : dim(d), scales(s), mass(m) {
        if (s.dim() != d) {
            throw std::invalid_argument("EvolutionConfig: scales built for a different dim");
        }
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw std::invalid_argument("EvolutionConfig: mass must be positive and finite");
        }
    }

    explicit EvolutionConfig(Dim d) : EvolutionConfig(d, LatticeScales::symmetric(d)) {}

    double tau() const { return 2.0 * mass * scales.a() / scales.g(); }
};

// U_t = exp(-i H t) for hermitian H.
inline Op propagator(const Op &h, double t) {
    if (!h.is_hermitian(kDefaultTol)) {
        throw contract_error("propagator: hamiltonian is not hermitian");
    }
    if (!std::isfinite(t)) {
        throw std::invalid_argument("propagator: time must be finite");
    }
    return op_exp(h, Complex(0.0, -t));
}

// H = P^2 / (2m), eigenvalues g^2 p^2 / (2m).
inline Op free_hamiltonian(const EvolutionConfig &cfg) {
    Op p = momentum_op(cfg.dim, cfg.scales);
    return Complex(1.0 / (2.0 * cfg.mass), 0.0) * (p * p);
}

// Free evolution in the momentum representation:
// d_p(t) = d_p(0) exp(-i g^2 p^2 t / 2m).
inline State evolve_momentum(const EvolutionConfig &cfg, const State &d0, double t) {
    if (d0.dim() != cfg.dim) {
        throw std::invalid_argument("evolve_momentum: dimension mismatch");
    }
    if (!std::isfinite(t)) {
        throw std::invalid_argument("evolve_momentum: time must be finite");
    }
    double g = cfg.scales.g();
    Vec d(cfg.dim.n());
    for (int o = 0; o < cfg.dim.n(); ++o) {
        double p = cfg.dim.label(o);
        d(o) = d0.amp(o) * std::exp(Complex(0.0, -g * g * p * p * t / (2.0 * cfg.mass)));
    }
    return d0.is_normalized_flagged() ? State(cfg.dim, std::move(d)) : State::raw(cfg.dim, std::move(d));
}

// Free evolution in the position representation by the double sum
// c_r(t) = sum_x c_x(0) (1/N) sum_p omega^{p (r - x)} exp(-i g^2 p^2 t / 2m).
// The inner sum depends only on r - x and is tabulated once per call.
inline State evolve_position(const EvolutionConfig &cfg, const State &c0, double t) {
    if (c0.dim() != cfg.dim) {
        throw std::invalid_argument("evolve_position: dimension mismatch");
    }
    if (!std::isfinite(t)) {
        throw std::invalid_argument("evolve_position: time must be finite");
    }
    int n = cfg.dim.n();
    double g = cfg.scales.g();
    // Kernel K(delta) for the N integer differences delta = r - x in
    // {-(N-1), ..., N-1}; stored at index delta + (N-1).
    std::vector<Complex> kernel(2 * n - 1);
    for (int di = 0; di < 2 * n - 1; ++di) {
        double delta = di - (n - 1);
        Complex acc(0.0, 0.0);
        for (int po = 0; po < n; ++po) {
            double p = cfg.dim.label(po);
            acc += omega_pow(cfg.dim, p * delta) * std::exp(Complex(0.0, -g * g * p * p * t / (2.0 * cfg.mass)));
        }
        kernel[di] = acc / static_cast<double>(n);
    }
    Vec c(n);
    for (int ro = 0; ro < n; ++ro) {
        Complex acc(0.0, 0.0);
        for (int xo = 0; xo < n; ++xo) {
            acc += c0.amp(xo) * kernel[ro - xo + (n - 1)];
        }
        c(ro) = acc;
    }
    return c0.is_normalized_flagged() ? State(cfg.dim, std::move(c)) : State::raw(cfg.dim, std::move(c));
}

// Exact revival time: N tau for odd N, 4 N tau for even N.
inline double revival_period(const EvolutionConfig &cfg) {
    double t = cfg.dim.n() * cfg.tau();
    return cfg.dim.is_even() ? 4.0 * t : t;
}

} // namespace ringqm
