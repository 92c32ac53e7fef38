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

#include "ringqm/core.hpp"

namespace ringqm {

// X = sum_x (a x) phi_x <phi_x, .>, diagonal in the position basis.
inline Op position_op(Dim dim, const LatticeScales &scales) {
    Mat m = Mat::Zero(dim.n(), dim.n());
    for (int o = 0; o < dim.n(); ++o) {
        m(o, o) = scales.a() * dim.label(o);
    }
    return Op(dim, m);
}

// Cyclic shift of position states, phi_x -> phi_{x+1}, with wrap coefficient
// (-1)^{N-1} on phi_j -> phi_{-j}: periodic for odd N, antiperiodic for even.
inline Op translation_op(Dim dim) {
    int n = dim.n();
    Mat m = Mat::Zero(n, n);
    for (int o = 0; o + 1 < n; ++o) {
        m(o + 1, o) = 1.0;
    }
    m(0, n - 1) = (n % 2 == 0) ? -1.0 : 1.0;
    return Op(dim, m);
}

// B = sum_x omega^x phi_x <phi_x, .>, the diagonal boost.
inline Op boost_op(Dim dim) {
    Mat m = Mat::Zero(dim.n(), dim.n());
    for (int o = 0; o < dim.n(); ++o) {
        m(o, o) = omega_pow(dim, dim.label(o));
    }
    return Op(dim, m);
}

// Momentum eigenbasis: component x of phi_p is omega^{p x} / sqrt(N).
inline Basis momentum_basis(Dim dim) {
    int n = dim.n();
    Mat m(n, n);
    double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    for (int po = 0; po < n; ++po) {
        double p = dim.label(po);
        for (int xo = 0; xo < n; ++xo) {
            m(xo, po) = inv_sqrt * omega_pow(dim, p * dim.label(xo));
        }
    }
    return Basis(dim, std::move(m), 1e-12);
}

// P = sum_p (g p) phi_p <phi_p, .>, built spectrally from the momentum basis.
inline Op momentum_op(Dim dim, const LatticeScales &scales) {
    Basis basis = momentum_basis(dim);
    const Mat &m = basis.mat();
    Vec diag(dim.n());
    for (int o = 0; o < dim.n(); ++o) {
        diag(o) = scales.g() * dim.label(o);
    }
    return Op(dim, m * diag.asDiagonal() * m.adjoint());
}

struct CanonicalSet {
    Dim dim;
    LatticeScales scales;
    Op x_op;
    Op p_op;
    Op t_op;
    Op b_op;
    Basis pos_basis;
    Basis mom_basis;
};

inline CanonicalSet canonical_set(Dim dim, const LatticeScales &scales) {
    if (scales.dim() != dim) {
        throw std::invalid_argument("canonical_set: scales built for a different dim");
    }
    return CanonicalSet{
        dim,
        scales,
        position_op(dim, scales),
        momentum_op(dim, scales),
        translation_op(dim),
        boost_op(dim),
        Basis::position(dim),
        momentum_basis(dim),
    };
}

inline CanonicalSet canonical_set(Dim dim) {
    return canonical_set(dim, LatticeScales::symmetric(dim));
}

// Max entrywise deviation of T from exp(-i (2 pi / N) P / g) and of B from
// exp(i (2 pi / N) X / a).
inline double exponential_form_deviation(const CanonicalSet &set) {
    double w = 2.0 * kPi / set.dim.n();
    Op t_from_p = op_exp(set.p_op, Complex(0.0, -w / set.scales.g()));
    Op b_from_x = op_exp(set.x_op, Complex(0.0, w / set.scales.a()));
    return std::max(deviation(set.t_op, t_from_p), deviation(set.b_op, b_from_x));
}

inline Op commutator(const Op &a, const Op &b) {
    return a * b - b * a;
}

// Normalized real Gaussian c_x proportional to exp(-pi x^2 / N), the
// self-dual width for the symmetric-index transform.
inline State gaussian_probe(Dim dim) {
    Vec c(dim.n());
    for (int o = 0; o < dim.n(); ++o) {
        double x = dim.label(o);
        c(o) = std::exp(-kPi * x * x / dim.n());
    }
    return State::normalized(dim, std::move(c));
}

// <psi, [X, P] psi>. X is hermitian, so the expectation is assembled as
// 2i Im <X psi, P psi>, which keeps the real part exactly zero.
inline Complex commutator_expectation(const CanonicalSet &set, const State &psi) {
    if (psi.dim() != set.dim) {
        throw std::invalid_argument("commutator_expectation: dimension mismatch");
    }
    Vec xp = set.x_op.mat() * psi.amp();
    Vec pp = set.p_op.mat() * psi.amp();
    Complex z = xp.dot(pp);
    return Complex(0.0, 2.0 * z.imag());
}

} // namespace ringqm
