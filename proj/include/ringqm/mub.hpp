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

// T*B: shifts position states with an extra phase, TB phi_x = omega^x
// phi_{x+1} for x != j and TB phi_j = omega^{-2j^2} phi_{-j}.
inline Op tb_op(Dim dim) {
    return translation_op(dim) * boost_op(dim);
}

// Eigenbasis of TB from the explicit position components
// (1/sqrt(N)) omega^{x^2/2 - (s + 1/2) x}; column s at offset s + j.
inline Basis eta_basis_position(Dim dim) {
    int n = dim.n();
    Mat m(n, n);
    double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    for (int so = 0; so < n; ++so) {
        double s = dim.label(so);
        for (int xo = 0; xo < n; ++xo) {
            double x = dim.label(xo);
            m(xo, so) = inv_sqrt * omega_pow(dim, 0.5 * x * x - (s + 0.5) * x);
        }
    }
    return Basis(dim, std::move(m), 1e-10);
}

// The same eigenvectors built through the momentum route: expansion
// coefficients (1/sqrt(N)) omega^{-p^2/2 - (s + 1/2) p} over phi_p, returned
// in position components. Each column matches the eta_basis_position column
// up to one unit phase that depends on s.
inline Basis eta_basis_momentum(Dim dim) {
    int n = dim.n();
    Mat d(n, n);
    double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    for (int so = 0; so < n; ++so) {
        double s = dim.label(so);
        for (int po = 0; po < n; ++po) {
            double p = dim.label(po);
            d(po, so) = inv_sqrt * omega_pow(dim, -0.5 * p * p - (s + 0.5) * p);
        }
    }
    return Basis(dim, momentum_basis(dim).mat() * d, 1e-10);
}

// Overlap-magnitude grid |<u_r, v_s>| with its max and min deviation from
// the unbiased value 1/sqrt(N).
struct UnbiasednessReport {
    Dim dim;
    Eigen::MatrixXd grid;
    double max_deviation;
    double min_deviation;
};

namespace detail {

inline UnbiasednessReport unbiasedness_grid(Dim dim, const Mat &u, const Mat &v) {
    Eigen::MatrixXd grid = (u.adjoint() * v).cwiseAbs();
    double target = 1.0 / std::sqrt(static_cast<double>(dim.n()));
    Eigen::MatrixXd dev = (grid.array() - target).abs();
    return UnbiasednessReport{dim, std::move(grid), dev.maxCoeff(), dev.minCoeff()};
}

} // namespace detail

inline UnbiasednessReport unbiasedness(const Basis &u, const Basis &v) {
    if (u.dim() != v.dim()) {
        throw std::invalid_argument("unbiasedness: dimension mismatch");
    }
    return detail::unbiasedness_grid(u.dim(), u.mat(), v.mat());
}

struct PhaseIdentityReport {
    Dim dim;
    double b;
    Complex phase;
    double residual;
};

namespace detail {

// Least-squares unit phase c minimizing sum_p |lhs_p - c rhs_p|^2, and the
// max-norm residual after removing it.
inline PhaseIdentityReport fit_phase(Dim dim, double b, const Vec &lhs, const Vec &rhs) {
    Complex z = rhs.dot(lhs);
    Complex c = (std::abs(z) > 0.0) ? z / std::abs(z) : Complex(1.0, 0.0);
    double residual = (lhs - c * rhs).cwiseAbs().maxCoeff();
    return PhaseIdentityReport{dim, b, c, residual};
}

} // namespace detail

// Checks the quadratic-phase transform identity
// (1/sqrt(N)) sum_x omega^{x^2/2 - b x} omega^{-p x} = omega^{-p^2/2 - b p}
// up to one fitted global phase per (N, b). b must be an integer for even N
// and a half-odd-integer for odd N.
inline PhaseIdentityReport gauss_identity_check(Dim dim, double b) {
    bool ok_parity = dim.is_even() ? detail::near_integer(b) : detail::near_half_odd(b);
    if (!ok_parity) {
        throw std::domain_error("gauss_identity_check: b must be integer for even N, half-odd for odd N");
    }
    int n = dim.n();
    double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    Vec lhs(n), rhs(n);
    for (int po = 0; po < n; ++po) {
        double p = dim.label(po);
        Complex acc(0.0, 0.0);
        for (int xo = 0; xo < n; ++xo) {
            double x = dim.label(xo);
            acc += omega_pow(dim, 0.5 * x * x - b * x - p * x);
        }
        lhs(po) = inv_sqrt * acc;
        rhs(po) = omega_pow(dim, -0.5 * p * p - b * p);
    }
    return detail::fit_phase(dim, b, lhs, rhs);
}

// Asymmetric-index form of the same identity, indices 0..N-1:
// (1/sqrt(N)) sum_n (-1)^n omega^{n^2/2 - b n} omega^{-m n}
//   = (-1)^m omega^{-m^2/2 - b m}, b integer, any N.
inline PhaseIdentityReport gauss_identity_check_asym(Dim dim, double b) {
    if (!detail::near_integer(b)) {
        throw std::domain_error("gauss_identity_check_asym: b must be an integer");
    }
    int n = dim.n();
    double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    Vec lhs(n), rhs(n);
    for (int m = 0; m < n; ++m) {
        Complex acc(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
            double sgn = (k % 2 != 0) ? -1.0 : 1.0;
            acc += sgn * omega_pow(dim, 0.5 * k * k - b * k - static_cast<double>(m) * k);
        }
        lhs(m) = inv_sqrt * acc;
        double msgn = (m % 2 != 0) ? -1.0 : 1.0;
        rhs(m) = msgn * omega_pow(dim, -0.5 * m * m - b * m);
    }
    return detail::fit_phase(dim, b, lhs, rhs);
}

// S = sum_s (a g s) eta_s <eta_s, .>: the hermitian generator with
// exp(i S) = TB, since a g N = 2 pi makes exp(i a g s) = omega^s.
inline Op tb_generator(Dim dim, const LatticeScales &scales) {
    Basis basis = eta_basis_position(dim);
    const Mat &eta = basis.mat();
    Vec diag(dim.n());
    for (int o = 0; o < dim.n(); ++o) {
        diag(o) = scales.a() * scales.g() * dim.label(o);
    }
    return Op(dim, eta * diag.asDiagonal() * eta.adjoint());
}

// Max deviation over the two Weyl-ordered factorizations:
// exp(-i a P) exp(i g X) = TB and exp(-i g X) exp(i a P) = adjoint(TB).
inline double weyl_swap_deviation(const CanonicalSet &set) {
    Op tb = set.t_op * set.b_op;
    Op left1 = op_exp(set.p_op, Complex(0.0, -set.scales.a())) * op_exp(set.x_op, Complex(0.0, set.scales.g()));
    Op left2 = op_exp(set.x_op, Complex(0.0, -set.scales.g())) * op_exp(set.p_op, Complex(0.0, set.scales.a()));
    return std::max(deviation(left1, tb), deviation(left2, tb.adjoint()));
}

// Eigenbasis of the hermitian difference g X - a P compared against the
// position and momentum bases. Unlike the eta basis it is not unbiased at
// finite N; the deviation shrinks as N grows.
struct XPDifferenceReport {
    UnbiasednessReport vs_position;
    UnbiasednessReport vs_momentum;
    bool degenerate;
    double min_gap;
};

inline XPDifferenceReport xp_difference_unbiasedness(const CanonicalSet &set) {
    Op d = Complex(set.scales.g(), 0.0) * set.x_op - Complex(set.scales.a(), 0.0) * set.p_op;
    EigenSystem es = eig_normal(d);
    std::vector<double> vals(set.dim.n());
    for (int i = 0; i < set.dim.n(); ++i) {
        vals[i] = es.pair(i).value.real();
    }
    std::sort(vals.begin(), vals.end());
    double min_gap = 1e300;
    for (size_t i = 1; i < vals.size(); ++i) {
        min_gap = std::min(min_gap, vals[i] - vals[i - 1]);
    }
    Mat vecs = es.vectors();
    return XPDifferenceReport{
        detail::unbiasedness_grid(set.dim, vecs, set.pos_basis.mat()),
        detail::unbiasedness_grid(set.dim, vecs, set.mom_basis.mat()),
        min_gap < 1e-8,
        min_gap,
    };
}

} // namespace ringqm
