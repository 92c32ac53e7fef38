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

// Measured marginals of the N=2 problem: rho_sq is the probability of the
// position state phi_{-1/2}, varpi_sq the probability of the momentum state
// phi_{p=-1/2}.
struct PauliData {
    double rho_sq;
    double varpi_sq;
};

struct Reconstruction {
    bool compatible;
    bool phase_unobservable;
    std::vector<double> alpha_solutions;  // values in [0, 2 pi)
    double residual;
};

// psi = rho e^{i alpha} phi_{-1/2} + sqrt(1 - rho^2) phi_{+1/2} at N = 2.
inline State state_from_params(double rho, double alpha) {
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw std::domain_error("state_from_params: rho must lie in [0, 1]");
    }
    if (!(alpha >= 0.0 && alpha < 2.0 * kPi)) {
        throw std::domain_error("state_from_params: alpha must lie in [0, 2 pi)");
    }
    Vec amp(2);
    amp(0) = rho * std::exp(Complex(0.0, alpha));
    amp(1) = std::sqrt(1.0 - rho * rho);
    return State(Dim(2), std::move(amp));
}

// (rho^2, varpi^2) = squared magnitudes of the phi_{-1/2} components in the
// position and momentum representations.
inline PauliData forward_data(const State &psi) {
    if (psi.dim().n() != 2) {
        throw std::domain_error("forward_data: defined for N = 2 only");
    }
    Vec d = dft_forward(psi.dim(), psi.amp());
    return PauliData{std::norm(psi.amp(0)), std::norm(d(0))};
}

// Uncertainty-region test: (varpi^2 - 1/2)^2 + (rho^2 - 1/2)^2 <= 1/4, with
// an additive 1e-12 so exact boundary states pass.
inline bool compatible(const PauliData &data, double tol = 1e-12) {
    if (!(data.rho_sq >= 0.0 && data.rho_sq <= 1.0) || !(data.varpi_sq >= 0.0 && data.varpi_sq <= 1.0)) {
        throw std::domain_error("compatible: data must lie in [0, 1]");
    }
    double u = data.varpi_sq - 0.5;
    double v = data.rho_sq - 0.5;
    return u * u + v * v <= 0.25 + tol;
}

namespace detail {

inline double wrap_two_pi(double alpha) {
    double twopi = 2.0 * kPi;
    double out = std::fmod(alpha, twopi);
    if (out < 0.0) {
        out += twopi;
    }
    return (out == twopi) ? 0.0 : out;
}

} // namespace detail

// Solves sin(alpha) = (varpi^2 - 1/2) / (rho sqrt(1 - rho^2)). Two solutions
// alpha and pi - alpha in general, one when sin(alpha) = +-1, none when the
// data falls outside the uncertainty disk. rho^2 in {0, 1} makes the phase
// drop out of the state entirely; that is reported instead of solved.
inline Reconstruction reconstruct(const PauliData &data) {
    if (!(data.rho_sq >= 0.0 && data.rho_sq <= 1.0) || !(data.varpi_sq >= 0.0 && data.varpi_sq <= 1.0)) {
        throw std::domain_error("reconstruct: data must lie in [0, 1]");
    }
    double u = data.varpi_sq - 0.5;
    double v = data.rho_sq - 0.5;
    double disk_excess = std::max(0.0, std::sqrt(u * u + v * v) - 0.5);
    if (!compatible(data)) {
        return Reconstruction{false, false, {}, disk_excess};
    }
    if (data.rho_sq <= 1e-12 || data.rho_sq >= 1.0 - 1e-12) {
        // Inside the disk this forces varpi^2 = 1/2 up to the disk tolerance.
        return Reconstruction{true, true, {}, std::abs(u)};
    }
    double s = u / std::sqrt(data.rho_sq * (1.0 - data.rho_sq));
    s = std::clamp(s, -1.0, 1.0);
    double a0 = std::asin(s);
    double a1 = detail::wrap_two_pi(a0);
    double a2 = detail::wrap_two_pi(kPi - a0);
    std::vector<double> alphas;
    if (a1 == a2) {
        alphas = {a1};
    } else {
        alphas = {std::min(a1, a2), std::max(a1, a2)};
    }
    double residual = 0.0;
    double rho = std::sqrt(data.rho_sq);
    for (double alpha : alphas) {
        PauliData fwd = forward_data(state_from_params(rho, alpha));
        residual = std::max(residual, std::abs(fwd.varpi_sq - data.varpi_sq));
    }
    return Reconstruction{true, false, std::move(alphas), residual};
}

} // namespace ringqm
