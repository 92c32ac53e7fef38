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

#include <mutex>
#include <unordered_map>

#include "ringqm/core.hpp"

namespace ringqm {

namespace detail {

// sin(pi x) and cos(pi x) with the integer part of x removed exactly, so the
// sign pattern and the zeros stay exact for half-integer and near-integer x.
inline double sin_pi(double x) {
    double m = std::round(x);
    double u = x - m;
    double s = std::sin(kPi * u);
    return (static_cast<long long>(m) % 2 != 0) ? -s : s;
}

inline double cos_pi(double x) {
    double m = std::round(x);
    double u = x - m;
    double c = std::cos(kPi * u);
    return (static_cast<long long>(m) % 2 != 0) ? -c : c;
}

inline bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) <= tol;
}

inline bool near_half_odd(double x, double tol = 1e-9) {
    return near_integer(x + 0.5, tol);
}

// Matrix with entries omega^{-p x}/sqrt(N), cached per dimension.
inline const Mat &dft_matrix(Dim dim) {
    static std::mutex mu;
    static std::unordered_map<int, Mat> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(dim.n());
    if (it != cache.end()) {
        return it->second;
    }
    int n = dim.n();
    Mat m(n, n);
    double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    for (int po = 0; po < n; ++po) {
        double p = dim.label(po);
        for (int xo = 0; xo < n; ++xo) {
            double x = dim.label(xo);
            m(po, xo) = inv_sqrt * omega_pow(dim, -p * x);
        }
    }
    return cache.emplace(n, std::move(m)).first->second;
}

} // namespace detail

// d_p = (1/sqrt(N)) sum_x omega^{-p x} c_x.
inline Vec dft_forward(Dim dim, const Vec &c) {
    if (c.size() != dim.n()) {
        throw std::invalid_argument("dft_forward: size mismatch");
    }
    return detail::dft_matrix(dim) * c;
}

// c_x = (1/sqrt(N)) sum_p omega^{p x} d_p.
inline Vec dft_inverse(Dim dim, const Vec &d) {
    if (d.size() != dim.n()) {
        throw std::invalid_argument("dft_inverse: size mismatch");
    }
    return detail::dft_matrix(dim).adjoint() * d;
}

inline State dft_forward(const State &c) {
    Vec d = dft_forward(c.dim(), c.amp());
    return c.is_normalized_flagged() ? State(c.dim(), std::move(d)) : State::raw(c.dim(), std::move(d));
}

inline State dft_inverse(const State &d) {
    Vec c = dft_inverse(d.dim(), d.amp());
    return d.is_normalized_flagged() ? State(d.dim(), std::move(c)) : State::raw(d.dim(), std::move(c));
}

// sum_{k=-j}^{j} z^k = (z^{N/2} - z^{-N/2}) / (z^{1/2} - z^{-1/2}), with all
// fractional powers taken as principal exponentials of the literal exponent.
// z = 1 is the special case N; z = 0 has negative powers and is rejected.
inline Complex geometric_sum(Complex z, Dim dim) {
    if (z == Complex(0.0, 0.0)) {
        throw std::domain_error("geometric_sum: z = 0 has no negative powers");
    }
    double half_n = dim.n() / 2.0;
    if (z == Complex(1.0, 0.0)) {
        return Complex(static_cast<double>(dim.n()), 0.0);
    }
    Complex zh = std::pow(z, 0.5);
    Complex znh = std::pow(z, half_n);
    return (znh - 1.0 / znh) / (zh - 1.0 / zh);
}

// sum_{k=-j}^{j} omega^{k r} = sin(pi r) / sin(pi r / N) for real r, with the
// exact value (-1)^{n(N-1)} N at r = n N. The argument is reduced modulo N
// before the quotient is formed, so the formula stays accurate near its
// removable singularities.
inline double omega_sum(Dim dim, double r) {
    if (!std::isfinite(r)) {
        throw std::domain_error("omega_sum: r must be finite");
    }
    double n = dim.n();
    double m = std::round(r / n);
    double delta = r - m * n;
    double denom = detail::sin_pi(delta / n);
    long long mi = static_cast<long long>(m);
    double sign = ((mi * (dim.n() - 1)) % 2 != 0) ? -1.0 : 1.0;
    if (std::abs(denom) < 1e-8) {
        if (std::abs(denom) < 1e-12 && std::abs(detail::sin_pi(delta)) > 1e-6) {
            throw std::domain_error("omega_sum: singular denominator with nonzero numerator");
        }
        return sign * n;
    }
    // sin(pi r) = (-1)^{m N} sin(pi delta), sin(pi r/N) = (-1)^m sin(pi delta/N).
    double num_sign = ((mi * dim.n()) % 2 != 0) ? -1.0 : 1.0;
    double quot_sign = ((mi) % 2 != 0) ? -1.0 : 1.0;
    return num_sign * quot_sign * detail::sin_pi(delta) / denom;
}

// Three-case closed form for sum omega^{k r} restricted to integer or
// half-odd-integer r: N-multiples give (-1)^{n(N-1)} N, other integers give 0,
// half-odd r gives 2 omega^{-r j} / (1 - omega^r).
inline Complex omega_sum_cases(Dim dim, double r) {
    if (!std::isfinite(r)) {
        throw std::domain_error("omega_sum_cases: r must be finite");
    }
    if (detail::near_integer(r)) {
        double ri = std::round(r);
        double m = std::round(ri / dim.n());
        if (std::abs(ri - m * dim.n()) < 0.5) {
            long long mi = static_cast<long long>(m);
            double sign = ((mi * (dim.n() - 1)) % 2 != 0) ? -1.0 : 1.0;
            return Complex(sign * dim.n(), 0.0);
        }
        return Complex(0.0, 0.0);
    }
    if (detail::near_half_odd(r)) {
        Complex w = omega_pow(dim, r);
        return 2.0 * omega_pow(dim, -r * dim.j()) / (1.0 - w);
    }
    throw std::domain_error("omega_sum_cases: r must be an integer or half-odd-integer");
}

// sum_{k=-j}^{j} k omega^{k r} =
// (i/2) [sin(pi r) cos(pi r/N) - N cos(pi r) sin(pi r/N)] / sin^2(pi r/N).
// r = 0 returns the limit 0; other multiples of N are singular for the
// quotient and rejected.
inline Complex k_weighted_sum(Dim dim, double r) {
    if (!std::isfinite(r)) {
        throw std::domain_error("k_weighted_sum: r must be finite");
    }
    double n = dim.n();
    double m = std::round(r / n);
    double delta = r - m * n;
    double denom = detail::sin_pi(delta / n);
    if (std::abs(denom) < 1e-8) {
        if (m == 0.0) {
            return Complex(0.0, 0.0);
        }
        throw std::domain_error("k_weighted_sum: r is a nonzero multiple of N (singular quotient)");
    }
    // Both trig factors reduce with the shared sign (-1)^{m N + m}.
    long long mi = static_cast<long long>(m);
    double sign = (((mi * dim.n() + mi) % 2) != 0) ? -1.0 : 1.0;
    double num = detail::sin_pi(delta) * detail::cos_pi(delta / n) - n * detail::cos_pi(delta) * denom;
    return Complex(0.0, 0.5) * (sign * num / (denom * denom));
}

// Which closed-form family a query addresses.
enum class SumVariant { geometric, omega, omega_cases, k_weighted };

struct SumQuery {
    Dim dim;
    SumVariant variant;
    double r = 0.0;      // omega, omega_cases, k_weighted
    Complex z = {0, 0};  // geometric
};

inline Complex evaluate(const SumQuery &q) {
    switch (q.variant) {
        case SumVariant::geometric:
            return geometric_sum(q.z, q.dim);
        case SumVariant::omega:
            return Complex(omega_sum(q.dim, q.r), 0.0);
        case SumVariant::omega_cases:
            return omega_sum_cases(q.dim, q.r);
        case SumVariant::k_weighted:
            return k_weighted_sum(q.dim, q.r);
    }
    throw std::invalid_argument("evaluate: unknown variant");
}

} // namespace ringqm
