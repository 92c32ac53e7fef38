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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringqm {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDefaultTol = 1e-10;

// Thrown when a numerical contract is violated at runtime (non-normal input
// to a spectral routine, orthonormality failure, ambiguous label matching).
class contract_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Number of lattice sites N >= 2. Sites carry the symmetric labels
// k = -j..j with j = (N-1)/2, stored at offset k + j.
class Dim {
  public:
    explicit Dim(int n) : n_(n) {
        if (n < 2) {
            throw std::invalid_argument("Dim: need at least 2 sites, got " + std::to_string(n));
        }
    }

    int n() const { return n_; }
    double j() const { return (n_ - 1) / 2.0; }
    bool is_even() const { return n_ % 2 == 0; }

    double label(int offset) const {
        if (offset < 0 || offset >= n_) {
            throw std::invalid_argument("Dim: offset out of range");
        }
        return offset - j();
    }

    int offset(double k) const {
        double pos = k + j();
        int o = static_cast<int>(std::lround(pos));
        if (std::abs(pos - o) > 1e-9 || o < 0 || o >= n_) {
            throw std::invalid_argument("Dim: label is not on the lattice");
        }
        return o;
    }

    std::vector<double> labels() const {
        std::vector<double> out(n_);
        for (int o = 0; o < n_; ++o) {
            out[o] = o - j();
        }
        return out;
    }

    friend bool operator==(const Dim &a, const Dim &b) { return a.n_ == b.n_; }
    friend bool operator!=(const Dim &a, const Dim &b) { return a.n_ != b.n_; }

  private:
    int n_;
};

// A single symmetric lattice label k in {-j, ..., j}.
class SymIndex {
  public:
    SymIndex(Dim dim, double k) : dim_(dim), offset_(dim.offset(k)) {}

    static SymIndex from_offset(Dim dim, int offset) {
        return SymIndex(dim, dim.label(offset));
    }

    Dim dim() const { return dim_; }
    double k() const { return dim_.label(offset_); }
    int offset() const { return offset_; }

  private:
    Dim dim_;
    int offset_;
};

// omega^t = exp(i 2 pi t / N) for a literal real exponent t. The exponent is
// reduced modulo N before exponentiation, so integer multiples of N map to
// exactly 1 and large quadratic exponents keep full precision. No root
// extraction is ever performed.
inline Complex omega_pow(Dim dim, double t) {
    if (!std::isfinite(t)) {
        throw std::domain_error("omega_pow: exponent must be finite");
    }
    double n = dim.n();
    double u = t - n * std::round(t / n);
    if (u == 0.0) {
        return Complex(1.0, 0.0);
    }
    return std::polar(1.0, 2.0 * kPi * u / n);
}

// Lattice constants a (position) and g (momentum) tied by a g N = 2 pi.
class LatticeScales {
  public:
    static LatticeScales from_a(Dim dim, double a) {
        check_positive(a, "a");
        return LatticeScales(dim, a, 2.0 * kPi / (a * dim.n()));
    }

    static LatticeScales from_g(Dim dim, double g) {
        check_positive(g, "g");
        return LatticeScales(dim, 2.0 * kPi / (g * dim.n()), g);
    }

    // a = g = sqrt(2 pi / N).
    static LatticeScales symmetric(Dim dim) {
        double s = std::sqrt(2.0 * kPi / dim.n());
        return LatticeScales(dim, s, s);
    }

    LatticeScales(Dim dim, double a, double g) : dim_(dim), a_(a), g_(g) {
        check_positive(a, "a");
        check_positive(g, "g");
        if (std::abs(a * g * dim.n() - 2.0 * kPi) > 1e-12) {
            throw std::invalid_argument("LatticeScales: a*g*N must equal 2*pi");
        }
    }

    Dim dim() const { return dim_; }
    double a() const { return a_; }
    double g() const { return g_; }

  private:
    static void check_positive(double v, const char *name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string("LatticeScales: ") + name + " must be positive and finite");
        }
    }

    Dim dim_;
    double a_;
    double g_;
};

// N complex amplitudes in symmetric-index order. States constructed through
// the default path are flagged normalized and must have unit norm within
// 1e-12; raw coefficient vectors skip the flag.
class State {
  public:
    State(Dim dim, Vec amp) : dim_(dim), amp_(std::move(amp)), normalized_(true) {
        check_size();
        if (std::abs(amp_.norm() - 1.0) > 1e-12) {
            throw std::invalid_argument("State: amplitudes are not normalized");
        }
    }

    // Scales the amplitudes to unit norm.
    static State normalized(Dim dim, Vec amp) {
        double nrm = amp.norm();
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            throw std::invalid_argument("State: cannot normalize a zero vector");
        }
        return State(dim, amp / nrm);
    }

    // Keeps the amplitudes as given, flagged unnormalized.
    static State raw(Dim dim, Vec amp) {
        State s(dim, std::move(amp), 0);
        return s;
    }

    Dim dim() const { return dim_; }
    const Vec &amp() const { return amp_; }
    Complex amp(int offset) const { return amp_(offset); }
    bool is_normalized_flagged() const { return normalized_; }
    double norm() const { return amp_.norm(); }

  private:
    State(Dim dim, Vec amp, int) : dim_(dim), amp_(std::move(amp)), normalized_(false) { check_size(); }

    void check_size() const {
        if (amp_.size() != dim_.n()) {
            throw std::invalid_argument("State: amplitude count does not match dim");
        }
    }

    Dim dim_;
    Vec amp_;
    bool normalized_;
};

// <u, v>, conjugate-linear in the first argument.
inline Complex inner(const State &u, const State &v) {
    if (u.dim() != v.dim()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    return u.amp().dot(v.amp());
}

// Dense N x N operator; entry (r, s) is the coefficient of phi_r <phi_s, .>.
class Op {
  public:
    Op(Dim dim, Mat m) : dim_(dim), mat_(std::move(m)) {
        if (mat_.rows() != dim_.n() || mat_.cols() != dim_.n()) {
            throw std::invalid_argument("Op: matrix shape does not match dim");
        }
    }

    static Op identity(Dim dim) { return Op(dim, Mat::Identity(dim.n(), dim.n())); }
    static Op zero(Dim dim) { return Op(dim, Mat::Zero(dim.n(), dim.n())); }

    Dim dim() const { return dim_; }
    const Mat &mat() const { return mat_; }

    Op adjoint() const { return Op(dim_, mat_.adjoint()); }
    Complex trace() const { return mat_.trace(); }
    double max_abs() const { return mat_.cwiseAbs().maxCoeff(); }

    bool is_hermitian(double tol = 1e-12) const {
        return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }

    bool is_unitary(double tol = 1e-12) const {
        Mat d = mat_ * mat_.adjoint() - Mat::Identity(dim_.n(), dim_.n());
        return d.cwiseAbs().maxCoeff() <= tol;
    }

    bool is_normal(double tol = kDefaultTol) const {
        Mat d = mat_ * mat_.adjoint() - mat_.adjoint() * mat_;
        return d.cwiseAbs().maxCoeff() <= tol;
    }

    State apply(const State &psi) const {
        if (psi.dim() != dim_) {
            throw std::invalid_argument("Op: state dimension mismatch");
        }
        Vec out = mat_ * psi.amp();
        return State::raw(dim_, std::move(out));
    }

    friend Op operator*(const Op &a, const Op &b) {
        check_same(a, b);
        return Op(a.dim_, a.mat_ * b.mat_);
    }
    friend Op operator+(const Op &a, const Op &b) {
        check_same(a, b);
        return Op(a.dim_, a.mat_ + b.mat_);
    }
    friend Op operator-(const Op &a, const Op &b) {
        check_same(a, b);
        return Op(a.dim_, a.mat_ - b.mat_);
    }
    friend Op operator*(Complex c, const Op &a) { return Op(a.dim_, c * a.mat_); }

  private:
    static void check_same(const Op &a, const Op &b) {
        if (a.dim_ != b.dim_) {
            throw std::invalid_argument("Op: dimension mismatch");
        }
    }

    Dim dim_;
    Mat mat_;
};

inline double deviation(const Op &a, const Op &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("deviation: dimension mismatch");
    }
    return (a.mat() - b.mat()).cwiseAbs().maxCoeff();
}

inline double deviation(const Mat &a, const Mat &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// N orthonormal columns; column at offset k + j holds the vector labeled k.
// Orthonormality is a construction contract, checked within tol.
class Basis {
  public:
    Basis(Dim dim, Mat cols, double tol = kDefaultTol) : dim_(dim), mat_(std::move(cols)) {
        if (mat_.rows() != dim_.n() || mat_.cols() != dim_.n()) {
            throw std::invalid_argument("Basis: matrix shape does not match dim");
        }
        Mat gram = mat_.adjoint() * mat_;
        double dev = (gram - Mat::Identity(dim_.n(), dim_.n())).cwiseAbs().maxCoeff();
        if (dev > tol) {
            throw contract_error("Basis: columns are not orthonormal (deviation " + std::to_string(dev) + ")");
        }
    }

    static Basis position(Dim dim) { return Basis(dim, Mat::Identity(dim.n(), dim.n())); }

    Dim dim() const { return dim_; }
    const Mat &mat() const { return mat_; }

    State column(int offset) const {
        if (offset < 0 || offset >= dim_.n()) {
            throw std::invalid_argument("Basis: offset out of range");
        }
        return State::normalized(dim_, mat_.col(offset));
    }

    State column_for(double label) const { return column(dim_.offset(label)); }

  private:
    Dim dim_;
    Mat mat_;
};

struct EigenPair {
    Complex value;
    Vec vector;
};

// Rotates v so its largest-magnitude component is real and positive; ties
// within a relative 1e-9 break toward the lowest offset.
inline void fix_phase(Vec &v) {
    int n = static_cast<int>(v.size());
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        best = std::max(best, std::abs(v(i)));
    }
    int idx = 0;
    for (int i = 0; i < n; ++i) {
        if (std::abs(v(i)) >= best * (1.0 - 1e-9)) {
            idx = i;
            break;
        }
    }
    double mag = std::abs(v(idx));
    if (mag > 0.0) {
        v *= std::conj(v(idx)) / mag;
    }
}

// Full spectral decomposition of a normal operator. Pairs are sorted by
// ascending complex argument of the eigenvalue in (-pi, pi], then by
// ascending modulus; eigenvectors are orthonormal and phase-fixed.
class EigenSystem {
  public:
    EigenSystem(Dim dim, std::vector<EigenPair> pairs) : dim_(dim), pairs_(std::move(pairs)) {}

    Dim dim() const { return dim_; }
    const std::vector<EigenPair> &pairs() const { return pairs_; }
    const EigenPair &pair(int i) const { return pairs_.at(i); }

    Mat vectors() const {
        Mat m(dim_.n(), dim_.n());
        for (int i = 0; i < dim_.n(); ++i) {
            m.col(i) = pairs_[i].vector;
        }
        return m;
    }

    Vec values() const {
        Vec v(dim_.n());
        for (int i = 0; i < dim_.n(); ++i) {
            v(i) = pairs_[i].value;
        }
        return v;
    }

  private:
    Dim dim_;
    std::vector<EigenPair> pairs_;
};

namespace detail {

inline bool eigen_order(const EigenPair &a, const EigenPair &b) {
    double arg_a = std::arg(a.value);
    double arg_b = std::arg(b.value);
    // arg() returns -pi for the negative real axis; fold it to +pi.
    if (arg_a == -kPi) arg_a = kPi;
    if (arg_b == -kPi) arg_b = kPi;
    if (arg_a != arg_b) {
        return arg_a < arg_b;
    }
    return std::abs(a.value) < std::abs(b.value);
}

// Re-orthonormalizes eigenvector clusters belonging to (numerically)
// repeated eigenvalues via a QR factorization of the cluster block.
inline void orthonormalize_clusters(std::vector<EigenPair> &pairs, double cluster_tol) {
    size_t i = 0;
    while (i < pairs.size()) {
        size_t jend = i + 1;
        while (jend < pairs.size() && std::abs(pairs[jend].value - pairs[i].value) <= cluster_tol) {
            ++jend;
        }
        if (jend - i > 1) {
            Mat block(pairs[i].vector.size(), jend - i);
            for (size_t c = i; c < jend; ++c) {
                block.col(c - i) = pairs[c].vector;
            }
            Eigen::HouseholderQR<Mat> qr(block);
            Mat q = qr.householderQ() * Mat::Identity(block.rows(), block.cols());
            for (size_t c = i; c < jend; ++c) {
                pairs[c].vector = q.col(c - i);
            }
        }
        i = jend;
    }
}

} // namespace detail

inline EigenSystem eig_normal(const Op &a, double normal_tol = kDefaultTol) {
    if (!a.is_normal(normal_tol)) {
        throw contract_error("eig_normal: operator is not normal");
    }
    int n = a.dim().n();
    std::vector<EigenPair> pairs(n);
    if (a.is_hermitian(normal_tol)) {
        Eigen::SelfAdjointEigenSolver<Mat> solver(a.mat());
        if (solver.info() != Eigen::Success) {
            throw contract_error("eig_normal: hermitian eigensolver failed");
        }
        for (int i = 0; i < n; ++i) {
            pairs[i].value = Complex(solver.eigenvalues()(i), 0.0);
            pairs[i].vector = solver.eigenvectors().col(i);
        }
    } else {
        Eigen::ComplexEigenSolver<Mat> solver(a.mat());
        if (solver.info() != Eigen::Success) {
            throw contract_error("eig_normal: eigensolver failed");
        }
        for (int i = 0; i < n; ++i) {
            pairs[i].value = solver.eigenvalues()(i);
            pairs[i].vector = solver.eigenvectors().col(i).normalized();
        }
        std::sort(pairs.begin(), pairs.end(), [](const EigenPair &x, const EigenPair &y) {
            if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
            return x.value.imag() < y.value.imag();
        });
        detail::orthonormalize_clusters(pairs, 1e-8);
    }
    std::sort(pairs.begin(), pairs.end(), detail::eigen_order);
    for (auto &p : pairs) {
        fix_phase(p.vector);
    }
    for (const auto &p : pairs) {
        double resid = (a.mat() * p.vector - p.value * p.vector).norm();
        if (resid > 1e-9) {
            throw contract_error("eig_normal: eigenpair residual " + std::to_string(resid) + " exceeds 1e-9");
        }
    }
    return EigenSystem(a.dim(), std::move(pairs));
}

// exp(scale * A) for normal A, via the spectral decomposition.
inline Op op_exp(const Op &a, Complex scale) {
    EigenSystem es = eig_normal(a);
    int n = a.dim().n();
    Mat v = es.vectors();
    Vec e(n);
    for (int i = 0; i < n; ++i) {
        e(i) = std::exp(scale * es.pair(i).value);
    }
    return Op(a.dim(), v * e.asDiagonal() * v.adjoint());
}

// Assigns each lattice label k the eigenpair whose eigenvalue is nearest
// omega^{sign * k}; rejects matches farther than 1e-6 or claimed twice.
inline std::vector<EigenPair> match_to_roots(const EigenSystem &es, Dim dim, int sign) {
    int n = dim.n();
    std::vector<EigenPair> out(n);
    std::vector<bool> used(n, false);
    for (int o = 0; o < n; ++o) {
        Complex target = omega_pow(dim, sign * dim.label(o));
        int best = -1;
        double best_dist = 1e300;
        for (int i = 0; i < n; ++i) {
            double d = std::abs(es.pair(i).value - target);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        if (best_dist > 1e-6) {
            throw contract_error("match_to_roots: no eigenvalue within 1e-6 of target root");
        }
        if (used[best]) {
            throw contract_error("match_to_roots: eigenvalue matched twice");
        }
        used[best] = true;
        out[o] = es.pair(best);
    }
    return out;
}

} // namespace ringqm
