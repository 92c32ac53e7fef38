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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "ringqm/mub.hpp"

using namespace ringqm;

TEST_CASE("tb_op composes the shift and the phase ramp") {
    Op tb2 = tb_op(Dim(2));
    CHECK(std::abs(tb2.mat()(0, 1) - Complex(0.0, -1.0)) <= 1e-15);
    CHECK(std::abs(tb2.mat()(1, 0) - Complex(0.0, -1.0)) <= 1e-15);
    CHECK(std::abs(tb2.mat()(0, 0)) <= 1e-15);
    CHECK(std::abs(tb2.mat()(1, 1)) <= 1e-15);

    for (int n = 2; n <= 32; ++n) {
        Dim d(n);
        Op tb = tb_op(d);
        CHECK(deviation(tb * tb.adjoint(), Op::identity(d)) <= 1e-13);
        CHECK(deviation(tb.adjoint(), boost_op(d).adjoint() * translation_op(d).adjoint()) <= 1e-14);
    }
}

TEST_CASE("tb_op spectrum consists of simple roots of unity") {
    for (int n = 2; n <= 32; ++n) {
        Dim d(n);
        EigenSystem es = eig_normal(tb_op(d));
        auto matched = match_to_roots(es, d, 1);
        for (int o = 0; o < n; ++o) {
            CHECK(std::abs(matched[o].value - omega_pow(d, d.label(o))) <= 1e-10);
        }
    }
}

TEST_CASE("eta_basis_position columns are tb_op eigenvectors") {
    SECTION("two-site lower column") {
        Basis eta = eta_basis_position(Dim(2));
        Vec lower = eta.column_for(-0.5).amp();
        Complex expect = std::polar(1.0 / std::sqrt(2.0), kPi / 8.0);
        CHECK(std::abs(lower(0) - expect) <= 1e-15);
        CHECK(std::abs(lower(1) - expect) <= 1e-15);
    }

    SECTION("component magnitudes are flat") {
        for (int n : {2, 3, 4, 8, 16}) {
            Basis eta = eta_basis_position(Dim(n));
            double flat = 1.0 / std::sqrt(static_cast<double>(n));
            for (int c = 0; c < n; ++c) {
                for (int r = 0; r < n; ++r) {
                    CHECK(std::abs(std::abs(eta.mat()(r, c)) - flat) <= 1e-14);
                }
            }
        }
    }

    SECTION("eigenvector residuals") {
        for (int n = 2; n <= 16; ++n) {
            Dim d(n);
            Op tb = tb_op(d);
            Basis eta = eta_basis_position(d);
            for (int so = 0; so < n; ++so) {
                Vec v = eta.column(so).amp();
                Complex lam = omega_pow(d, d.label(so));
                CHECK((tb.mat() * v - lam * v).cwiseAbs().maxCoeff() <= 1e-12);
            }
        }
    }

    SECTION("matches the solver frame label by label") {
        for (int n = 2; n <= 16; ++n) {
            Dim d(n);
            EigenSystem es = eig_normal(tb_op(d));
            auto matched = match_to_roots(es, d, 1);
            Basis eta = eta_basis_position(d);
            for (int so = 0; so < n; ++so) {
                Complex ov = matched[so].vector.dot(eta.column(so).amp());
                CHECK(std::abs(ov) >= 1.0 - 1e-9);
            }
        }
    }
}

TEST_CASE("eta_basis_momentum reproduces the position-route columns up to phase") {
    for (int n = 2; n <= 16; ++n) {
        Dim d(n);
        Basis via_mom = eta_basis_momentum(d);
        Basis via_pos = eta_basis_position(d);
        Op tb = tb_op(d);
        for (int so = 0; so < n; ++so) {
            Vec m = via_mom.column(so).amp();
            Vec p = via_pos.column(so).amp();

            Complex lam = omega_pow(d, d.label(so));
            CHECK((tb.mat() * m - lam * m).cwiseAbs().maxCoeff() <= 1e-12);

            Complex ratio0 = m(0) / p(0);
            CHECK(std::abs(std::abs(ratio0) - 1.0) <= 1e-12);
            for (int r = 1; r < n; ++r) {
                CHECK(std::abs(m(r) / p(r) - ratio0) <= 1e-12);
            }
        }
    }

    SECTION("two-site relative phases") {
        Dim d2(2);
        Basis via_mom = eta_basis_momentum(d2);
        Basis via_pos = eta_basis_position(d2);
        Complex r_lower = via_mom.column(0).amp()(0) / via_pos.column(0).amp()(0);
        Complex r_upper = via_mom.column(1).amp()(0) / via_pos.column(1).amp()(0);
        CHECK(std::abs(r_lower - std::polar(1.0, -kPi / 4.0)) <= 1e-12);
        CHECK(std::abs(r_upper - std::polar(1.0, kPi / 4.0)) <= 1e-12);
    }
}

TEST_CASE("the three bases are pairwise mutually unbiased") {
    for (int n = 2; n <= 32; ++n) {
        Dim d(n);
        Basis pos = Basis::position(d);
        Basis mom = momentum_basis(d);
        Basis eta = eta_basis_position(d);

        UnbiasednessReport pm = unbiasedness(pos, mom);
        UnbiasednessReport pe = unbiasedness(pos, eta);
        UnbiasednessReport me = unbiasedness(mom, eta);
        CHECK(pm.max_deviation <= 1e-10);
        CHECK(pe.max_deviation <= 1e-10);
        CHECK(me.max_deviation <= 1e-10);

        if (n <= 8) {
            CHECK(pm.max_deviation <= 1e-12);
            CHECK(pe.max_deviation <= 1e-12);
        }
    }
}

TEST_CASE("unbiasedness against itself flags the orthogonal structure") {
    Dim d4(4);
    Basis pos = Basis::position(d4);
    UnbiasednessReport self = unbiasedness(pos, pos);
    CHECK(std::abs(self.max_deviation - (1.0 - 0.5)) <= 1e-14);
    CHECK(std::abs(self.min_deviation - 0.5) <= 1e-14);

    SECTION("grid rows are probability distributions") {
        for (int n : {2, 3, 8, 16}) {
            Dim d(n);
            UnbiasednessReport rep = unbiasedness(Basis::position(d), eta_basis_position(d));
            REQUIRE(rep.grid.rows() == n);
            for (int r = 0; r < n; ++r) {
                double total = 0.0;
                for (int c = 0; c < n; ++c) {
                    total += rep.grid(r, c) * rep.grid(r, c);
                }
                CHECK(std::abs(total - 1.0) <= 1e-10);
            }
        }
    }

    CHECK_THROWS_AS(unbiasedness(Basis::position(Dim(2)), Basis::position(Dim(3))),
                    std::invalid_argument);
}

TEST_CASE("gauss_identity_check fits a single unit phase") {
    SECTION("two sites, zero shift") {
        PhaseIdentityReport rep = gauss_identity_check(Dim(2), 0.0);
        CHECK(rep.residual <= 1e-12);
        CHECK(std::abs(rep.phase - std::polar(1.0, kPi / 4.0)) <= 1e-12);
        CHECK(std::abs(std::abs(rep.phase) - 1.0) <= 1e-13);
    }

    SECTION("two sites, unit shift") {
        PhaseIdentityReport rep = gauss_identity_check(Dim(2), 1.0);
        CHECK(rep.residual <= 1e-12);
        CHECK(std::abs(rep.phase - std::polar(1.0, -kPi / 4.0)) <= 1e-12);
    }

    SECTION("three sites, half-odd shift") {
        PhaseIdentityReport rep = gauss_identity_check(Dim(3), 0.5);
        CHECK(rep.residual <= 1e-10);
    }

    SECTION("parity rules for the shift") {
        CHECK_THROWS_AS(gauss_identity_check(Dim(2), 0.5), std::domain_error);
        CHECK_THROWS_AS(gauss_identity_check(Dim(3), 1.0), std::domain_error);
        CHECK_THROWS_AS(gauss_identity_check(Dim(4), 0.3), std::domain_error);
    }

    SECTION("sweep over admissible shifts") {
        for (int n = 2; n <= 16; ++n) {
            Dim d(n);
            std::vector<double> bs;
            if (d.is_even()) {
                for (int b = -n; b <= n; ++b) {
                    bs.push_back(b);
                }
            } else {
                for (double b = -n + 0.5; b <= n; b += 1.0) {
                    bs.push_back(b);
                }
            }
            for (double b : bs) {
                PhaseIdentityReport rep = gauss_identity_check(d, b);
                INFO("n=" << n << " b=" << b);
                CHECK(rep.residual <= 1e-10);
                CHECK(std::abs(std::abs(rep.phase) - 1.0) <= 1e-12);
            }
        }
    }
}

TEST_CASE("gauss_identity_check_asym holds exactly for integer shifts") {
    for (int n = 2; n <= 8; ++n) {
        for (int b = -3; b <= 3; ++b) {
            PhaseIdentityReport rep = gauss_identity_check_asym(Dim(n), b);
            INFO("n=" << n << " b=" << b);
            CHECK(rep.residual <= 1e-10);
        }
    }
    CHECK_THROWS_AS(gauss_identity_check_asym(Dim(3), 0.5), std::domain_error);
}

TEST_CASE("tb_generator exponentiates back to the product operator") {
    Dim d3(3);
    LatticeScales sc3 = LatticeScales::symmetric(d3);
    Op s3 = tb_generator(d3, sc3);
    CHECK(s3.is_hermitian(1e-12));
    EigenSystem es = eig_normal(s3);
    std::vector<double> vals;
    for (int i = 0; i < 3; ++i) {
        vals.push_back(es.pair(i).value.real());
    }
    std::sort(vals.begin(), vals.end());
    CHECK(std::abs(vals[0] + 2.0 * kPi / 3.0) <= 1e-12);
    CHECK(std::abs(vals[1]) <= 1e-12);
    CHECK(std::abs(vals[2] - 2.0 * kPi / 3.0) <= 1e-12);

    SECTION("exp(iS) equals TB across dimensions") {
        for (int n = 2; n <= 32; ++n) {
            Dim d(n);
            Op s = tb_generator(d, LatticeScales::symmetric(d));
            CHECK(deviation(op_exp(s, Complex(0.0, 1.0)), tb_op(d)) <= 1e-10);
            CHECK(std::abs(s.trace()) <= 1e-12);
        }
    }
}

TEST_CASE("weyl_swap_deviation certifies both orderings") {
    CHECK(weyl_swap_deviation(canonical_set(Dim(2))) <= 1e-12);
    for (int n = 3; n <= 16; ++n) {
        CHECK(weyl_swap_deviation(canonical_set(Dim(n))) <= 1e-11);
    }
}

TEST_CASE("xp_difference_unbiasedness separates from both defining bases") {
    XPDifferenceReport rep4 = xp_difference_unbiasedness(canonical_set(Dim(4)));
    CHECK(rep4.vs_position.max_deviation > 1e-3);
    CHECK(rep4.vs_momentum.max_deviation > 1e-3);
    CHECK_FALSE(rep4.degenerate);

    XPDifferenceReport rep8 = xp_difference_unbiasedness(canonical_set(Dim(8)));
    XPDifferenceReport rep32 = xp_difference_unbiasedness(canonical_set(Dim(32)));
    CHECK(rep32.vs_position.max_deviation < rep8.vs_position.max_deviation);
    CHECK(rep32.min_gap > 1e-8);

    SECTION("symmetric scales make the two views coincide") {
        for (int n : {2, 3, 4, 8, 16, 32}) {
            XPDifferenceReport rep = xp_difference_unbiasedness(canonical_set(Dim(n)));
            CHECK(std::abs(rep.vs_position.max_deviation - rep.vs_momentum.max_deviation) <= 1e-9);
        }
    }
}
