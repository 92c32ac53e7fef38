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

// Command line front end: self-verifying numerical checks for quantum
// mechanics on a finite cyclic lattice. Every subcommand runs a set of
// named checks, prints a table, and exits 0 only if all of them pass.
// Exit codes: 0 all checks pass, 1 a verification check failed, 2 usage
// or input error.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ringqm/ringqm.hpp"

namespace {

using namespace ringqm;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    int dim = 8;
    std::optional<double> scale_a;
    std::optional<double> tol;
    std::string json_path;
    std::string csv_path;
    std::uint64_t seed = 0;
};

void add_common(CLI::App *sub, CommonOpts &opts, bool with_dim = true) {
    if (with_dim) {
        sub->add_option("--dim", opts.dim, "Hilbert space dimension")
            ->check(CLI::Range(2, 4096))
            ->capture_default_str();
    }
    sub->add_option("--scale-a", opts.scale_a,
                    "Position lattice spacing (default: symmetric, a = g)");
    sub->add_option("--tol", opts.tol, "Override every check threshold");
    sub->add_option("--json", opts.json_path, "Write the full report as JSON");
    sub->add_option("--csv", opts.csv_path, "Write tabular results as CSV");
    sub->add_option("--seed", opts.seed, "Seed for randomized grids")->capture_default_str();
}

LatticeScales make_scales(Dim dim, const CommonOpts &opts) {
    if (opts.scale_a) {
        return LatticeScales::from_a(dim, *opts.scale_a);
    }
    return LatticeScales::symmetric(dim);
}

double thr(const CommonOpts &opts, double fallback) {
    return opts.tol.value_or(fallback);
}

struct CheckRow {
    std::string name;
    double value;
    double threshold;
    std::string bound;
    bool pass;
};

class Report {
  public:
    Report(std::string command, std::vector<int> dims, std::uint64_t seed)
        : command_(std::move(command)), dims_(std::move(dims)), seed_(seed) {}

    void set_scales(const LatticeScales &sc) {
        a_ = sc.a();
        g_ = sc.g();
        has_scales_ = true;
    }

    // Passes when value <= threshold.
    void check_max(const std::string &name, double value, double threshold) {
        checks_.push_back({name, value, threshold, "max", value <= threshold});
    }

    // Passes when value exceeds threshold (separation style checks).
    void check_min(const std::string &name, double value, double threshold) {
        checks_.push_back({name, value, threshold, "min", value > threshold});
    }

    bool all_pass() const {
        for (const auto &c : checks_) {
            if (!c.pass) {
                return false;
            }
        }
        return true;
    }

    json &payload() { return payload_; }

    json to_report_json(double wall_s) const {
        json rows = json::array();
        for (const auto &c : checks_) {
            rows.push_back({{"name", c.name},
                            {"deviation", c.value},
                            {"threshold", c.threshold},
                            {"bound", c.bound},
                            {"pass", c.pass}});
        }
        json out{{"command", command_}, {"dims", dims_},     {"seed", seed_},
                 {"checks", rows},      {"pass", all_pass()}, {"wall_time_s", wall_s}};
        out["scales"] = has_scales_ ? json{{"a", a_}, {"g", g_}} : json(nullptr);
        for (const auto &item : payload_.items()) {
            out[item.key()] = item.value();
        }
        return out;
    }

    void print(double wall_s) const {
        std::printf("ringqm %s", command_.c_str());
        for (int d : dims_) {
            std::printf(" dim=%d", d);
        }
        if (has_scales_) {
            std::printf(" a=%.6g g=%.6g", a_, g_);
        }
        std::printf(" seed=%llu\n", static_cast<unsigned long long>(seed_));
        for (const auto &c : checks_) {
            std::printf("  %s %-28s value=%.6e threshold=%.1e (%s)\n",
                        c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.threshold,
                        c.bound.c_str());
        }
        std::printf("result: %s (%zu checks, %.3f s)\n", all_pass() ? "PASS" : "FAIL",
                    checks_.size(), wall_s);
    }

  private:
    std::string command_;
    std::vector<int> dims_;
    std::uint64_t seed_;
    bool has_scales_ = false;
    double a_ = 0.0;
    double g_ = 0.0;
    std::vector<CheckRow> checks_;
    json payload_ = json::object();
};

void write_text(const std::string &path, const std::string &content) {
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot open for writing: " + path);
    }
    out << content;
    if (!out) {
        throw UsageError("write failed: " + path);
    }
}

void write_json(const std::string &path, const json &j) {
    if (!path.empty()) {
        write_text(path, j.dump(2) + "\n");
    }
}

std::string checks_csv(const json &report) {
    std::ostringstream out;
    out << "name,deviation,threshold,pass\n";
    for (const auto &row : report["checks"]) {
        out << row["name"].get<std::string>() << "," << row["deviation"].dump() << ","
            << row["threshold"].dump() << "," << (row["pass"].get<bool>() ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string fmt_double(double v) {
    return json(v).dump();
}

int finish(const Report &report, const CommonOpts &opts, double wall_s,
           const std::string &csv_content) {
    json rep = report.to_report_json(wall_s);
    write_json(opts.json_path, rep);
    if (!opts.csv_path.empty()) {
        write_text(opts.csv_path, csv_content.empty() ? checks_csv(rep) : csv_content);
    }
    report.print(wall_s);
    return report.all_pass() ? 0 : 1;
}

double spectrum_deviation(const Op &op, Dim dim, int sign) {
    EigenSystem es = eig_normal(op);
    auto matched = match_to_roots(es, dim, sign);
    double worst = 0.0;
    for (int o = 0; o < dim.n(); ++o) {
        worst = std::max(worst, std::abs(matched[o].value - omega_pow(dim, sign * dim.label(o))));
    }
    return worst;
}

int run_ops(const CommonOpts &opts) {
    auto t0 = std::chrono::steady_clock::now();
    Dim dim(opts.dim);
    LatticeScales sc = make_scales(dim, opts);
    CanonicalSet set = canonical_set(dim, sc);

    Report report("ops", {dim.n()}, opts.seed);
    report.set_scales(sc);

    report.check_max("t_unitary", deviation(set.t_op * set.t_op.adjoint(), Op::identity(dim)),
                     thr(opts, 1e-12));
    report.check_max("b_unitary", deviation(set.b_op * set.b_op.adjoint(), Op::identity(dim)),
                     thr(opts, 1e-12));
    report.check_max("x_hermitian", deviation(set.x_op.adjoint(), set.x_op), thr(opts, 1e-12));
    report.check_max("p_hermitian", deviation(set.p_op.adjoint(), set.p_op), thr(opts, 1e-12));
    report.check_max("t_spectrum", spectrum_deviation(set.t_op, dim, -1), thr(opts, 1e-10));
    report.check_max("b_spectrum", spectrum_deviation(set.b_op, dim, 1), thr(opts, 1e-10));
    report.check_max("exponential_forms", exponential_form_deviation(set), thr(opts, 1e-11));

    Op power = Op::identity(dim);
    for (int i = 0; i < dim.n(); ++i) {
        power = set.t_op * power;
    }
    double sign = dim.is_even() ? -1.0 : 1.0;
    report.check_max("translation_power_sign",
                     deviation(power, Complex(sign, 0.0) * Op::identity(dim)), thr(opts, 1e-11));

    Op comm = commutator(set.x_op, set.p_op);
    report.check_max("commutator_trace", std::abs(comm.trace()), thr(opts, 1e-10));

    report.payload()["operators"] = json{{"x", to_json(set.x_op)},
                                         {"p", to_json(set.p_op)},
                                         {"t", to_json(set.t_op)},
                                         {"b", to_json(set.b_op)}};

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finish(report, opts, wall, "");
}

int run_commutator_sweep(const CommonOpts &opts, const std::vector<int> &dims) {
    auto t0 = std::chrono::steady_clock::now();
    Report report("commutator-sweep", dims, opts.seed);

    std::vector<double> devs;
    std::ostringstream csv;
    csv << "dim,deviation\n";
    json rows = json::array();
    for (int n : dims) {
        Dim d(n);
        CanonicalSet set = canonical_set(d);
        Complex v = commutator_expectation(set, gaussian_probe(d));
        double dev = std::abs(v - Complex(0.0, 1.0));
        devs.push_back(dev);
        csv << n << "," << fmt_double(dev) << "\n";
        rows.push_back({{"dim", n}, {"deviation", dev}});
    }
    report.payload()["sweep"] = rows;

    if (dims.size() > 1) {
        double worst_step = devs[1] - devs[0];
        for (std::size_t i = 1; i < devs.size(); ++i) {
            worst_step = std::max(worst_step, devs[i] - devs[i - 1]);
        }
        // Positive margin exactly when every consecutive difference is negative.
        report.check_min("strict_decrease_margin", -worst_step, 0.0);
    }
    report.check_max("final_deviation", devs.back(), thr(opts, 1e-2));

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finish(report, opts, wall, csv.str());
}

void grid_csv_rows(std::ostringstream &out, const std::string &pair, Dim dim,
                   const UnbiasednessReport &rep) {
    for (int r = 0; r < dim.n(); ++r) {
        for (int c = 0; c < dim.n(); ++c) {
            double m = rep.grid(r, c);
            out << pair << "," << dim.label(r) << "," << dim.label(c) << "," << fmt_double(m)
                << "," << fmt_double(m * m) << "\n";
        }
    }
}

int run_mub(const CommonOpts &opts) {
    auto t0 = std::chrono::steady_clock::now();
    Dim dim(opts.dim);
    LatticeScales sc = make_scales(dim, opts);
    Report report("mub", {dim.n()}, opts.seed);
    report.set_scales(sc);

    Basis pos = Basis::position(dim);
    Basis mom = momentum_basis(dim);
    Basis eta = eta_basis_position(dim);
    UnbiasednessReport pm = unbiasedness(pos, mom);
    UnbiasednessReport pe = unbiasedness(pos, eta);
    UnbiasednessReport me = unbiasedness(mom, eta);
    double triple = std::max({pm.max_deviation, pe.max_deviation, me.max_deviation});
    report.check_max("triple_unbiasedness", triple, thr(opts, 1e-10));

    report.check_max("tb_spectrum", spectrum_deviation(tb_op(dim), dim, 1), thr(opts, 1e-10));

    Op s = tb_generator(dim, sc);
    report.check_max("tb_exponential", deviation(op_exp(s, Complex(0.0, 1.0)), tb_op(dim)),
                     thr(opts, 1e-10));

    CanonicalSet set = canonical_set(dim, sc);
    report.check_max("weyl_swap", weyl_swap_deviation(set), thr(opts, 1e-11));

    json gauss_rows = json::array();
    double worst_gauss = 0.0;
    std::vector<double> bs;
    if (dim.is_even()) {
        for (int b = -dim.n(); b <= dim.n(); ++b) {
            bs.push_back(b);
        }
    } else {
        for (double b = -dim.n() + 0.5; b <= dim.n(); b += 1.0) {
            bs.push_back(b);
        }
    }
    for (double b : bs) {
        PhaseIdentityReport ph = gauss_identity_check(dim, b);
        worst_gauss = std::max(worst_gauss, ph.residual);
        gauss_rows.push_back(
            {{"b", ph.b}, {"phase", to_json(ph.phase)}, {"residual", ph.residual}});
    }
    report.check_max("gauss_max_residual", worst_gauss, thr(opts, 1e-10));

    XPDifferenceReport xp = xp_difference_unbiasedness(set);
    double separation = std::min(xp.vs_position.max_deviation, xp.vs_momentum.max_deviation);
    report.check_min("xp_separation", separation, 1e-3);

    report.payload()["gauss"] = gauss_rows;
    report.payload()["unbiasedness"] = json{
        {"position_momentum", to_json(pm)}, {"position_eta", to_json(pe)},
        {"momentum_eta", to_json(me)}};

    std::ostringstream csv;
    csv << "pair,row_label,col_label,magnitude,probability\n";
    grid_csv_rows(csv, "position-momentum", dim, pm);
    grid_csv_rows(csv, "position-eta", dim, pe);
    grid_csv_rows(csv, "momentum-eta", dim, me);

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finish(report, opts, wall, csv.str());
}

State initial_state(Dim dim, const std::string &preset, const std::string &state_path) {
    if (!state_path.empty()) {
        std::ifstream in(state_path);
        if (!in) {
            throw UsageError("cannot read state file: " + state_path);
        }
        json parsed;
        try {
            parsed = json::parse(in);
        } catch (const json::parse_error &e) {
            throw UsageError(std::string("state file is not valid JSON: ") + e.what());
        }
        Vec v;
        try {
            v = vec_from_json(parsed);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        if (v.size() != dim.n()) {
            throw UsageError("state file length does not match --dim");
        }
        if (v.norm() == 0.0) {
            throw UsageError("state file holds the zero vector");
        }
        return State::normalized(dim, v);
    }
    if (preset == "delta") {
        Vec v = Vec::Zero(dim.n());
        double site = dim.is_even() ? -0.5 : 0.0;
        v(dim.offset(site)) = 1.0;
        return State(dim, v);
    }
    if (preset == "gaussian-probe") {
        return gaussian_probe(dim);
    }
    if (preset == "uniform") {
        Vec v = Vec::Constant(dim.n(), Complex(1.0, 0.0));
        return State::normalized(dim, v);
    }
    throw UsageError("unknown preset: " + preset);
}

int run_evolve(const CommonOpts &opts, const std::string &preset, const std::string &state_path,
               const std::string &until, int steps, double mass) {
    auto t0 = std::chrono::steady_clock::now();
    Dim dim(opts.dim);
    LatticeScales sc = make_scales(dim, opts);
    EvolutionConfig cfg(dim, sc, mass);
    Report report("evolve", {dim.n()}, opts.seed);
    report.set_scales(sc);

    bool revival_mode = (until == "revival");
    double t_final = 0.0;
    if (revival_mode) {
        t_final = revival_period(cfg);
    } else {
        std::size_t used = 0;
        try {
            t_final = std::stod(until, &used);
        } catch (const std::exception &) {
            throw UsageError("--until expects 'revival' or a number");
        }
        if (used != until.size() || !std::isfinite(t_final) || t_final < 0.0) {
            throw UsageError("--until expects 'revival' or a nonnegative number");
        }
    }

    State c0 = initial_state(dim, preset, state_path);
    std::vector<double> times;
    if (t_final == 0.0) {
        times.push_back(0.0);
    } else {
        for (int i = 0; i <= steps; ++i) {
            times.push_back(t_final * i / steps);
        }
    }

    std::ostringstream csv;
    csv << "t,x,probability\n";
    double norm_dev = 0.0;
    double route_dev = 0.0;
    Eigen::VectorXd first_prob;
    Eigen::VectorXd last_prob;
    State d0 = dft_forward(c0);
    for (double t : times) {
        State via_pos = evolve_position(cfg, c0, t);
        State via_mom = dft_inverse(evolve_momentum(cfg, d0, t));
        route_dev = std::max(route_dev,
                             (via_pos.amp() - via_mom.amp()).cwiseAbs().maxCoeff());
        norm_dev = std::max(norm_dev, std::abs(via_pos.norm() - 1.0));
        Eigen::VectorXd prob = via_pos.amp().cwiseAbs2();
        if (first_prob.size() == 0) {
            first_prob = prob;
        }
        last_prob = prob;
        for (int o = 0; o < dim.n(); ++o) {
            csv << fmt_double(t) << "," << dim.label(o) << "," << fmt_double(prob(o)) << "\n";
        }
    }

    report.check_max("norm_preserved", norm_dev, thr(opts, 1e-9));
    report.check_max("route_agreement", route_dev, thr(opts, 1e-10));
    if (revival_mode) {
        double rev = (last_prob - first_prob).cwiseAbs().maxCoeff();
        report.check_max("revival_distribution", rev, thr(opts, 1e-9));
    }

    report.payload()["tau"] = cfg.tau();
    report.payload()["revival_period"] = revival_period(cfg);
    report.payload()["t_final"] = times.back();
    report.payload()["times"] = times;

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finish(report, opts, wall, csv.str());
}

int run_sums(const CommonOpts &opts) {
    auto t0 = std::chrono::steady_clock::now();
    Dim dim(opts.dim);
    int n = dim.n();
    Report report("sums", {n}, opts.seed);

    auto literal_term = [n](double t) { return std::exp(Complex(0.0, 2.0 * kPi * t / n)); };
    auto literal_omega = [&](double r) {
        Complex acc(0.0, 0.0);
        for (int o = 0; o < n; ++o) {
            acc += literal_term(dim.label(o) * r);
        }
        return acc;
    };
    auto literal_k_weighted = [&](double r) {
        Complex acc(0.0, 0.0);
        for (int o = 0; o < n; ++o) {
            acc += dim.label(o) * literal_term(dim.label(o) * r);
        }
        return acc;
    };
    auto literal_geometric = [&](Complex z) {
        Complex logz = std::log(z);
        Complex acc(0.0, 0.0);
        for (int o = 0; o < n; ++o) {
            acc += std::exp(dim.label(o) * logz);
        }
        return acc;
    };

    std::vector<double> rs;
    for (int i = -4 * n; i <= 4 * n; ++i) {
        rs.push_back(i / 2.0);
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uni(-2.0 * n, 2.0 * n);
    for (int i = 0; i < 100; ++i) {
        rs.push_back(uni(rng));
    }

    auto pole_distance = [n](double r) { return std::abs(r - n * std::round(r / n)); };
    auto is_half_integer = [](double r) { return std::abs(r * 2.0 - std::round(r * 2.0)) <= 1e-9; };

    json rows = json::array();
    std::ostringstream csv;
    csv << "variant,r,closed_re,closed_im,reference_re,reference_im,residual,status\n";
    double worst_omega = 0.0;
    double worst_cases = 0.0;
    double worst_weighted = 0.0;

    auto emit = [&](const std::string &variant, double r, Complex closed, Complex ref,
                    const std::string &status, double residual) {
        rows.push_back({{"variant", variant},
                        {"r", r},
                        {"closed", to_json(closed)},
                        {"reference", to_json(ref)},
                        {"residual", residual},
                        {"status", status}});
        csv << variant << "," << fmt_double(r) << "," << fmt_double(closed.real()) << ","
            << fmt_double(closed.imag()) << "," << fmt_double(ref.real()) << ","
            << fmt_double(ref.imag()) << "," << fmt_double(residual) << "," << status << "\n";
    };

    for (double r : rs) {
        double dist = pole_distance(r);
        bool exact_pole = dist <= 1e-8;
        bool near_pole = !exact_pole && dist < 1e-4;

        if (near_pole) {
            emit("omega", r, Complex(0.0, 0.0), Complex(0.0, 0.0), "skipped: near-singular", 0.0);
        } else {
            Complex closed(omega_sum(dim, r), 0.0);
            Complex ref = literal_omega(r);
            double res = std::abs(closed - ref);
            worst_omega = std::max(worst_omega, res);
            emit("omega", r, closed, ref, "ok", res);
        }

        if (is_half_integer(r)) {
            Complex closed = omega_sum_cases(dim, r);
            Complex ref = literal_omega(r);
            double res = std::abs(closed - ref);
            worst_cases = std::max(worst_cases, res);
            emit("omega_cases", r, closed, ref, "ok", res);
        }

        if (near_pole) {
            emit("k_weighted", r, Complex(0.0, 0.0), Complex(0.0, 0.0),
                 "skipped: near-singular", 0.0);
        } else if (exact_pole && r != 0.0) {
            emit("k_weighted", r, Complex(0.0, 0.0), Complex(0.0, 0.0),
                 "skipped: exact-case route", 0.0);
        } else {
            Complex closed = k_weighted_sum(dim, r);
            Complex ref = literal_k_weighted(r);
            double res = std::abs(closed - ref);
            worst_weighted = std::max(worst_weighted, res);
            emit("k_weighted", r, closed, ref, "ok", res);
        }
    }

    std::uniform_real_distribution<double> mag(0.5, 1.5);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    double worst_geometric = 0.0;
    int emitted = 0;
    while (emitted < 20) {
        Complex z = std::polar(mag(rng), ang(rng));
        if (std::abs(z - Complex(1.0, 0.0)) < 0.1) {
            continue;
        }
        Complex closed = geometric_sum(z, dim);
        Complex ref = literal_geometric(z);
        double res = std::abs(closed - ref);
        worst_geometric = std::max(worst_geometric, res);
        emit("geometric", z.real(), closed, ref, "ok", res);
        ++emitted;
    }

    report.check_max("omega_max_residual", worst_omega, thr(opts, 1e-9));
    report.check_max("omega_cases_max_residual", worst_cases, thr(opts, 1e-9));
    report.check_max("k_weighted_max_residual", worst_weighted, thr(opts, 1e-9));
    report.check_max("geometric_max_residual", worst_geometric, thr(opts, 1e-9));
    report.payload()["rows"] = rows;

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finish(report, opts, wall, csv.str());
}

int run_pauli(const CommonOpts &opts, std::optional<double> rho_sq,
              std::optional<double> varpi_sq, int sweep) {
    auto t0 = std::chrono::steady_clock::now();
    Report report("pauli", {2}, opts.seed);

    if (sweep > 0) {
        std::ostringstream csv;
        csv << "rho_sq,varpi_sq,compatible\n";
        json rows = json::array();
        int inside = 0;
        for (int i = 0; i < sweep; ++i) {
            for (int k = 0; k < sweep; ++k) {
                double rs = static_cast<double>(i) / (sweep - 1);
                double vs = static_cast<double>(k) / (sweep - 1);
                bool ok = compatible({rs, vs});
                inside += ok ? 1 : 0;
                csv << fmt_double(rs) << "," << fmt_double(vs) << "," << (ok ? 1 : 0) << "\n";
                rows.push_back({{"rho_sq", rs}, {"varpi_sq", vs}, {"compatible", ok}});
            }
        }
        report.payload()["grid"] = rows;
        report.payload()["compatible_count"] = inside;
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return finish(report, opts, wall, csv.str());
    }

    if (!rho_sq || !varpi_sq) {
        throw UsageError("pauli needs --rho-sq and --varpi-sq (or --sweep K)");
    }

    PauliData data{*rho_sq, *varpi_sq};
    Reconstruction rec = reconstruct(data);

    double u = data.varpi_sq - 0.5;
    double v = data.rho_sq - 0.5;
    double excess = std::max(0.0, u * u + v * v - 0.25);
    report.check_max("disk_membership_excess", excess, thr(opts, 1e-12));
    if (rec.compatible && !rec.phase_unobservable) {
        report.check_max("reconstruction_residual", rec.residual, thr(opts, 1e-9));
    }

    report.payload()["data"] = json{{"rho_sq", data.rho_sq}, {"varpi_sq", data.varpi_sq}};
    report.payload()["reconstruction"] = to_json(rec);

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finish(report, opts, wall, "");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Numerical checks for quantum mechanics on a finite cyclic lattice"};
    app.require_subcommand(1);

    CommonOpts ops_opts;
    CLI::App *ops_cmd = app.add_subcommand("ops", "Canonical operator identities");
    add_common(ops_cmd, ops_opts);

    CommonOpts sweep_opts;
    std::vector<int> sweep_dims{2, 4, 8, 16, 32};
    CLI::App *sweep_cmd = app.add_subcommand(
        "commutator-sweep", "Commutator expectation against the ideal value across dimensions");
    add_common(sweep_cmd, sweep_opts, false);
    sweep_cmd->add_option("--dims", sweep_dims, "Dimensions to sweep")
        ->delimiter(',')
        ->check(CLI::Range(2, 4096))
        ->capture_default_str();

    CommonOpts mub_opts;
    CLI::App *mub_cmd = app.add_subcommand("mub", "Mutually unbiased bases and phase identities");
    add_common(mub_cmd, mub_opts);

    CommonOpts evolve_opts;
    std::string preset = "gaussian-probe";
    std::string state_path;
    std::string until = "revival";
    int steps = 24;
    double mass = 1.0;
    CLI::App *evolve_cmd = app.add_subcommand("evolve", "Free evolution and revivals");
    add_common(evolve_cmd, evolve_opts);
    CLI::Option *preset_opt =
        evolve_cmd->add_option("--preset", preset, "Initial state: delta, gaussian-probe, uniform")
            ->check(CLI::IsMember({"delta", "gaussian-probe", "uniform"}))
            ->capture_default_str();
    evolve_cmd->add_option("--state", state_path, "Initial state JSON file")
        ->excludes(preset_opt);
    evolve_cmd->add_option("--until", until, "End time: 'revival' or a number")
        ->capture_default_str();
    evolve_cmd->add_option("--steps", steps, "Time steps between 0 and the end time")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    evolve_cmd->add_option("--mass", mass, "Particle mass")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CommonOpts sums_opts;
    CLI::App *sums_cmd =
        app.add_subcommand("sums", "Closed forms of lattice exponential sums");
    add_common(sums_cmd, sums_opts);

    CommonOpts pauli_opts;
    std::optional<double> rho_sq;
    std::optional<double> varpi_sq;
    int pauli_sweep = 0;
    CLI::App *pauli_cmd =
        app.add_subcommand("pauli", "Two-site phase reconstruction from measured data");
    add_common(pauli_cmd, pauli_opts, false);
    pauli_cmd->add_option("--rho-sq", rho_sq, "Measured position probability at the lower site")
        ->check(CLI::Range(0.0, 1.0));
    pauli_cmd->add_option("--varpi-sq", varpi_sq,
                          "Measured momentum probability at the lower label")
        ->check(CLI::Range(0.0, 1.0));
    pauli_cmd->add_option("--sweep", pauli_sweep, "Classify a K x K grid of data pairs")
        ->check(CLI::Range(2, 4096));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (ops_cmd->parsed()) {
            return run_ops(ops_opts);
        }
        if (sweep_cmd->parsed()) {
            return run_commutator_sweep(sweep_opts, sweep_dims);
        }
        if (mub_cmd->parsed()) {
            return run_mub(mub_opts);
        }
        if (evolve_cmd->parsed()) {
            return run_evolve(evolve_opts, preset, state_path, until, steps, mass);
        }
        if (sums_cmd->parsed()) {
            return run_sums(sums_opts);
        }
        if (pauli_cmd->parsed()) {
            return run_pauli(pauli_opts, rho_sq, varpi_sq, pauli_sweep);
        }
    } catch (const UsageError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const contract_error &e) {
        std::fprintf(stderr, "numerical contract violated: %s\n", e.what());
        return 1;
    }
    return 2;
}
