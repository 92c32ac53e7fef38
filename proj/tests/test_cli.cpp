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

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ringqm/serialize.hpp"

using ringqm::json;
using ringqm::kPi;

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("ringqm_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path scratch(const std::string &name) {
    static int counter = 0;
    return work_dir() / (std::to_string(counter++) + "_" + name);
}

int run_cli(const std::string &args) {
    std::string cmd = std::string(RINGQM_CLI_PATH) + " " + args + " > " +
                      (work_dir() / "stdout.txt").string() + " 2> " +
                      (work_dir() / "stderr.txt").string();
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

json read_json(const fs::path &path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return json::parse(in);
}

std::vector<std::vector<std::string>> read_csv(const fs::path &path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

const json *find_check(const json &report, const std::string &name) {
    for (const auto &row : report["checks"]) {
        if (row["name"].get<std::string>() == name) {
            return &row;
        }
    }
    return nullptr;
}

} // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("") == 2);
    CHECK(run_cli("ops --dim 1") == 2);
    CHECK(run_cli("ops --bogus") == 2);
    CHECK(run_cli("no-such-command") == 2);
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("ops --help") == 0);
}

TEST_CASE("ops verifies the canonical operators and dumps them") {
    fs::path jpath = scratch("ops.json");
    REQUIRE(run_cli("ops --dim 4 --json " + jpath.string()) == 0);
    json rep = read_json(jpath);

    CHECK(rep["command"] == "ops");
    CHECK(rep["pass"].get<bool>());
    CHECK(rep["dims"][0].get<int>() == 4);
    CHECK(std::abs(rep["scales"]["a"].get<double>() - std::sqrt(2.0 * kPi / 4.0)) <= 1e-14);
    REQUIRE(rep["checks"].size() >= 8);
    for (const auto &row : rep["checks"]) {
        INFO(row.dump());
        CHECK(row["pass"].get<bool>());
    }

    const json &t = rep["operators"]["t"];
    CHECK(t[0][3][0].get<double>() == -1.0);
    CHECK(t[0][3][1].get<double>() == 0.0);
    CHECK(t[1][0][0].get<double>() == 1.0);
    CHECK(t[0][0][0].get<double>() == 0.0);

    SECTION("deviation values survive a dump and re-parse bit-exactly") {
        json reparsed = json::parse(rep.dump());
        for (std::size_t i = 0; i < rep["checks"].size(); ++i) {
            CHECK(reparsed["checks"][i]["deviation"].get<double>() ==
                  rep["checks"][i]["deviation"].get<double>());
        }
    }
}

TEST_CASE("ops respects the tolerance override") {
    CHECK(run_cli("ops --dim 3 --tol 1e-1") == 0);
    CHECK(run_cli("ops --dim 3 --tol 1e-30") == 1);
}

TEST_CASE("commutator-sweep reports a strictly decreasing deviation") {
    fs::path jpath = scratch("sweep.json");
    fs::path cpath = scratch("sweep.csv");
    REQUIRE(run_cli("commutator-sweep --dims 8,16,32 --json " + jpath.string() + " --csv " +
                    cpath.string()) == 0);

    json rep = read_json(jpath);
    CHECK(rep["pass"].get<bool>());
    const json *margin = find_check(rep, "strict_decrease_margin");
    REQUIRE(margin != nullptr);
    CHECK((*margin)["pass"].get<bool>());

    auto rows = read_csv(cpath);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"dim", "deviation"});
    double prev = std::stod(rows[1][1]);
    for (std::size_t i = 2; i < rows.size(); ++i) {
        double cur = std::stod(rows[i][1]);
        CHECK(cur < prev);
        prev = cur;
    }

    SECTION("default dimension list also passes") {
        CHECK(run_cli("commutator-sweep") == 0);
    }

    SECTION("a single dimension skips the monotonicity check") {
        fs::path single = scratch("single.json");
        REQUIRE(run_cli("commutator-sweep --dims 8 --json " + single.string()) == 0);
        json srep = read_json(single);
        CHECK(find_check(srep, "strict_decrease_margin") == nullptr);
        CHECK(find_check(srep, "final_deviation") != nullptr);
    }
}

TEST_CASE("mub verifies unbiasedness and the fitted phases") {
    fs::path jpath = scratch("mub2.json");
    REQUIRE(run_cli("mub --dim 2 --json " + jpath.string()) == 0);
    json rep = read_json(jpath);
    CHECK(rep["pass"].get<bool>());

    bool found_zero = false;
    for (const auto &row : rep["gauss"]) {
        if (row["b"].get<double>() == 0.0) {
            found_zero = true;
            double re = row["phase"][0].get<double>();
            double im = row["phase"][1].get<double>();
            CHECK(std::abs(re - std::cos(kPi / 4.0)) <= 1e-12);
            CHECK(std::abs(im - std::sin(kPi / 4.0)) <= 1e-12);
        }
        CHECK(row["residual"].get<double>() <= 1e-10);
    }
    CHECK(found_zero);

    SECTION("overlap grid rows are probability distributions") {
        fs::path cpath = scratch("mub5.csv");
        REQUIRE(run_cli("mub --dim 5 --csv " + cpath.string()) == 0);
        auto rows = read_csv(cpath);
        REQUIRE(rows.size() == 1 + 3 * 25);
        CHECK(rows[0] == std::vector<std::string>{"pair", "row_label", "col_label", "magnitude",
                                                  "probability"});
        std::map<std::string, double> totals;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            totals[rows[i][0] + "|" + rows[i][1]] += std::stod(rows[i][4]);
        }
        REQUIRE(totals.size() == 15);
        for (const auto &entry : totals) {
            CHECK(std::abs(entry.second - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("evolve certifies revivals and the dual evolution routes") {
    fs::path jpath = scratch("evolve3.json");
    REQUIRE(run_cli("evolve --dim 3 --preset delta --until revival --steps 6 --json " +
                    jpath.string()) == 0);
    json rep = read_json(jpath);
    CHECK(rep["pass"].get<bool>());
    const json *revival = find_check(rep, "revival_distribution");
    REQUIRE(revival != nullptr);
    CHECK((*revival)["deviation"].get<double>() <= 1e-9);
    double tau = rep["tau"].get<double>();
    CHECK(std::abs(rep["t_final"].get<double>() - 3.0 * tau) <= 1e-12);

    SECTION("even dimension revives at four times the dimension") {
        fs::path jp2 = scratch("evolve2.json");
        REQUIRE(run_cli("evolve --dim 2 --preset uniform --until revival --json " +
                        jp2.string()) == 0);
        json rep2 = read_json(jp2);
        CHECK(rep2["pass"].get<bool>());
        double tau2 = rep2["tau"].get<double>();
        CHECK(std::abs(rep2["t_final"].get<double>() - 8.0 * tau2) <= 1e-12);
    }

    SECTION("a zero end time echoes the initial distribution") {
        fs::path jp0 = scratch("evolve0.json");
        fs::path cp0 = scratch("evolve0.csv");
        REQUIRE(run_cli("evolve --dim 4 --until 0 --json " + jp0.string() + " --csv " +
                        cp0.string()) == 0);
        json rep0 = read_json(jp0);
        CHECK(rep0["times"].size() == 1);
        CHECK(find_check(rep0, "revival_distribution") == nullptr);
        auto rows = read_csv(cp0);
        CHECK(rows.size() == 1 + 4);
    }
}

TEST_CASE("evolve reads and validates state files") {
    fs::path good = scratch("state_good.json");
    {
        std::ofstream out(good);
        out << "[[0.6, 0.0], [0.0, 0.8]]";
    }
    CHECK(run_cli("evolve --dim 2 --state " + good.string() + " --until 1.0") == 0);

    fs::path garbage = scratch("state_bad.json");
    {
        std::ofstream out(garbage);
        out << "this is not json";
    }
    CHECK(run_cli("evolve --dim 2 --state " + garbage.string()) == 2);

    fs::path short_file = scratch("state_short.json");
    {
        std::ofstream out(short_file);
        out << "[[1.0, 0.0]]";
    }
    CHECK(run_cli("evolve --dim 2 --state " + short_file.string()) == 2);

    CHECK(run_cli("evolve --dim 2 --state /nonexistent/state.json") == 2);
    CHECK(run_cli("evolve --dim 2 --preset delta --state " + good.string()) == 2);
    CHECK(run_cli("evolve --dim 2 --until never") == 2);
    CHECK(run_cli("evolve --dim 2 --preset nonsense") == 2);
}

TEST_CASE("sums compares closed forms with direct summation") {
    fs::path jpath = scratch("sums3.json");
    REQUIRE(run_cli("sums --dim 3 --json " + jpath.string()) == 0);
    json rep = read_json(jpath);
    CHECK(rep["pass"].get<bool>());
    for (const auto &row : rep["checks"]) {
        INFO(row.dump());
        CHECK(row["pass"].get<bool>());
        CHECK(row["deviation"].get<double>() <= 1e-9);
    }

    bool saw_exact_case_skip = false;
    for (const auto &row : rep["rows"]) {
        if (row["status"].get<std::string>() == "skipped: exact-case route") {
            saw_exact_case_skip = true;
            CHECK(row["variant"].get<std::string>() == "k_weighted");
        }
    }
    CHECK(saw_exact_case_skip);

    SECTION("half-odd arguments at two sites") {
        fs::path jp2 = scratch("sums2.json");
        REQUIRE(run_cli("sums --dim 2 --json " + jp2.string()) == 0);
        json rep2 = read_json(jp2);
        bool found_half = false;
        for (const auto &row : rep2["rows"]) {
            if (row["variant"] == "omega_cases" && row["r"].get<double>() == 0.5) {
                found_half = true;
                CHECK(row["residual"].get<double>() <= 1e-10);
            }
        }
        CHECK(found_half);
    }

    SECTION("identical flags produce identical reports") {
        fs::path a = scratch("sums_a.json");
        fs::path b = scratch("sums_b.json");
        REQUIRE(run_cli("sums --dim 5 --seed 7 --json " + a.string()) == 0);
        REQUIRE(run_cli("sums --dim 5 --seed 7 --json " + b.string()) == 0);
        json ja = read_json(a);
        json jb = read_json(b);
        CHECK(ja["rows"] == jb["rows"]);
        CHECK(ja["checks"] == jb["checks"]);
    }
}

TEST_CASE("pauli distinguishes compatible, incompatible, and invalid input") {
    fs::path jpath = scratch("pauli.json");
    REQUIRE(run_cli("pauli --rho-sq 0.5 --varpi-sq 1.0 --json " + jpath.string()) == 0);
    json rep = read_json(jpath);
    CHECK(rep["pass"].get<bool>());
    const json &rec = rep["reconstruction"];
    CHECK(rec["compatible"].get<bool>());
    REQUIRE(rec["alpha_solutions"].size() == 1);
    CHECK(std::abs(rec["alpha_solutions"][0].get<double>() - kPi / 2.0) <= 1e-7);

    CHECK(run_cli("pauli --rho-sq 0.5 --varpi-sq 0.5") == 0);
    CHECK(run_cli("pauli --rho-sq 1.0 --varpi-sq 1.0") == 1);
    CHECK(run_cli("pauli --rho-sq 1.5 --varpi-sq 0.5") == 2);
    CHECK(run_cli("pauli --rho-sq 0.5") == 2);
    CHECK(run_cli("pauli") == 2);

    SECTION("sweep classifies the data square") {
        fs::path cpath = scratch("pauli_sweep.csv");
        REQUIRE(run_cli("pauli --sweep 5 --csv " + cpath.string()) == 0);
        auto rows = read_csv(cpath);
        REQUIRE(rows.size() == 1 + 25);
        int compatible_rows = 0;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            compatible_rows += rows[i][2] == "1" ? 1 : 0;
        }
        CHECK(compatible_rows > 0);
        CHECK(compatible_rows < 25);
        CHECK(rows[1][2] == "0");
    }
}
