/**
 * Copyright 2026 The fanolattice Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "fano/bound_states.hpp"
#include "fano/experiments.hpp"
#include "test_support.hpp"

using namespace fano;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() : path(std::filesystem::temp_directory_path() / "fano_cli_test") {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

// CSV rows after the '#' preamble and header.
std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> lines;
    std::istringstream in(csv);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        lines.push_back(line);
    }
    return lines;
}

const std::vector<std::string> kReference = {"--eps1", "0.5", "--eps2", "0.5", "--kappa1", "0.2",
                                         "--kappa2", "0.2", "--kappa", "0.5"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

}  // namespace

TEST_CASE("simulate at z = 0 prints unit probabilities") {
    const Result r = run(with({"simulate", "--z", "0"}, kReference));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["p_boson"].get<double>() == 1.0);
    CHECK(j["p_fermion"].get<double>() == 1.0);
    CHECK(j["p_classical"].get<double>() == 1.0);
    CHECK(j["p_entangled"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("simulate --faithful is bit-identical to the library") {
    const Result r = run(with({"simulate", "--z", "20", "--faithful"}, kReference));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    const SweepPoint p = evaluate_point(fano::testing::reference_spec(25), 20.0);
    CHECK(j["n_chain"].get<int>() == 25);
    CHECK(j["p_boson"].get<double>() == p.survival.p_boson);
    CHECK(j["p_fermion"].get<double>() == p.survival.p_fermion);
    CHECK(j["p_classical"].get<double>() == p.survival.p_classical);
    CHECK(j["p_entangled"].get<double>() == p.survival.p_entangled);
}

TEST_CASE("validation errors exit 2 and name the flag") {
    const Result r = run({"simulate", "--kappa", "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--kappa") != std::string::npos);

    CHECK(run({"simulate", "--kappa1", "-1"}).err.find("--kappa1") != std::string::npos);
    CHECK(run({"simulate", "--n-chain", "0"}).code == 2);
    CHECK(run({"simulate", "--bogus", "1"}).code == 2);
    CHECK(run({"simulate", "--faithful", "--n-chain", "30"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"sweep", "--mode", "sideways"}).code == 2);
}

TEST_CASE("help exits cleanly and documents defaults") {
    const Result r = run({"sweep", "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--z-max") != std::string::npos);
    CHECK(r.out.find("30") != std::string::npos);
}

TEST_CASE("sweep --mode z writes a monotone z column") {
    TempDir dir;
    const Result r = run(with({"sweep", "--mode", "z", "--out", dir / "z.csv"}, kReference));
    REQUIRE(r.code == 0);
    const auto lines = data_lines(slurp(dir / "z.csv"));
    CHECK(lines.size() == 301);
    double last = -1.0;
    for (const std::string& l : lines) {
        const double z = std::stod(l.substr(0, l.find(',')));
        CHECK(z > last);
        last = z;
    }
}

TEST_CASE("sweep --points 1 gives a single row") {
    TempDir dir;
    REQUIRE(run({"sweep", "--mode", "z", "--points", "1", "--out", dir / "one.csv"}).code == 0);
    CHECK(data_lines(slurp(dir / "one.csv")).size() == 1);
}

TEST_CASE("sweep --mode detuning peaks at the resonance") {
    TempDir dir;
    const Result r = run(with({"sweep", "--mode", "detuning", "--z", "20", "--out", dir / "d.csv",
                               "--svg", dir / "d.svg"},
                              kReference));
    REQUIRE(r.code == 0);
    double best = -1.0, best_eps2 = 0.0;
    for (const std::string& l : data_lines(slurp(dir / "d.csv"))) {
        std::vector<double> f;
        std::stringstream ss(l);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(std::stod(cell));
        if (f[5] > best) {
            best = f[5];
            best_eps2 = f[2];
        }
    }
    CHECK(std::abs(best_eps2 - 0.5) < 1e-9);
    const std::string svg = slurp(dir / "d.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("eps2 (1/mm)") != std::string::npos);
}

TEST_CASE("output file carries the effective config") {
    TempDir dir;
    REQUIRE(run({"sweep", "--points", "3", "--kappa", "0.6", "--out", dir / "c.csv"}).code == 0);
    const std::string csv = slurp(dir / "c.csv");
    CHECK(csv.rfind("# command=sweep\n", 0) == 0);
    CHECK(csv.find("# kappa=0.6\n") != std::string::npos);
    CHECK(csv.find("# kappa1=0.2\n") != std::string::npos);
    CHECK(csv.find("# n_chain_resolved=") != std::string::npos);
}

TEST_CASE("config file values apply and flags override them") {
    TempDir dir;
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "# reference device\nkappa = 0.5\neps2=0.7\nz=12\nfaithful=true\n";
    }
    const Result from_file = run({"simulate", "--config", dir / "run.cfg"});
    REQUIRE(from_file.code == 0);
    const json a = json::parse(from_file.out);
    CHECK(a["eps2_inv_mm"].get<double>() == 0.7);
    CHECK(a["z_mm"].get<double>() == 12.0);
    CHECK(a["n_chain"].get<int>() == 25);

    const Result overridden = run({"simulate", "--config", dir / "run.cfg", "--eps2", "0.4"});
    REQUIRE(overridden.code == 0);
    CHECK(json::parse(overridden.out)["eps2_inv_mm"].get<double>() == 0.4);

    CHECK(run({"simulate", "--config", dir / "absent.cfg"}).code == 1);
}

TEST_CASE("unwritable output path exits 1") {
    const Result r = run({"sweep", "--points", "2", "--out", "/nonexistent-dir/x.csv"});
    CHECK(r.code == 1);
    CHECK(r.err.find("/nonexistent-dir/x.csv") != std::string::npos);
}

TEST_CASE("map: fermion statistics decay at every detuning") {
    TempDir dir;
    const Result r = run({"map", "--stat", "fermion", "--kz-points", "16", "--detuning-points", "9",
                          "--out", dir / "m.csv", "--svg", dir / "m.svg"});
    REQUIRE(r.code == 0);
    const auto lines = data_lines(slurp(dir / "m.csv"));
    REQUIRE(lines.size() == 16 * 9);
    // Last kz row (kz = 15): every fermion value is far below one.
    for (std::size_t i = 15 * 9; i < lines.size(); ++i) {
        std::vector<double> f;
        std::stringstream ss(lines[i]);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(std::stod(cell));
        CHECK(f[3] == doctest::Approx(15.0));
        CHECK(f[6] < 0.5);
    }
    CHECK(slurp(dir / "m.svg").find("kappa z") != std::string::npos);
}

TEST_CASE("1x1 map equals simulate") {
    TempDir dir;
    const std::vector<std::string> lattice = {"--eps1", "1", "--eps2", "1", "--kappa1", "0.4",
                                              "--kappa2", "0.4", "--kappa", "1"};
    REQUIRE(run(with({"map", "--kz-min", "7", "--kz-points", "1", "--detuning-min", "0",
                      "--detuning-points", "1", "--format", "json", "--out", dir / "m.json"},
                     lattice))
                .code == 0);
    const Result sim = run(with({"simulate", "--z", "7"}, lattice));
    REQUIRE(sim.code == 0);
    const auto rows = parse_json(slurp(dir / "m.json"));
    REQUIRE(rows.size() == 1);
    const json s = json::parse(sim.out);
    CHECK(rows[0].p_boson == s["p_boson"].get<double>());
    CHECK(rows[0].p_fermion == s["p_fermion"].get<double>());
    CHECK(rows[0].p_classical == s["p_classical"].get<double>());
}

TEST_CASE("bic reports the dressed state and asymptotics") {
    const Result r = run(with({"bic"}, kReference));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["bics"].size() == 1);
    CHECK(j["bics"][0]["energy"].get<double>() == doctest::Approx(0.5));
    CHECK(j["asymptotic"]["p_boson"].get<double>() == doctest::Approx(0.25));
    CHECK(j["asymptotic"]["z_mm"] == "inf");

    const Result detuned = run({"bic", "--eps2", "0.9"});
    REQUIRE(detuned.code == 0);
    const json d = json::parse(detuned.out);
    CHECK(d["bics"].empty());
    CHECK(d["asymptotic"]["p_boson"].get<double>() == 0.0);

    const Result decoupled = run({"bic", "--kappa1", "0"});
    REQUIRE(decoupled.code == 0);
    const json k = json::parse(decoupled.out);
    REQUIRE(k["bics"].size() == 1);
    CHECK(k["bics"][0]["decoupled_site"].get<bool>());
    CHECK(k["notes"].size() == 1);
}

TEST_CASE("normalize delegates to the count arithmetic") {
    const Result r = run({"normalize", "--c-vv", "200", "--c-vv-dist", "100", "--c-ent", "0",
                          "--c-vh-dist", "100", "--p-clas", "0.125"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["p_boson_est"].get<double>() == 0.25);
    CHECK(j["p_fermion_est"].get<double>() == 0.0);

    const Result unit = run({"normalize", "--c-vv", "7", "--c-vv-dist", "7", "--c-ent", "3",
                             "--c-vh-dist", "3", "--p-clas", "0.3"});
    CHECK(json::parse(unit.out)["p_fermion_est"].get<double>() == 0.3);

    const Result zero = run({"normalize", "--c-vv", "1", "--c-vv-dist", "0", "--c-ent", "1",
                             "--c-vh-dist", "1", "--p-clas", "0.3"});
    CHECK(zero.code == 2);
    CHECK(zero.err.find("--c-vv-dist") != std::string::npos);
}

TEST_CASE("linspace endpoints") {
    CHECK(cli::linspace(0.0, 30.0, 1) == std::vector<double>{0.0});
    const auto v = cli::linspace(-2.0, 2.0, 161);
    CHECK(v.front() == -2.0);
    CHECK(v[80] == 0.0);
    CHECK(v.back() == 2.0);
    CHECK_THROWS_AS(cli::linspace(0.0, 1.0, 0), InvalidParameter);
}
