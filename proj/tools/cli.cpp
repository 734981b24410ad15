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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "fano/bound_states.hpp"
#include "fano/experiments.hpp"
#include "svg.hpp"

namespace fano::cli {

namespace {

using json = nlohmann::ordered_json;

// Front-end flag for a library parameter name, used in diagnostics.
std::string flag_for(const std::string& field) {
    static const std::map<std::string, std::string> special = {
        {"z_values", "--z-min/--z-max/--points"},
        {"eps2_values", "--eps2-min/--eps2-max/--points"},
        {"z_max", "--z-max"},
    };
    if (auto it = special.find(field); it != special.end()) return it->second;
    std::string flag = "--" + field;
    for (char& c : flag) {
        if (c == '_') c = '-';
    }
    return flag;
}

json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json row_json(const ResultRow& row) {
    json obj = json::object();
    for (const auto& [name, value] : row_fields(row)) obj[name] = number(value);
    return obj;
}

struct LatticeArgs {
    LatticeSpec spec;
    std::optional<int> n_chain;
    bool faithful = false;
    double safety = 1.5;

    void add_to(CLI::App& app) {
        app.add_option("--eps1", spec.eps1, "Detuning of site |1> (1/mm)");
        app.add_option("--eps2", spec.eps2, "Detuning of site |2> (1/mm)");
        app.add_option("--kappa1", spec.kappa1, "Coupling site |1> to chain head (1/mm)");
        app.add_option("--kappa2", spec.kappa2, "Coupling site |2> to chain head (1/mm)");
        app.add_option("--kappa", spec.kappa, "Hopping along the chain (1/mm)");
        app.add_option("--chain-energy", spec.chain_energy, "On-site energy of chain sites (1/mm)");
        auto* n = app.add_option("--n-chain", n_chain, "Explicit number of chain sites");
        auto* f = app.add_flag("--faithful", faithful, "Use the fabricated 25-site chain");
        n->excludes(f);
        app.add_option("--safety", safety, "Safety factor of the reflection-free chain length");
    }

    SweepConfig sweep_config() const {
        SweepConfig cfg;
        cfg.base = spec;
        cfg.safety = safety;
        if (faithful) {
            cfg.chain = ChainMode::Faithful;
        } else if (n_chain) {
            cfg.chain = ChainMode::Explicit;
            cfg.base.n_chain = *n_chain;
        }
        return cfg;
    }
};

std::vector<std::string> effective_config(const CLI::App& app, const LatticeSpec& resolved) {
    std::vector<std::string> lines;
    lines.push_back("command=" + app.get_name());
    for (const CLI::Option* opt : app.get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name == "h" || name.empty()) continue;
        std::string value;
        if (opt->get_type_size() == 0) {
            value = opt->count() > 0 ? "true" : "false";
        } else if (opt->count() > 0) {
            for (const std::string& r : opt->results()) value += (value.empty() ? "" : " ") + r;
        } else {
            value = opt->get_default_str();
        }
        if (value.empty()) continue;
        lines.push_back(name + "=" + value);
    }
    lines.push_back("n_chain_resolved=" + std::to_string(resolved.n_chain));
    return lines;
}

void print_warnings(const LatticeSpec& spec, std::ostream& err) {
    for (const std::string& w : spec.validate()) err << "warning: " << w << '\n';
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw InvalidParameter("format", "must be csv or json");
}

double prob(const SurvivalRecord& r, const std::string& stat) {
    if (stat == "boson") return r.p_boson;
    if (stat == "fermion") return r.p_fermion;
    if (stat == "classical") return r.p_classical;
    return r.p_entangled;
}

// ---------------------------------------------------------------------------

struct SimulateCmd {
    LatticeArgs lattice;
    double z = 20.0;

    void add_to(CLI::App& app) {
        lattice.add_to(app);
        app.add_option("--z", z, "Propagation distance (mm)");
    }

    int run(std::ostream& out, std::ostream& err) {
        SweepConfig cfg = lattice.sweep_config();
        cfg.z_values = {z};
        cfg.validate();
        const LatticeSpec spec = resolve_lattice(cfg, z);
        print_warnings(spec, err);
        json report = row_json(to_row(evaluate_point(spec, z)));
        report["n_chain"] = spec.n_chain;
        out << report.dump(2) << '\n';
        return kExitOk;
    }
};

struct SweepCmd {
    LatticeArgs lattice;
    std::string mode = "z";
    double z_min = 0.0;
    double z_max = 30.0;
    double z = 20.0;
    double eps2_min = 0.1;
    double eps2_max = 0.9;
    std::optional<int> points;
    std::string out_path = "sweep.csv";
    std::string format = "csv";
    std::string svg_path;

    void add_to(CLI::App& app) {
        lattice.add_to(app);
        app.add_option("--mode", mode, "Sweep variable")->check(CLI::IsMember({"z", "detuning"}));
        app.add_option("--z-min", z_min, "First z of the z sweep (mm)");
        app.add_option("--z-max", z_max, "Last z of the z sweep (mm)");
        app.add_option("--z", z, "Fixed z of the detuning sweep (mm)");
        app.add_option("--eps2-min", eps2_min, "First eps2 of the detuning sweep (1/mm)");
        app.add_option("--eps2-max", eps2_max, "Last eps2 of the detuning sweep (1/mm)");
        app.add_option("--points", points, "Grid points (default 301 for z, 41 for detuning)");
        app.add_option("--out", out_path, "Output file");
        app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        app.add_option("--svg", svg_path, "Also write an SVG line plot here");
    }

    int run(const CLI::App& app, std::ostream&, std::ostream& err) {
        SweepConfig cfg = lattice.sweep_config();
        const OutputFormat fmt = parse_format(format);
        std::vector<SweepPoint> points_out;
        LatticeSpec resolved;
        svg::LinePlot plot;
        if (mode == "z") {
            cfg.z_values = linspace(z_min, z_max, points.value_or(301));
            cfg.validate();
            resolved = resolve_lattice(cfg, cfg.z_values.back());
            print_warnings(resolved, err);
            points_out = sweep_z(cfg);
            plot.title = "Survival probability vs propagation distance";
            plot.x_label = "z (mm)";
            plot.x = cfg.z_values;
        } else {
            cfg.z_values = {z};
            cfg.eps2_values = linspace(eps2_min, eps2_max, points.value_or(41));
            cfg.validate();
            resolved = resolve_lattice(cfg, z);
            print_warnings(resolved, err);
            points_out = sweep_detuning(cfg, z);
            plot.title = "Survival probability vs eps2 at z = " + std::to_string(z) + " mm";
            plot.x_label = "eps2 (1/mm)";
            plot.x = *cfg.eps2_values;
        }

        const std::vector<std::string> config = effective_config(app, resolved);
        const std::vector<ResultRow> rows = to_rows(points_out);
        emit_results(rows, fmt, out_path, config);

        if (!svg_path.empty()) {
            plot.y_label = "survival probability";
            plot.comments = config;
            const std::vector<std::pair<std::string, std::string>> stats = {
                {"boson", "#d62728"}, {"fermion", "#1f77b4"}, {"classical", "#000000"},
                {"entangled", "#9467bd"}};
            for (const auto& [stat, colour] : stats) {
                svg::Series s{stat, colour, {}};
                for (const SweepPoint& p : points_out) s.y.push_back(prob(p.survival, stat));
                plot.series.push_back(std::move(s));
            }
            write_text_file(svg_path, svg::render(plot));
        }
        return kExitOk;
    }
};

struct MapCmd {
    LatticeArgs lattice;
    std::string stat = "boson";
    double kz_min = 0.0;
    double kz_max = 15.0;
    int kz_points = 151;
    double det_min = -2.0;
    double det_max = 2.0;
    int det_points = 161;
    std::string out_path = "map.csv";
    std::string format = "csv";
    std::string svg_path;

    MapCmd() {
        lattice.spec.kappa = 1.0;
        lattice.spec.kappa1 = 0.4;
        lattice.spec.kappa2 = 0.4;
        lattice.spec.eps1 = 1.0;
        lattice.spec.eps2 = 1.0;
    }

    void add_to(CLI::App& app) {
        lattice.add_to(app);
        app.add_option("--stat", stat, "Statistics shown in the heatmap")
            ->check(CLI::IsMember({"boson", "fermion", "classical", "entangled"}));
        app.add_option("--kz-min", kz_min, "First normalised distance kappa*z");
        app.add_option("--kz-max", kz_max, "Last normalised distance kappa*z");
        app.add_option("--kz-points", kz_points, "Number of kappa*z samples");
        app.add_option("--detuning-min", det_min, "First normalised detuning (eps2-eps1)/kappa");
        app.add_option("--detuning-max", det_max, "Last normalised detuning (eps2-eps1)/kappa");
        app.add_option("--detuning-points", det_points, "Number of detuning samples");
        app.add_option("--out", out_path, "Output file (long format, one row per cell)");
        app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        app.add_option("--svg", svg_path, "Also write an SVG heatmap here");
    }

    int run(const CLI::App& app, std::ostream&, std::ostream& err) {
        SweepConfig cfg = lattice.sweep_config();
        const OutputFormat fmt = parse_format(format);
        if (!(cfg.base.kappa > 0.0)) cfg.base.validate();
        const double kappa = cfg.base.kappa;
        for (double kz : linspace(kz_min, kz_max, kz_points)) cfg.z_values.push_back(kz / kappa);
        std::vector<double> eps2;
        for (double d : linspace(det_min, det_max, det_points)) eps2.push_back(cfg.base.eps1 + d * kappa);
        cfg.eps2_values = std::move(eps2);
        cfg.validate();
        const LatticeSpec resolved = resolve_lattice(cfg, cfg.z_values.back());
        print_warnings(resolved, err);

        const SurvivalMap map = survival_map(cfg);
        const std::vector<std::string> config = effective_config(app, resolved);
        emit_results(to_rows(map.cells), fmt, out_path, config);

        if (!svg_path.empty()) {
            svg::Heatmap heat;
            heat.title = "Survival probability (" + stat + ")";
            heat.x_label = "kappa z";
            heat.y_label = "(eps2 - eps1) / kappa";
            heat.comments = config;
            for (double z : map.z_values) heat.x.push_back(kappa * z);
            for (double e : map.eps2_values) heat.y.push_back((e - cfg.base.eps1) / kappa);
            for (std::size_t ie = 0; ie < map.eps2_values.size(); ++ie) {
                for (std::size_t iz = 0; iz < map.z_values.size(); ++iz) {
                    heat.values.push_back(prob(map.cell(iz, ie).survival, stat));
                }
            }
            write_text_file(svg_path, svg::render(heat));
        }
        return kExitOk;
    }
};

struct BicCmd {
    LatticeArgs lattice;
    double z_max = 30.0;
    double threshold = kDefaultBicThreshold;

    void add_to(CLI::App& app) {
        lattice.add_to(app);
        app.add_option("--z-max", z_max, "Distance the converged chain length is sized for (mm)");
        app.add_option("--threshold", threshold, "Maximum chain weight of a bound state");
    }

    int run(std::ostream& out, std::ostream& err) {
        SweepConfig cfg = lattice.sweep_config();
        cfg.z_values = {z_max};
        cfg.validate();
        if (!(z_max > 0.0)) throw InvalidParameter("z_max", "must be > 0");
        const LatticeSpec spec = resolve_lattice(cfg, z_max);
        print_warnings(spec, err);

        const Hamiltonian h = build_hamiltonian(spec);
        const std::vector<BoundState> bics = detect_bics(h, threshold);

        json report = json::object();
        report["n_chain"] = spec.n_chain;
        report["band"] = {h.band_center() - h.band_half_width(), h.band_center() + h.band_half_width()};
        json list = json::array();
        for (const BoundState& b : bics) {
            json entry = json::object();
            entry["energy"] = b.energy;
            entry["chain_weight"] = b.chain_weight;
            entry["site1"] = {b.vector(kSite1).real(), b.vector(kSite1).imag()};
            entry["site2"] = {b.vector(kSite2).real(), b.vector(kSite2).imag()};
            entry["decoupled_site"] = b.decoupled_site;
            list.push_back(std::move(entry));
        }
        report["bics"] = std::move(list);

        const SurvivalRecord asym = asymptotic_survival(bics);
        json a = json::object();
        a["z_mm"] = number(asym.z);
        a["p_boson"] = asym.p_boson;
        a["p_fermion"] = asym.p_fermion;
        a["p_classical"] = asym.p_classical;
        a["p_entangled"] = asym.p_entangled;
        report["asymptotic"] = std::move(a);

        json notes = json::array();
        if (spec.kappa1 == 0.0) {
            notes.push_back("kappa1 = 0: site |1> is decoupled from the chain and trivially bound; "
                            "this is not a Fano-interference bound state");
        }
        if (spec.kappa2 == 0.0) {
            notes.push_back("kappa2 = 0: site |2> is decoupled from the chain and trivially bound; "
                            "this is not a Fano-interference bound state");
        }
        report["notes"] = std::move(notes);
        out << report.dump(2) << '\n';
        return kExitOk;
    }
};

struct NormalizeCmd {
    std::uint64_t c_vv = 0;
    std::uint64_t c_vv_dist = 0;
    std::uint64_t c_ent = 0;
    std::uint64_t c_vh_dist = 0;
    double p_clas = 0.0;

    void add_to(CLI::App& app) {
        app.add_option("--c-vv", c_vv, "Coincidences, |VV> input")->required();
        app.add_option("--c-vv-dist", c_vv_dist, "Coincidences, |VV> input, one photon delayed")
            ->required();
        app.add_option("--c-ent", c_ent, "Coincidences, antisymmetric entangled input")->required();
        app.add_option("--c-vh-dist", c_vh_dist, "Coincidences, |VH> input, one photon delayed")
            ->required();
        app.add_option("--p-clas", p_clas, "Survival of distinguishable particles")->required();
    }

    int run(std::ostream& out, std::ostream& err) {
        const CountsRecord counts(c_vv, c_vv_dist, c_ent, c_vh_dist, p_clas);
        const CountEstimate est = normalize_counts(counts);
        if (est.p_boson > 1.0 || est.p_fermion > 1.0) {
            err << "warning: estimate exceeds 1, counts look miscalibrated\n";
        }
        json report = json::object();
        report["p_boson_est"] = est.p_boson;
        report["p_fermion_est"] = est.p_fermion;
        out << report.dump(2) << '\n';
        return kExitOk;
    }
};

// Splices `--config FILE` / `--config=FILE` into "--key=value" arguments placed
// right after the subcommand, so explicit flags given later take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    std::vector<std::string> from_file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config requires a file path");
            from_file = read_config_file(args[++i]);
        } else if (a.rfind("--config=", 0) == 0) {
            from_file = read_config_file(a.substr(9));
        } else {
            out.push_back(a);
        }
    }
    if (!from_file.empty() && !out.empty()) {
        out.insert(out.begin() + 1, from_file.begin(), from_file.end());
    }
    return out;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw InvalidParameter("points", "must be >= 1");
    if (n == 1) return {lo};
    std::vector<double> v(static_cast<std::size_t>(n));
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + step * i;
    v.back() = hi;
    return v;
}

std::vector<std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw OutputError("cannot read config file '" + path + "'");
    const auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidParameter("config", path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        for (char& c : key) {
            if (c == '_') c = '-';
        }
        if (value == "true") {
            args.push_back("--" + key);
        } else if (value != "false") {
            args.push_back("--" + key + "=" + value);
        }
    }
    return args;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-particle decay in a Fano-Anderson lattice"};
    app.name("fanolattice");
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_help_all_flag("--help-all", "Help for every subcommand");
    app.footer("Any subcommand accepts --config FILE with flat key=value lines; flags override it.\n"
               "Exit codes: 0 success, 1 I/O error, 2 usage or validation error.");

    SimulateCmd simulate;
    SweepCmd sweep;
    MapCmd map;
    BicCmd bic;
    NormalizeCmd normalize;

    auto* sim_app = app.add_subcommand("simulate", "Survival probabilities at one point, as JSON");
    simulate.add_to(*sim_app);
    auto* sweep_app = app.add_subcommand("sweep", "Survival versus z or versus eps2, written to a file");
    sweep.add_to(*sweep_app);
    auto* map_app = app.add_subcommand("map", "Survival over a (kappa z, detuning) grid");
    map.add_to(*map_app);
    auto* bic_app = app.add_subcommand("bic", "Bound states in the continuum and asymptotic survival");
    bic.add_to(*bic_app);
    auto* norm_app = app.add_subcommand("normalize", "Survival estimates from coincidence counts");
    normalize.add_to(*norm_app);

    try {
        args = expand_config(args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const OutputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }

    // Help requested on a subcommand surfaces as CallForHelp above; anything
    // else reaching here is a parsed subcommand.
    try {
        if (sim_app->parsed()) return simulate.run(out, err);
        if (sweep_app->parsed()) return sweep.run(*sweep_app, out, err);
        if (map_app->parsed()) return map.run(*map_app, out, err);
        if (bic_app->parsed()) return bic.run(out, err);
        if (norm_app->parsed()) return normalize.run(out, err);
    } catch (const InvalidParameter& e) {
        err << "error: " << flag_for(e.field()) << ": "
            << std::string(e.what()).substr(e.field().size() + 2) << '\n';
        return kExitUsage;
    } catch (const OutputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}

}  // namespace fano::cli
