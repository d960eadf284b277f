// Scenario runner and report emitter for the curve-on-surface toolkit.
//
// Exit codes: 0 = all tasks and assertions passed, 1 = a verification
// assertion failed, 2 = input or system error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "noether/nl.hpp"

using namespace noether;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonFlags {
    std::uint64_t seed = 42;
    std::string format = "human";
    std::vector<int> degree_window;  // empty = per-task default
    int max_attempts = 100;
    std::string tier = "core";
};

std::uint64_t default_seed() {
    if (const char* e = std::getenv("NOETHER_SEED")) {
        try {
            return std::stoull(e);
        } catch (...) {
            throw CLI::ValidationError("NOETHER_SEED", "not an unsigned integer");
        }
    }
    return 42;
}

// aligned table for an array of flat objects sharing the same keys
void emit_table(const ordered_json& rows, std::ostream& os, const std::string& indent) {
    if (rows.empty()) return;
    std::vector<std::string> cols;
    for (const auto& [k, v] : rows[0].items()) cols.push_back(k);
    std::vector<size_t> w;
    for (const auto& c : cols) w.push_back(c.size());
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
        std::vector<std::string> line;
        for (size_t i = 0; i < cols.size(); ++i) {
            const auto& v = row[cols[i]];
            line.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            w[i] = std::max(w[i], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    os << indent;
    for (size_t i = 0; i < cols.size(); ++i)
        os << cols[i] << std::string(w[i] - cols[i].size() + 2, ' ');
    os << "\n";
    for (const auto& line : cells) {
        os << indent;
        for (size_t i = 0; i < cols.size(); ++i)
            os << line[i] << std::string(w[i] - line[i].size() + 2, ' ');
        os << "\n";
    }
}

bool is_table(const ordered_json& v) {
    return v.is_array() && !v.empty() && v[0].is_object();
}

// human format: aligned key = value lines, section headers per task,
// arrays of records rendered as tables
void emit_human(const ordered_json& rep, std::ostream& os) {
    os << rep["tool"].get<std::string>() << " " << rep["version"].get<std::string>() << "\n";
    for (const auto& [key, val] : rep.items()) {
        if (key == "tool" || key == "version" || key == "tasks") continue;
        if (is_table(val)) {
            os << key << ":\n";
            emit_table(val, os, "  ");
        } else {
            os << key << " = " << val.dump() << "\n";
        }
    }
    if (!rep.contains("tasks")) return;
    for (const auto& [task, body] : rep["tasks"].items()) {
        os << "\n[" << task << "]\n";
        size_t w = 0;
        for (const auto& [k, v] : body.items()) w = std::max(w, k.size());
        for (const auto& [k, v] : body.items()) {
            if (is_table(v)) {
                os << "  " << k << ":\n";
                emit_table(v, os, "    ");
            } else {
                os << "  " << k << std::string(w - k.size(), ' ') << " = " << v.dump() << "\n";
            }
        }
    }
}

int emit(const ordered_json& rep, const std::string& format,
         std::chrono::steady_clock::time_point start) {
    if (format == "machine") {
        // byte-deterministic: no timing, fixed indentation
        std::cout << rep.dump(2) << "\n";
    } else {
        emit_human(rep, std::cout);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cout << "\nelapsed_ms = " << ms << "\n";
    }
    return 0;
}

ProjectiveScheme curve_from_json(const ordered_json& c) {
    std::string ctor = c.at("constructor").get<std::string>();
    std::vector<std::string> args;
    if (c.contains("args"))
        for (const auto& a : c["args"]) args.push_back(a.get<std::string>());
    if (ctor == "line") {
        if (args.size() != 2) throw std::invalid_argument("line takes two linear forms");
        return construct_curve(CurveSpec::line(args[0], args[1]));
    }
    if (ctor == "plane_curve") {
        if (args.size() != 2) throw std::invalid_argument("plane_curve takes a linear form and a plane equation");
        return construct_curve(CurveSpec::plane_curve(args[0], args[1]));
    }
    if (ctor == "twisted_cubic") return construct_curve(CurveSpec::twisted_cubic());
    if (ctor == "explicit_ideal") {
        if (args.empty()) throw std::invalid_argument("explicit_ideal takes generators");
        return construct_curve(CurveSpec::explicit_ideal(args));
    }
    throw std::invalid_argument("unknown curve constructor: " + ctor);
}

ordered_json tangent_json(const TangentReport& t) {
    ordered_json j;
    j["h0_nc_p3"] = t.h0_nc_p3;
    j["h0_nx_p3"] = t.h0_nx_p3;
    j["h0_nxp3_restc"] = t.h0_nxp3_restc;
    j["h0_ncx"] = t.h0_ncx;
    j["h1_ncx"] = t.h1_ncx;
    j["ker_rho_dim"] = t.ker_rho_dim;
    j["rho_surjective"] = t.rho_surjective;
    j["beta_injective"] = t.beta_injective;
    j["dim_flag_tangent"] = t.dim_flag_tangent;
    j["dim_pr1_tangent"] = t.dim_pr1_tangent;
    j["dim_pr2_tangent"] = t.dim_pr2_tangent;
    j["dim_nl_tangent"] = t.dim_nl_tangent;
    j["h2_ox"] = t.h2_ox;
    j["dim_u_d"] = t.dim_u_d;
    j["semiregular"] = t.semiregular;
    j["codim"] = t.dim_u_d - t.dim_nl_tangent;
    return j;
}

ordered_json lattice_json(const LatticeScanReport& rep) {
    ordered_json j;
    j["d_min"] = rep.d_min;
    j["d_max"] = rep.d_max;
    j["bound"] = rep.bound;
    j["rows_scanned"] = rep.rows_scanned;
    j["clean"] = rep.clean();
    ordered_json rows = ordered_json::array();
    for (const auto& r : rep.solutions) {
        ordered_json row;
        row["d"] = r.d;
        row["kind"] = r.kind;
        row["t0"] = r.t0;
        row["t1"] = r.t1;
        row["a1"] = static_cast<long>(r.a1.get_num().get_si());
        row["a2"] = static_cast<long>(r.a2.get_num().get_si());
        row["b"] = static_cast<long>(r.b.get_num().get_si());
        row["excluded"] = r.excluded;
        rows.push_back(std::move(row));
    }
    j["solutions"] = std::move(rows);
    return j;
}

// scenario runner: tasks execute in declared order; the optional asserts
// block is checked against the flattened task results afterwards
int cmd_run(const std::string& path, const CommonFlags& fl, bool seed_flag_given,
            std::chrono::steady_clock::time_point start) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open scenario file: " << path << "\n";
        return 2;
    }
    ordered_json scn = ordered_json::parse(in);  // parse_error includes line/column

    int d = scn.at("d").get<int>();
    if (d < 1) throw std::invalid_argument("scenario degree must be >= 1");
    std::uint64_t seed = seed_flag_given ? fl.seed
                       : scn.contains("seed") ? scn["seed"].get<std::uint64_t>()
                                              : fl.seed;
    std::vector<std::string> tasks = {"tangent"};
    if (scn.contains("tasks")) {
        tasks.clear();
        for (const auto& t : scn["tasks"]) tasks.push_back(t.get<std::string>());
    }
    for (const auto& t : tasks)
        if (t != "cohomology" && t != "semiregularity" && t != "tangent" &&
            t != "verdict" && t != "regularity" && t != "lattice")
            throw std::invalid_argument("unknown task: " + t);

    ProjectiveScheme curve = curve_from_json(scn.at("curve"));
    CurveSurfaceScenario s = random_surface_containing(curve, d, seed, fl.max_attempts);
    ScenarioAnalysis a(s);

    ordered_json rep;
    rep["tool"] = "noether";
    rep["version"] = kVersion;
    rep["seed"] = seed;
    rep["d"] = d;
    rep["deg_c"] = a.deg_c();
    rep["smoothness_certified"] = s.smoothness_certified;
    rep["tasks"] = ordered_json::object();

    std::optional<FlagTangentData> ft;
    auto flag = [&]() -> FlagTangentData& {
        if (!ft) ft = flag_tangent_data(a);
        return *ft;
    };

    for (const auto& task : tasks) {
        ordered_json body;
        if (task == "cohomology") {
            int lo = static_cast<int>(a.deg_c()), hi = d;
            if (fl.degree_window.size() == 2) { lo = fl.degree_window[0]; hi = fl.degree_window[1]; }
            body["window"] = {lo, hi};
            for (int i = 0; i <= 2; ++i) {
                ordered_json row = ordered_json::array();
                for (int k = lo; k <= hi; ++k) row.push_back(a.h_oxmc(i, k));
                body["h" + std::to_string(i) + "_oxmc"] = std::move(row);
            }
        } else if (task == "semiregularity") {
            SemiRegularityReport sr = semiregularity_report(a);
            body["h1_oxc"] = sr.h1_oxc;
            body["semiregular_certified"] = sr.semiregular_certified;
        } else if (task == "tangent") {
            body = tangent_json(flag().report);
        } else if (task == "verdict") {
            if (!scn.contains("dim_l_gamma"))
                throw std::invalid_argument("verdict task requires dim_l_gamma");
            long dl = scn["dim_l_gamma"].at("value").get<long>();
            bool exact = scn["dim_l_gamma"].value("exact", true);
            NonreducednessVerdict v = nonreducedness_verdict(a, dl, exact);
            body["dim_l_gamma"] = v.dim_l_gamma;
            body["dim_l_exact"] = v.dim_l_exact;
            body["rho_surjective"] = v.rho_surjective;
            body["nl_dim"] = v.nl_dim;
            body["nl_codim"] = v.nl_codim;
            body["gap"] = v.gap;
            body["verdict"] = verdict_name(v.verdict);
        } else if (task == "regularity") {
            FreeResolution res = minimal_free_resolution(
                GradedModulePresentation::ideal_module(a.curve_ideal()));
            BettiTable bt = res.betti();
            body["reg_ic"] = res.regularity();
            ordered_json twists = ordered_json::array();
            for (const auto& col : bt.twists) {
                std::vector<int> sorted(col.begin(), col.end());
                std::sort(sorted.begin(), sorted.end());
                twists.push_back(sorted);
            }
            body["betti_twists"] = std::move(twists);
        } else if (task == "lattice") {
            body = lattice_json(lattice_scan(5, std::max(5, d), 50));
        }
        rep["tasks"][task] = std::move(body);
    }

    int rc = 0;
    if (scn.contains("asserts")) {
        ordered_json diffs = ordered_json::object();
        for (const auto& [key, expect] : scn["asserts"].items()) {
            bool found = false;
            for (const auto& [task, body] : rep["tasks"].items()) {
                if (!body.contains(key)) continue;
                found = true;
                if (body[key] != expect) {
                    diffs[key] = {{"expected", expect}, {"actual", body[key]}};
                    rc = 1;
                }
            }
            if (!found) {
                diffs[key] = {{"expected", expect}, {"actual", nullptr}};
                rc = 1;
            }
        }
        rep["asserts_passed"] = (rc == 0);
        if (rc != 0) rep["assert_diffs"] = std::move(diffs);
    }
    emit(rep, fl.format, start);
    return rc;
}

int cmd_census(int d_min, int d_max, const std::vector<std::string>& families,
               const CommonFlags& fl, std::chrono::steady_clock::time_point start) {
    if (d_min < 5 || d_min > d_max) throw std::invalid_argument("census needs 5 <= d_min <= d_max");
    ordered_json rep;
    rep["tool"] = "noether";
    rep["version"] = kVersion;
    rep["seed"] = fl.seed;
    rep["d_min"] = d_min;
    rep["d_max"] = d_max;
    ordered_json rows = ordered_json::array();
    bool all_match = true;
    for (const auto& fam : families) {
        for (int d = d_min; d <= d_max; ++d) {
            long expected;
            ProjectiveScheme c;
            if (fam == "line") {
                c = construct_curve(CurveSpec::line("x0", "x1"));
                expected = d - 3;
            } else if (fam == "conic") {
                if (d < 6) continue;  // below the vanishing window for a conic
                c = construct_curve(CurveSpec::plane_curve("x0", "x1*x3 - x2^2"));
                expected = 2 * d - 7;
            } else if (fam == "coplanar_pair") {
                c = construct_curve(CurveSpec::plane_curve("x0", "x1*x2"));
                expected = 2 * d - 6;
            } else {
                throw std::invalid_argument("unknown family: " + fam);
            }
            CurveSurfaceScenario s = random_surface_containing(c, d, fl.seed, fl.max_attempts);
            ScenarioAnalysis a(s);
            long codim;
            if (fam == "coplanar_pair") {
                codim = nl_dimension_and_codim(a, family_dimension(fam).value).second;
            } else {
                TangentReport t = flag_tangent_report(a);
                codim = t.dim_u_d - t.dim_nl_tangent;
            }
            ordered_json row;
            row["d"] = d;
            row["family"] = fam;
            row["codim"] = codim;
            row["expected"] = expected;
            row["match"] = (codim == expected);
            if (codim != expected) all_match = false;
            rows.push_back(std::move(row));
        }
    }
    rep["rows"] = std::move(rows);
    rep["all_match"] = all_match;
    emit(rep, fl.format, start);
    return all_match ? 0 : 1;
}

int cmd_lattice(int d_min, int d_max, int bound, const CommonFlags& fl,
                std::chrono::steady_clock::time_point start) {
    LatticeScanReport scan = lattice_scan(d_min, d_max, bound);
    ordered_json rep;
    rep["tool"] = "noether";
    rep["version"] = kVersion;
    rep["tasks"] = ordered_json::object();
    rep["tasks"]["lattice"] = lattice_json(scan);
    emit(rep, fl.format, start);
    return scan.clean() ? 0 : 1;
}

int cmd_mdp(int d, int a_param, const CommonFlags& fl,
            std::chrono::steady_clock::time_point start) {
    Cas4Bundle b = cas4_family(d, a_param, fl.seed, fl.max_attempts);
    MdpRegularityReport r = mdp_regularity_report(b);
    ordered_json rep;
    rep["tool"] = "noether";
    rep["version"] = kVersion;
    rep["seed"] = fl.seed;
    rep["d"] = d;
    rep["a"] = a_param;
    ordered_json body;
    body["presentation_shape_ok"] = r.presentation_shape_ok;
    body["kernel_shape_ok"] = r.kernel_shape_ok;
    body["reg_al_tensor_m"] = r.reg_al_tensor_m;
    body["tensor_regularity_ok"] = r.tensor_regularity_ok;
    body["kernel_module_match"] = r.kernel_module_match;
    body["sheaf_reg_ker_p"] = r.sheaf_reg_ker_p;
    body["sheaf_regularity_ok"] = r.sheaf_regularity_ok;
    body["h1_at_d"] = r.h1_at_d;
    body["vanishing_ok"] = r.vanishing_ok;
    body["all_ok"] = r.all_ok();
    rep["tasks"] = ordered_json::object();
    rep["tasks"]["regularity_chain"] = std::move(body);
    emit(rep, fl.format, start);
    return r.all_ok() ? 0 : 1;
}

int cmd_mumford(const CommonFlags& fl, int max_attempts,
                std::chrono::steady_clock::time_point start) {
    if (fl.tier != "extended") {
        std::cerr << "error: the degree-14 scenario is extended-tier; pass --tier extended\n";
        return 2;
    }
    CurveSurfaceScenario s = mumford_scenario(fl.seed, max_attempts);
    ScenarioAnalysis a(s);
    CurveInvariants ci = curve_invariants(s.curve.hilbert);
    FamilyDimension fam = family_dimension("mumford");

    ordered_json rep;
    rep["tool"] = "noether";
    rep["version"] = kVersion;
    rep["seed"] = fl.seed;
    ordered_json body;
    body["deg_c"] = ci.degree;
    body["genus"] = ci.arithmetic_genus;
    body["d"] = s.d;
    body["h1_ic_3"] = a.h_oxmc(1, 3);
    body["h0_oxc"] = a.h0_ncx() + 1;
    body["h0_ncx"] = a.h0_ncx();
    body["h1_ncx"] = a.h1_ncx();
    body["h0_nc_p3"] = a.h0_nc_p3();
    body["dim_l_gamma"] = fam.value;
    body["tangent_gap"] = a.h0_nc_p3() - fam.value;
    body["semiregular_certified"] = semiregularity_report(a).semiregular_certified;
    body["rho_surjective"] = (a.h_oxmc(1, s.d) == 0);
    rep["tasks"] = ordered_json::object();
    rep["tasks"]["mumford"] = std::move(body);
    emit(rep, fl.format, start);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    auto start = std::chrono::steady_clock::now();
    CLI::App app{"exact curve-on-surface tangent space toolkit"};
    app.require_subcommand(1);

    CommonFlags fl;
    try {
        fl.seed = default_seed();
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    app.add_option("--seed", fl.seed, "deterministic seed (overrides NOETHER_SEED)");
    app.add_option("--format", fl.format, "output format")
        ->check(CLI::IsMember({"human", "machine"}));
    app.add_option("--degree-window", fl.degree_window, "cohomology degree window lo hi")
        ->expected(2);
    app.add_option("--max-attempts", fl.max_attempts, "smoothness retry budget");
    app.add_option("--tier", fl.tier, "computation tier")
        ->check(CLI::IsMember({"core", "extended"}));

    auto* run = app.add_subcommand("run", "run a scenario file");
    run->fallthrough();
    std::string scenario_path;
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();

    auto* census = app.add_subcommand("census", "codimension census over a degree range");
    census->fallthrough();
    int d_min = 5, d_max = 8;
    std::vector<std::string> families = {"line", "conic", "coplanar_pair"};
    census->add_option("--d-min", d_min, "lowest degree");
    census->add_option("--d-max", d_max, "highest degree");
    census->add_option("--families", families, "families to scan");

    auto* lattice = app.add_subcommand("lattice", "exhaustive lattice class scan");
    lattice->fallthrough();
    int lat_min = 5, lat_max = 12, bound = 50;
    lattice->add_option("--d-min", lat_min, "lowest degree");
    lattice->add_option("--d-max", lat_max, "highest degree");
    lattice->add_option("--bound", bound, "intersection profile bound");

    auto* mdp = app.add_subcommand("mdp-regularity", "two-line family regularity chain");
    mdp->fallthrough();
    int mdp_d = 5, mdp_a = 1;
    mdp->add_option("--d", mdp_d, "surface degree");
    mdp->add_option("--a", mdp_a, "family parameter a");

    auto* mum = app.add_subcommand("mumford", "degree-14 genus-24 extended-tier scenario");
    mum->fallthrough();
    int mum_attempts = 40;
    mum->add_option("--max-attempts", mum_attempts, "construction retry budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed())
            return cmd_run(scenario_path, fl, app.count("--seed") > 0, start);
        if (census->parsed()) return cmd_census(d_min, d_max, families, fl, start);
        if (lattice->parsed()) return cmd_lattice(lat_min, lat_max, bound, fl, start);
        if (mdp->parsed()) return cmd_mdp(mdp_d, mdp_a, fl, start);
        if (mum->parsed()) return cmd_mumford(fl, mum_attempts, start);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
