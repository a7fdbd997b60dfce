#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "frachyp/alon.hpp"
#include "frachyp/bounds.hpp"
#include "frachyp/coloring.hpp"
#include "frachyp/construction.hpp"
#include "frachyp/errors.hpp"
#include "frachyp/exact.hpp"
#include "frachyp/experiment.hpp"
#include "frachyp/hypergraph.hpp"
#include "frachyp/lp.hpp"
#include "frachyp/theorem1.hpp"

namespace frachyp::cli {

using nlohmann::json;

// exit codes: 0 success, 1 domain failure (improper, not colorable, not
// certified), 2 usage error

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IOError("cannot open " + path + " for writing");
    out << content;
}

inline int header_token_count(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string tok;
        int count = 0;
        while (ls >> tok) ++count;
        return count;
    }
    return 0;
}

inline json rational_json(const Rational& r) {
    return json{{"fraction", r.to_string()}, {"decimal", r.to_double()}};
}

inline json coloring_weights_json(const RationalLPResult& res, const Hypergraph& h) {
    json out;
    out["status"] = res.status == LPStatus::optimal
                        ? "optimal"
                        : (res.status == LPStatus::infeasible ? "infeasible" : "unbounded");
    if (res.status != LPStatus::optimal) return out;
    out["value"] = rational_json(res.value);
    if (!res.independent_set_weights.empty()) {
        json weights = json::array();
        for (const auto& [mask, f] : res.independent_set_weights) {
            json members = json::array();
            for (int v = 0; v < h.vertex_count; ++v)
                if ((mask >> v) & 1) members.push_back(v);
            weights.push_back({{"set", members}, {"weight", f.to_string()}});
        }
        out["independent_set_weights"] = weights;
    }
    if (!res.vertex_weights.empty()) {
        json weights = json::array();
        for (const auto& w : res.vertex_weights) weights.push_back(w.to_string());
        out["vertex_weights"] = weights;
    }
    if (!res.edge_weights.empty()) {
        json weights = json::array();
        for (const auto& w : res.edge_weights) weights.push_back(w.to_string());
        out["edge_weights"] = weights;
    }
    return out;
}

inline json bound_report_json(const BoundReport& rep) {
    return json{{"name", rep.name},     {"n", rep.n},
                {"r", rep.r},           {"a", rep.a},
                {"b", rep.b},           {"value", rep.value},
                {"log_value", rep.log_value}, {"regime_ok", rep.regime_ok},
                {"formula", rep.formula},     {"note", rep.note}};
}

inline json trial_json(const TrialRecord& rec) {
    return json{{"cell", rec.cell_index},
                {"trial", rec.trial_index},
                {"n", rec.n},
                {"a", rec.a},
                {"b", rec.b},
                {"hypergraph_seed", rec.hypergraph_seed},
                {"solver_seed", rec.solver_seed},
                {"edges", rec.edge_count},
                {"success", rec.success},
                {"b1", rec.b1},
                {"b2", rec.b2},
                {"b3", rec.b3},
                {"b4", rec.b4},
                {"b5", rec.b5},
                {"classified", rec.classified},
                {"recolor_events", rec.recolor_events},
                {"attempts", rec.attempts},
                {"wall_ms", rec.wall_ms}};
}

inline json cell_json(const CellReport& cell, int trials) {
    auto cls = [&](const ClassStats& cs) {
        return json{{"count", cs.count},
                    {"frequency", trials > 0 ? static_cast<double>(cs.count) / trials : 0.0},
                    {"wilson3_halfwidth", wilson_halfwidth(cs.count, trials, 3.0)},
                    {"bound", cs.bound},
                    {"flagged", cs.flagged}};
    };
    return json{{"n", cell.cell.n},
                {"a", cell.cell.a},
                {"b", cell.cell.b},
                {"multiplier", cell.cell.multiplier},
                {"edges", cell.edge_count},
                {"trials", cell.trials},
                {"successes", cell.successes},
                {"failures", cell.failures},
                {"unclassified_failures", cell.unclassified_failures},
                {"mean_recolor_events", cell.mean_recolor_events},
                {"b1", cls(cell.b1)},
                {"b2", cls(cell.b2)},
                {"b3", cls(cell.b3)},
                {"b4", cls(cell.b4)},
                {"b5", cls(cell.b5)},
                {"wall_ms", cell.wall_ms}};
}

inline std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw InvalidParams("empty list");
    return out;
}

inline std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw InvalidParams("empty list");
    return out;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"fractional hypergraph coloring toolkit"};
    app.name("frachyp");
    app.require_subcommand(1);

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a hypergraph file");
    std::string gen_type;
    int gen_v = 0, gen_n = 2;
    long long gen_m = 0;
    std::uint64_t gen_seed = 0;
    bool gen_distinct = false;
    std::string gen_out;
    gen->add_option("--type", gen_type, "complete | cycle | random")->required();
    gen->add_option("--v", gen_v, "vertex count")->required();
    gen->add_option("--n", gen_n, "uniformity");
    gen->add_option("--m", gen_m, "edge count (random)");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_flag("--distinct", gen_distinct, "reject duplicate edges (random)");
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // ---- verify -------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "check a coloring against a hypergraph");
    std::string verify_hg, verify_col;
    verify->add_option("--hypergraph", verify_hg, "hypergraph file")->required();
    verify->add_option("--coloring", verify_col, "coloring file")->required();

    // ---- solve --------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "randomized solvers");
    std::string solve_hg, solve_method = "theorem1", solve_out;
    int solve_a = 0, solve_b = 0, solve_attempts = 50;
    std::uint64_t solve_seed = 0;
    double solve_p = -1.0;
    solve->add_option("--hypergraph", solve_hg)->required();
    solve->add_option("--method", solve_method, "theorem1 | alon");
    solve->add_option("--a", solve_a)->required();
    solve->add_option("--b", solve_b)->required();
    solve->add_option("--seed", solve_seed);
    solve->add_option("--p", solve_p, "light-vertex threshold override");
    solve->add_option("--max-attempts", solve_attempts, "restart budget (alon)");
    solve->add_option("--out", solve_out, "write the returned coloring here");

    // ---- exact --------------------------------------------------------
    auto* exact = app.add_subcommand("exact", "exhaustive (a:b)-colorability");
    std::string exact_hg, exact_out;
    int exact_a = 0, exact_b = 0, exact_amax = 0;
    exact->add_option("--hypergraph", exact_hg)->required();
    exact->add_option("--a", exact_a, "palette size (decision mode)");
    exact->add_option("--b", exact_b, "colors per vertex (decision mode)");
    exact->add_option("--a-max", exact_amax, "search the smallest ratio up to this a");
    exact->add_option("--out", exact_out, "write a witness coloring here");

    // ---- chif ---------------------------------------------------------
    auto* chif = app.add_subcommand("chif", "exact fractional chromatic number");
    std::string chif_hg;
    chif->add_option("--hypergraph", chif_hg)->required();

    // ---- construct ----------------------------------------------------
    auto* construct = app.add_subcommand("construct", "sample a non-colorable hypergraph");
    int con_n = 0, con_a = 0, con_b = 0, con_attempts = 100;
    long long con_v = -1, con_m = -1;
    std::uint64_t con_seed = 0;
    std::string con_out;
    construct->add_option("--n", con_n)->required();
    construct->add_option("--a", con_a)->required();
    construct->add_option("--b", con_b)->required();
    construct->add_option("--v", con_v, "vertex count (default an^2/(2b) rounded)");
    construct->add_option("--m", con_m, "edge count (default from the union bound)");
    construct->add_option("--seed", con_seed);
    construct->add_option("--max-attempts", con_attempts);
    construct->add_option("--out", con_out, "hypergraph output path")->required();

    // ---- bounds -------------------------------------------------------
    auto* bounds_cmd = app.add_subcommand("bounds", "quantitative bound calculators");
    std::string which;
    int bnd_n = 0, bnd_a = 0, bnd_b = 0, bnd_r = 0;
    bounds_cmd->add_option("--which", which, "thm1 | eq1 | eq5 | prop2 | thm2")->required();
    bounds_cmd->add_option("--n", bnd_n)->required();
    bounds_cmd->add_option("--a", bnd_a);
    bounds_cmd->add_option("--b", bnd_b);
    bounds_cmd->add_option("--r", bnd_r);

    // ---- experiment ---------------------------------------------------
    auto* experiment = app.add_subcommand("experiment", "seeded Monte Carlo sweeps");
    std::string exp_n = "10", exp_a = "5", exp_b = "2", exp_mult = "1.0";
    int exp_v = 0, exp_trials = 100;
    std::uint64_t exp_seed = 0;
    std::string exp_method = "theorem1", exp_out, exp_format = "json";
    experiment->add_option("--n", exp_n, "uniformities, comma separated");
    experiment->add_option("--a", exp_a, "palette sizes, comma separated");
    experiment->add_option("--b", exp_b, "per-vertex counts, comma separated");
    experiment->add_option("--multiplier", exp_mult, "edge budget multipliers");
    experiment->add_option("--v", exp_v, "vertex count")->required();
    experiment->add_option("--trials", exp_trials);
    experiment->add_option("--seed", exp_seed);
    experiment->add_option("--method", exp_method, "theorem1 | alon");
    experiment->add_option("--out", exp_out, "report path prefix");
    experiment->add_option("--format", exp_format, "json | csv (csv adds a grid table)");

    std::vector<const char*> argv;
    argv.push_back("frachyp");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream dummy;
        int code = app.exit(e, e.get_exit_code() == 0 ? out : dummy, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            Hypergraph h;
            if (gen_type == "complete") h = gen_complete_uniform(gen_v, gen_n);
            else if (gen_type == "cycle") h = gen_cycle(gen_v);
            else if (gen_type == "random")
                h = gen_random_uniform(gen_v, gen_n, gen_m, gen_seed, gen_distinct);
            else {
                err << "gen: unknown --type " << gen_type << "\n";
                return 2;
            }
            std::string text = serialize_hypergraph(h);
            if (gen_out.empty()) out << text;
            else detail::write_file(gen_out, text);
            return 0;
        }

        if (verify->parsed()) {
            Hypergraph h = parse_hypergraph(detail::read_file(verify_hg));
            std::string col_text = detail::read_file(verify_col);
            int tokens = detail::header_token_count(col_text);
            if (tokens == 3) {
                FractionalColoring chi = parse_fractional_coloring(col_text);
                auto pairs = monochromatic_pairs(h, chi);
                if (pairs.empty()) {
                    out << "proper\n";
                    return 0;
                }
                out << "improper\n";
                for (const auto& p : pairs)
                    out << "monochromatic edge " << p.edge << " color " << p.color << "\n";
                return 1;
            }
            if (tokens == 2) {
                PanchromaticColoring c = parse_panchromatic(col_text);
                bool ok = is_panchromatic(h, c);
                out << (ok ? "panchromatic\n" : "not panchromatic\n");
                return ok ? 0 : 1;
            }
            err << "verify: unrecognized coloring header in " << verify_col << "\n";
            return 1;
        }

        if (solve->parsed()) {
            Hypergraph h = parse_hypergraph(detail::read_file(solve_hg));
            if (solve_method == "theorem1") {
                SolverParams params{solve_a, solve_b, solve_seed,
                                    solve_p > 0 ? std::optional<double>(solve_p) : std::nullopt};
                SolveOutcome outcome = solve_theorem1(h, params);
                json report{{"method", "theorem1"},
                            {"a", solve_a},
                            {"b", solve_b},
                            {"seed", solve_seed},
                            {"p", outcome.p},
                            {"vertices", h.vertex_count},
                            {"edges", h.edge_count()},
                            {"status",
                             outcome.status == SolveStatus::proper ? "proper" : "failed"},
                            {"recolor_events", outcome.events.size()},
                            {"bad_events",
                             {{"b1", outcome.report.b1.size()},
                              {"b2", outcome.report.b2.size()},
                              {"b3", outcome.report.b3.size()},
                              {"b4", outcome.report.b4.size()},
                              {"b5", outcome.report.b5.size()}}}};
                out << report.dump(2) << "\n";
                if (!solve_out.empty())
                    detail::write_file(solve_out, serialize_fractional_coloring(outcome.final));
                return outcome.status == SolveStatus::proper ? 0 : 1;
            }
            if (solve_method == "alon") {
                AlonParams params{solve_a, solve_b, solve_seed, solve_attempts};
                try {
                    AlonOutcome outcome = solve_alon(h, params);
                    AlonPrecondition pre = precondition_alon(h, solve_a, solve_b);
                    json report{{"method", "alon"},
                                {"a", solve_a},
                                {"b", solve_b},
                                {"seed", solve_seed},
                                {"working_colors", outcome.ledger.working_colors},
                                {"repairs", outcome.ledger.events.size()},
                                {"attempts", outcome.ledger.attempts},
                                {"status", "proper"},
                                {"preconditions",
                                 {{"ratio_window", pre.ratio_window},
                                  {"edge_budget_ok", pre.edge_budget_ok},
                                  {"proof_condition_ok", pre.proof_condition_ok},
                                  {"reserve_ge_b", pre.reserve_ge_b}}}};
                    out << report.dump(2) << "\n";
                    if (!solve_out.empty())
                        detail::write_file(solve_out,
                                           serialize_fractional_coloring(outcome.coloring));
                    return 0;
                } catch (const AttemptsExhausted& e) {
                    err << e.what() << "\n";
                    return 1;
                }
            }
            err << "solve: unknown --method " << solve_method << "\n";
            return 2;
        }

        if (exact->parsed()) {
            Hypergraph h = parse_hypergraph(detail::read_file(exact_hg));
            if (exact_amax > 0) {
                std::optional<FractionalColoring> witness;
                Rational ratio = chi_f_via_ab_search(h, exact_amax, enumeration_budget(), &witness);
                out << ratio.to_string() << "\n";
                if (!exact_out.empty() && witness)
                    detail::write_file(exact_out, serialize_fractional_coloring(*witness));
                return 0;
            }
            if (exact_a < 1 || exact_b < 1) {
                err << "exact: provide --a and --b, or --a-max\n";
                return 2;
            }
            auto witness = brute_force_colorable(h, exact_a, exact_b);
            if (!witness) {
                out << "not colorable\n";
                return 1;
            }
            out << "colorable " << exact_a << "/" << exact_b << "\n";
            if (!exact_out.empty())
                detail::write_file(exact_out, serialize_fractional_coloring(*witness));
            return 0;
        }

        if (chif->parsed()) {
            Hypergraph h = parse_hypergraph(detail::read_file(chif_hg));
            RationalLPResult primal = chi_f_primal(h);
            RationalLPResult dual = chi_f_dual(h);
            RationalLPResult matching = fractional_matching(h);
            json report{{"vertices", h.vertex_count},
                        {"edges", h.edge_count()},
                        {"primal", detail::coloring_weights_json(primal, h)},
                        {"dual", detail::coloring_weights_json(dual, h)},
                        {"matching", detail::coloring_weights_json(matching, h)}};
            if (primal.status == LPStatus::optimal) {
                report["chi_f"] = detail::rational_json(primal.value);
                report["duality_gap_zero"] =
                    dual.status == LPStatus::optimal && primal.value == dual.value;
            }
            out << report.dump(2) << "\n";
            return primal.status == LPStatus::optimal ? 0 : 1;
        }

        if (construct->parsed()) {
            ConstructionParams params{con_n, con_a, con_b, con_v, con_m, con_seed, con_attempts};
            try {
                ConstructResult res = sample_and_certify(params, con_attempts > 1);
                detail::write_file(con_out, serialize_hypergraph(res.hypergraph));
                json cert{{"v", res.hypergraph.vertex_count},
                          {"m", res.hypergraph.edge_count()},
                          {"p", res.certificate.p.to_string()},
                          {"union_bound_log", res.certificate.log_value},
                          {"union_bound_value", std::exp(res.certificate.log_value)},
                          {"union_bound_exact_lt_one",
                           res.certificate.exact_lt_one ? json(*res.certificate.exact_lt_one)
                                                        : json(nullptr)},
                          {"certified", res.certified},
                          {"certification_feasible", res.certification_feasible},
                          {"attempts", res.attempts}};
                out << cert.dump(2) << "\n";
                return res.certified ? 0 : 1;
            } catch (const AttemptsExhausted& e) {
                err << e.what() << "\n";
                return 1;
            }
        }

        if (bounds_cmd->parsed()) {
            if (which == "thm1") {
                if (bnd_a < 1 || bnd_b < 1) {
                    err << "bounds thm1 needs --a and --b\n";
                    return 2;
                }
                EdgeBudget eb = edge_budget_thm1(bnd_n, bnd_a, bnd_b);
                json rep{{"name", "recoloring_edge_budget"},
                         {"n", bnd_n},
                         {"a", bnd_a},
                         {"b", bnd_b},
                         {"value", eb.value},
                         {"proof_form", eb.proof_form},
                         {"constant_c", eb.constant_c},
                         {"regime_ok", eb.regime_ok},
                         {"formula", "(a b^3)^(-1/2) (n/ln n)^(1/2) (a/b)^(n-1)"}};
                out << rep.dump(2) << "\n";
                return 0;
            }
            if (which == "eq1") {
                if (bnd_r < 2) {
                    err << "bounds eq1 needs --r >= 2\n";
                    return 2;
                }
                MBoundsPair mb = m_bounds_proper(bnd_n, bnd_r);
                json rep{{"lower", detail::bound_report_json(mb.lower)},
                         {"upper", detail::bound_report_json(mb.upper)}};
                out << rep.dump(2) << "\n";
                return 0;
            }
            if (which == "eq5") {
                if (bnd_a < 1 || bnd_b < 1) {
                    err << "bounds eq5 needs --a and --b\n";
                    return 2;
                }
                out << detail::bound_report_json(cherk_kozik_ab_bound(bnd_n, bnd_a, bnd_b)).dump(2)
                    << "\n";
                return 0;
            }
            if (which == "prop2") {
                if (bnd_a < 2) {
                    err << "bounds prop2 needs --a >= 2\n";
                    return 2;
                }
                out << detail::bound_report_json(prop2_bound(bnd_n, bnd_a)).dump(2) << "\n";
                return 0;
            }
            if (which == "thm2") {
                if (bnd_a < 1 || bnd_b < 1) {
                    err << "bounds thm2 needs --a and --b\n";
                    return 2;
                }
                double value = thm2_edge_total(bnd_n, bnd_a, bnd_b);
                json rep{{"name", "construction_edge_total"},
                         {"n", bnd_n},
                         {"a", bnd_a},
                         {"b", bnd_b},
                         {"value", value},
                         {"formula", "(e/2) n^2 (a/b)^n b (ln(a/b) + 1)"}};
                out << rep.dump(2) << "\n";
                return 0;
            }
            err << "bounds: unknown --which " << which << "\n";
            return 2;
        }

        if (experiment->parsed()) {
            ExperimentConfig config;
            config.vertex_count = exp_v;
            config.trials = exp_trials;
            config.base_seed = exp_seed;
            if (exp_method == "theorem1") config.method = SolveMethod::theorem1;
            else if (exp_method == "alon") config.method = SolveMethod::alon;
            else {
                err << "experiment: unknown --method " << exp_method << "\n";
                return 2;
            }
            for (int n : detail::parse_int_list(exp_n))
                for (int a : detail::parse_int_list(exp_a))
                    for (int b : detail::parse_int_list(exp_b))
                        for (double mult : detail::parse_double_list(exp_mult))
                            config.cells.push_back({n, a, b, mult});

            std::ofstream trials_file;
            if (!exp_out.empty()) {
                trials_file.open(exp_out + ".trials.jsonl");
                if (!trials_file) throw IOError("cannot open " + exp_out + ".trials.jsonl");
            }
            TrialSink sink = nullptr;
            if (trials_file.is_open())
                sink = [&](const TrialRecord& rec) {
                    trials_file << detail::trial_json(rec).dump() << "\n";
                };
            ExperimentReport report = run_experiment(config, sink);

            json summary;
            summary["vertex_count"] = config.vertex_count;
            summary["trials_per_cell"] = config.trials;
            summary["base_seed"] = config.base_seed;
            summary["method"] = exp_method;
            summary["cells"] = json::array();
            bool any_flagged = false;
            for (const auto& cell : report.cells) {
                summary["cells"].push_back(detail::cell_json(cell, config.trials));
                any_flagged = any_flagged || cell.b1.flagged || cell.b2.flagged ||
                              cell.b3.flagged || cell.b4.flagged || cell.b5.flagged;
            }
            summary["any_cell_flagged"] = any_flagged;
            out << summary.dump(2) << "\n";
            if (!exp_out.empty()) detail::write_file(exp_out + ".summary.json", summary.dump(2));
            if (exp_format == "csv" && !exp_out.empty()) {
                std::ostringstream csv;
                csv << "n,a,b,multiplier,edges,trials,successes,failures,"
                       "b1,b2,b3,b4,b5,bound_b1,bound_b2,bound_b3,bound_b4,bound_b5,"
                       "mean_recolor_events,flagged\n";
                for (const auto& cell : report.cells) {
                    bool flagged = cell.b1.flagged || cell.b2.flagged || cell.b3.flagged ||
                                   cell.b4.flagged || cell.b5.flagged;
                    csv << cell.cell.n << ',' << cell.cell.a << ',' << cell.cell.b << ','
                        << cell.cell.multiplier << ',' << cell.edge_count << ',' << cell.trials
                        << ',' << cell.successes << ',' << cell.failures << ',' << cell.b1.count
                        << ',' << cell.b2.count << ',' << cell.b3.count << ',' << cell.b4.count
                        << ',' << cell.b5.count << ',' << cell.b1.bound << ',' << cell.b2.bound
                        << ',' << cell.b3.bound << ',' << cell.b4.bound << ',' << cell.b5.bound
                        << ',' << cell.mean_recolor_events << ',' << (flagged ? 1 : 0) << "\n";
                }
                detail::write_file(exp_out + ".grid.csv", csv.str());
            }
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace frachyp::cli
