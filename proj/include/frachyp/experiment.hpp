#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "frachyp/alon.hpp"
#include "frachyp/errors.hpp"
#include "frachyp/hypergraph.hpp"
#include "frachyp/rng.hpp"
#include "frachyp/theorem1.hpp"

namespace frachyp {

/**
 * Seeded Monte Carlo harness over a (n, a, b, multiplier) grid.  Every trial
 * derives its hypergraph seed and solver seed from base_seed + trial index,
 * so any run can be replayed in isolation; the aggregation is a plain sum of
 * per-trial counts and therefore independent of execution order.
 */

enum class SolveMethod { theorem1, alon };

struct ExperimentCell {
    int n = 0;
    int a = 0;
    int b = 0;
    double multiplier = 1.0;  // scales the method's edge budget

    friend bool operator==(const ExperimentCell& x, const ExperimentCell& y) {
        return x.n == y.n && x.a == y.a && x.b == y.b && x.multiplier == y.multiplier;
    }
};

struct ExperimentConfig {
    std::vector<ExperimentCell> cells;
    int vertex_count = 0;
    int trials = 1;
    std::uint64_t base_seed = 0;
    SolveMethod method = SolveMethod::theorem1;
};

struct TrialRecord {
    int cell_index = 0;
    int trial_index = 0;
    int n = 0, a = 0, b = 0;
    std::uint64_t hypergraph_seed = 0;
    std::uint64_t solver_seed = 0;
    long long edge_count = 0;
    bool success = false;
    bool b1 = false, b2 = false, b3 = false, b4 = false, b5 = false;
    bool classified = true;  // failure carries at least one witness
    int recolor_events = 0;
    int attempts = 1;       // alon restarts
    double wall_ms = 0.0;
};

struct ClassStats {
    long long count = 0;
    double bound = 0.0;     // analytic upper bound (theorem1 method)
    bool flagged = false;   // empirical frequency exceeds bound + 3 sigma
};

struct CellReport {
    ExperimentCell cell;
    long long edge_count = 0;
    int trials = 0;
    long long successes = 0;
    long long failures = 0;
    long long unclassified_failures = 0;
    ClassStats b1, b2, b3, b4, b5;
    double mean_recolor_events = 0.0;
    double wall_ms = 0.0;  // timing only; excluded from reproducibility checks

    bool deterministic_equal(const CellReport& o) const {
        auto same = [](const ClassStats& x, const ClassStats& y) {
            return x.count == y.count && x.bound == y.bound && x.flagged == y.flagged;
        };
        return cell == o.cell && edge_count == o.edge_count && trials == o.trials &&
               successes == o.successes && failures == o.failures &&
               unclassified_failures == o.unclassified_failures && same(b1, o.b1) &&
               same(b2, o.b2) && same(b3, o.b3) && same(b4, o.b4) && same(b5, o.b5) &&
               mean_recolor_events == o.mean_recolor_events;
    }
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<CellReport> cells;

    bool deterministic_equal(const ExperimentReport& o) const {
        if (cells.size() != o.cells.size()) return false;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (!cells[i].deterministic_equal(o.cells[i])) return false;
        return true;
    }
};

/// Wilson score interval half-width at z standard deviations.
inline double wilson_halfwidth(long long count, long long total, double z) {
    if (total <= 0) return 0.0;
    const double nn = static_cast<double>(total);
    const double ph = static_cast<double>(count) / nn;
    const double z2 = z * z;
    return z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / (1.0 + z2 / nn);
}

/// Edge count for a cell: floor(multiplier * method edge budget).
inline long long cell_edge_count(const ExperimentCell& cell, SolveMethod method) {
    double budget;
    if (method == SolveMethod::theorem1) {
        budget = edge_budget_thm1(cell.n, cell.a, cell.b).value;
    } else {
        const int ap = a_prime(cell.a, cell.n);
        if (ap < cell.b) throw InvalidParams("cell_edge_count: a' < b");
        budget = std::exp(-1.0) * std::pow(static_cast<double>(ap) / cell.b, cell.n);
    }
    return static_cast<long long>(std::floor(budget * cell.multiplier));
}

using TrialSink = std::function<void(const TrialRecord&)>;

inline ExperimentReport run_experiment(const ExperimentConfig& config,
                                       const TrialSink& sink = nullptr) {
    if (config.trials < 1 || config.vertex_count < 1)
        throw InvalidParams("run_experiment requires trials >= 1 and vertex_count >= 1");
    ExperimentReport report;
    report.config = config;
    for (std::size_t ci = 0; ci < config.cells.size(); ++ci) {
        const auto& cell = config.cells[ci];
        CellReport cr;
        cr.cell = cell;
        cr.trials = config.trials;
        cr.edge_count = cell_edge_count(cell, config.method);
        if (config.method == SolveMethod::theorem1) {
            auto bounds = bad_event_bounds(cell.n, cell.a, cell.b);
            cr.b1.bound = bounds.b1;
            cr.b2.bound = bounds.b2;
            cr.b3.bound = bounds.b3;
            cr.b4.bound = bounds.b4;
            cr.b5.bound = bounds.b5;
        }
        const auto start = std::chrono::steady_clock::now();
        long long recolor_total = 0;
        for (int t = 0; t < config.trials; ++t) {
            const std::uint64_t trial_seed =
                config.base_seed + static_cast<std::uint64_t>(ci) * 0x10000000ULL +
                static_cast<std::uint64_t>(t);
            TrialRecord rec;
            rec.cell_index = static_cast<int>(ci);
            rec.trial_index = t;
            rec.n = cell.n;
            rec.a = cell.a;
            rec.b = cell.b;
            rec.hypergraph_seed = derive_seed(trial_seed, 0);
            rec.solver_seed = derive_seed(trial_seed, 1);
            rec.edge_count = cr.edge_count;
            const auto trial_start = std::chrono::steady_clock::now();
            Hypergraph h = gen_random_uniform(config.vertex_count, cell.n, cr.edge_count,
                                              rec.hypergraph_seed);
            if (config.method == SolveMethod::theorem1) {
                SolverParams sp{cell.a, cell.b, rec.solver_seed, std::nullopt};
                SolveOutcome outcome = solve_theorem1(h, sp);
                rec.success = outcome.status == SolveStatus::proper;
                rec.b1 = !outcome.report.b1.empty();
                rec.b2 = !outcome.report.b2.empty();
                rec.b3 = !outcome.report.b3.empty();
                rec.b4 = !outcome.report.b4.empty();
                rec.b5 = !outcome.report.b5.empty();
                rec.classified = rec.success || outcome.report.any();
                rec.recolor_events = static_cast<int>(outcome.events.size());
            } else {
                AlonParams ap{cell.a, cell.b, rec.solver_seed, 50};
                try {
                    AlonOutcome outcome = solve_alon(h, ap);
                    rec.success = true;
                    rec.recolor_events = static_cast<int>(outcome.ledger.events.size());
                    rec.attempts = outcome.ledger.attempts;
                } catch (const AttemptsExhausted&) {
                    rec.success = false;
                    rec.classified = false;
                }
            }
            rec.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - trial_start)
                              .count();
            cr.successes += rec.success ? 1 : 0;
            cr.failures += rec.success ? 0 : 1;
            cr.unclassified_failures += (!rec.success && !rec.classified) ? 1 : 0;
            cr.b1.count += rec.b1 ? 1 : 0;
            cr.b2.count += rec.b2 ? 1 : 0;
            cr.b3.count += rec.b3 ? 1 : 0;
            cr.b4.count += rec.b4 ? 1 : 0;
            cr.b5.count += rec.b5 ? 1 : 0;
            recolor_total += rec.recolor_events;
            if (sink) sink(rec);
        }
        cr.mean_recolor_events = static_cast<double>(recolor_total) / config.trials;
        if (config.method == SolveMethod::theorem1) {
            for (ClassStats* cs : {&cr.b1, &cr.b2, &cr.b3, &cr.b4, &cr.b5}) {
                const double freq = static_cast<double>(cs->count) / config.trials;
                cs->flagged = freq > cs->bound + wilson_halfwidth(cs->count, config.trials, 3.0);
            }
        }
        cr.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
        report.cells.push_back(std::move(cr));
    }
    return report;
}

}  // namespace frachyp
