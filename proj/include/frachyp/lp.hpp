#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "frachyp/errors.hpp"
#include "frachyp/exact.hpp"
#include "frachyp/hypergraph.hpp"
#include "frachyp/rational.hpp"

namespace frachyp {

enum class LPStatus { optimal, infeasible, unbounded };

/**
 * Exact rational simplex for small dense LPs.
 *
 *   maximize c.x  subject to  row.x <= rhs or row.x >= rhs,  x >= 0
 *
 * Two-phase tableau method with Bland's rule, so it terminates on degenerate
 * instances.  Everything is computed in exact rationals; fine for the tens of
 * variables the chi_f programs need and nothing more.
 */
class RationalSimplex {
public:
    explicit RationalSimplex(int num_vars) : n_(num_vars), c_(num_vars, Rational(0)) {}

    void set_objective(std::vector<Rational> c) {
        if (static_cast<int>(c.size()) != n_) throw InvalidParams("objective size mismatch");
        c_ = std::move(c);
    }

    void add_constraint(std::vector<Rational> coeffs, bool greater_equal, Rational rhs) {
        if (static_cast<int>(coeffs.size()) != n_) throw InvalidParams("constraint size mismatch");
        rows_.push_back({std::move(coeffs), greater_equal, std::move(rhs)});
    }

    struct Solution {
        LPStatus status = LPStatus::optimal;
        Rational objective;
        std::vector<Rational> x;
    };

    Solution solve() {
        // normalize to rhs >= 0
        for (auto& row : rows_) {
            if (row.rhs.sign() < 0) {
                for (auto& v : row.coeffs) v = -v;
                row.rhs = -row.rhs;
                row.greater_equal = !row.greater_equal;
            }
        }
        const int m = static_cast<int>(rows_.size());
        int artificials = 0;
        for (const auto& row : rows_)
            if (row.greater_equal && !row.rhs.is_zero()) ++artificials;
        // a >= row with rhs 0 is satisfied by the origin; treat like <= with
        // negated surplus so no artificial is needed
        const int slack_cols = m;
        const int art_base = n_ + slack_cols;
        const int total = art_base + artificials;

        tableau_.assign(m, std::vector<Rational>(total + 1, Rational(0)));
        basis_.assign(m, -1);
        int art = art_base;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n_; ++j) tableau_[i][j] = rows_[i].coeffs[j];
            tableau_[i][n_ + i] = rows_[i].greater_equal ? Rational(-1) : Rational(1);
            tableau_[i][total] = rows_[i].rhs;
            if (rows_[i].greater_equal && !rows_[i].rhs.is_zero()) {
                tableau_[i][art] = Rational(1);
                basis_[i] = art;
                ++art;
            } else {
                basis_[i] = n_ + i;
                if (rows_[i].greater_equal) {
                    // slack basic at zero requires +1 coefficient
                    tableau_[i][n_ + i] = Rational(1);
                    for (int j = 0; j < n_; ++j) tableau_[i][j] = -tableau_[i][j];
                }
            }
        }

        if (artificials > 0) {
            // phase 1: maximize -(sum of artificials)
            std::vector<Rational> phase1(total, Rational(0));
            for (int j = art_base; j < total; ++j) phase1[j] = Rational(-1);
            build_objective_row(phase1, total);
            if (!run_simplex(total)) throw Error("phase 1 cannot be unbounded");
            if (obj_value_.sign() != 0) return {LPStatus::infeasible, Rational(0), {}};
            // pivot remaining artificials out of the basis
            for (int i = 0; i < m; ++i) {
                if (basis_[i] < art_base) continue;
                int col = -1;
                for (int j = 0; j < art_base; ++j) {
                    if (!tableau_[i][j].is_zero()) {
                        col = j;
                        break;
                    }
                }
                if (col >= 0) {
                    pivot(i, col, total);
                } else {
                    drop_row(i, total);
                    --i;
                }
            }
        }

        // phase 2 over structural + slack columns only
        std::vector<Rational> full_c(art_base, Rational(0));
        for (int j = 0; j < n_; ++j) full_c[j] = c_[j];
        for (auto& row : tableau_) {
            Rational rhs = row.back();
            row.resize(art_base + 1);
            row.back() = std::move(rhs);
        }
        build_objective_row(full_c, art_base);
        if (!run_simplex(art_base)) return {LPStatus::unbounded, Rational(0), {}};

        Solution s;
        s.status = LPStatus::optimal;
        s.objective = obj_value_;
        s.x.assign(n_, Rational(0));
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] < n_) s.x[basis_[i]] = tableau_[i].back();
        }
        return s;
    }

private:
    struct Row {
        std::vector<Rational> coeffs;
        bool greater_equal;
        Rational rhs;
    };

    int n_;
    std::vector<Rational> c_;
    std::vector<Row> rows_;
    std::vector<std::vector<Rational>> tableau_;  // m rows, columns + rhs
    std::vector<int> basis_;
    std::vector<Rational> obj_row_;  // reduced costs z_j - c_j
    Rational obj_value_;

    void build_objective_row(const std::vector<Rational>& c, int cols) {
        obj_row_.assign(cols, Rational(0));
        obj_value_ = Rational(0);
        for (int j = 0; j < cols; ++j) obj_row_[j] = -c[j];
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            Rational cb = basis_[i] < cols ? c[basis_[i]] : Rational(0);
            if (cb.is_zero()) continue;
            for (int j = 0; j < cols; ++j) obj_row_[j] += cb * tableau_[i][j];
            obj_value_ += cb * tableau_[i].back();
        }
    }

    /// Bland's rule; returns false on unboundedness.
    bool run_simplex(int cols) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < cols; ++j) {
                if (obj_row_[j].sign() < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (std::size_t i = 0; i < tableau_.size(); ++i) {
                if (tableau_[i][enter].sign() <= 0) continue;
                Rational ratio = tableau_[i].back() / tableau_[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = static_cast<int>(i);
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter, cols);
        }
    }

    void pivot(int row, int col, int cols) {
        Rational inv = Rational(1) / tableau_[row][col];
        for (auto& v : tableau_[row]) v *= inv;
        for (std::size_t i = 0; i < tableau_.size(); ++i) {
            if (static_cast<int>(i) == row || tableau_[i][col].is_zero()) continue;
            Rational factor = tableau_[i][col];
            for (std::size_t j = 0; j < tableau_[i].size(); ++j)
                tableau_[i][j] -= factor * tableau_[row][j];
        }
        if (!obj_row_.empty() && !obj_row_[col].is_zero()) {
            Rational factor = obj_row_[col];
            for (int j = 0; j < cols; ++j) obj_row_[j] -= factor * tableau_[row][j];
            obj_value_ -= factor * tableau_[row].back();
        }
        basis_[row] = col;
    }

    void drop_row(int row, int /*total*/) {
        tableau_.erase(tableau_.begin() + row);
        basis_.erase(basis_.begin() + row);
    }
};

// ---------------------------------------------------------------------------
// fractional chromatic number programs
// ---------------------------------------------------------------------------

struct RationalLPResult {
    LPStatus status = LPStatus::optimal;
    Rational value;
    /// covering weights f(I) on maximal independent sets (primal program)
    std::vector<std::pair<std::uint32_t, Rational>> independent_set_weights;
    /// vertex weights y(v) of the LP dual of the covering program
    std::vector<Rational> vertex_weights;
    /// edge weights w(e) of the edge-packing program (fractional matching)
    std::vector<Rational> edge_weights;
};

/**
 * chi_f as the covering LP: minimize sum f(I) over maximal independent sets
 * subject to sum_{I containing v} f(I) >= 1 for every vertex.  Restricting to
 * maximal sets loses nothing: weight on I can move to a maximal superset.
 */
inline RationalLPResult chi_f_primal(const Hypergraph& h, int max_vertices = 24) {
    RationalLPResult res;
    if (h.vertex_count == 0) return res;
    auto fam = enumerate_independent_sets(h, true, max_vertices);
    // a vertex in no independent set makes the covering infeasible; only
    // 1-uniform edges can cause this
    std::uint32_t covered = 0;
    for (std::uint32_t s : fam.sets) covered |= s;
    const std::uint32_t all =
        h.vertex_count == 32 ? ~0U : ((1U << h.vertex_count) - 1);
    if (covered != all) {
        res.status = LPStatus::infeasible;
        return res;
    }

    const int k = static_cast<int>(fam.sets.size());
    RationalSimplex lp(k);
    std::vector<Rational> obj(k, Rational(-1));  // maximize -sum f = minimize sum f
    lp.set_objective(obj);
    for (int v = 0; v < h.vertex_count; ++v) {
        std::vector<Rational> row(k, Rational(0));
        for (int j = 0; j < k; ++j)
            if ((fam.sets[j] >> v) & 1) row[j] = Rational(1);
        lp.add_constraint(std::move(row), true, Rational(1));
    }
    auto sol = lp.solve();
    if (sol.status != LPStatus::optimal) {
        res.status = sol.status;
        return res;
    }
    res.value = -sol.objective;
    for (int j = 0; j < k; ++j) {
        if (sol.x[j].sign() != 0)
            res.independent_set_weights.push_back({fam.sets[j], sol.x[j]});
    }
    // exact feasibility self-check
    for (int v = 0; v < h.vertex_count; ++v) {
        Rational cover(0);
        for (const auto& [mask, f] : res.independent_set_weights)
            if ((mask >> v) & 1) cover += f;
        if (cover < Rational(1)) throw Error("chi_f_primal: infeasible optimum");
    }
    return res;
}

/**
 * The LP dual of the covering program: maximize sum y(v) subject to
 * sum_{v in I} y(v) <= 1 for every maximal independent set I, y >= 0.
 * Strong duality makes its optimum equal chi_f_primal exactly.
 */
inline RationalLPResult chi_f_dual(const Hypergraph& h, int max_vertices = 24) {
    RationalLPResult res;
    if (h.vertex_count == 0) return res;
    auto fam = enumerate_independent_sets(h, true, max_vertices);
    std::uint32_t covered = 0;
    for (std::uint32_t s : fam.sets) covered |= s;
    const std::uint32_t all =
        h.vertex_count == 32 ? ~0U : ((1U << h.vertex_count) - 1);
    if (covered != all) {
        // uncovered vertex: its weight can grow without bound
        res.status = LPStatus::unbounded;
        return res;
    }

    RationalSimplex lp(h.vertex_count);
    lp.set_objective(std::vector<Rational>(h.vertex_count, Rational(1)));
    for (std::uint32_t mask : fam.sets) {
        std::vector<Rational> row(h.vertex_count, Rational(0));
        for (int v = 0; v < h.vertex_count; ++v)
            if ((mask >> v) & 1) row[v] = Rational(1);
        lp.add_constraint(std::move(row), false, Rational(1));
    }
    auto sol = lp.solve();
    if (sol.status != LPStatus::optimal) {
        res.status = sol.status;
        return res;
    }
    res.value = sol.objective;
    res.vertex_weights = sol.x;
    return res;
}

/**
 * The edge-weight packing program: maximize sum w(e) subject to
 * sum_{e containing v} w(e) <= 1.  This is the fractional matching LP, often
 * quoted as the dual of the covering program; its optimum differs from chi_f
 * in general (already on K3), so it is reported separately as a diagnostic.
 */
inline RationalLPResult fractional_matching(const Hypergraph& h) {
    RationalLPResult res;
    const int m = static_cast<int>(h.edges.size());
    if (m == 0) return res;
    RationalSimplex lp(m);
    lp.set_objective(std::vector<Rational>(m, Rational(1)));
    auto inc = incidence_lists(h);
    for (int v = 0; v < h.vertex_count; ++v) {
        std::vector<Rational> row(m, Rational(0));
        for (int e : inc[v]) row[e] = Rational(1);
        lp.add_constraint(std::move(row), false, Rational(1));
    }
    auto sol = lp.solve();
    if (sol.status != LPStatus::optimal) {
        res.status = sol.status;
        return res;
    }
    res.value = sol.objective;
    res.edge_weights = sol.x;
    return res;
}

}  // namespace frachyp
