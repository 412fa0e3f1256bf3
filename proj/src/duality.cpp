#include "elicit/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "elicit/core.hpp"
#include "elicit/errors.hpp"

namespace elicit {

double dual_conjugate(const ConvexSpec& g, std::span<const double> d, const TypeSpace& grid) {
    require_same_dim(d.size(), grid.dim(), "dual vs grid");
    if (g.analytic() == AnalyticKind::SquaredNorm) {
        if (const auto& box = g.hint().box) {
            bool inside = box->first.size() == d.size();
            for (std::size_t i = 0; i < d.size() && inside; ++i)
                inside = d[i] / 2 >= box->first[i] && d[i] / 2 <= box->second[i];
            if (inside) return 0.25 * squared_norm(d);
        }
    }
    return conjugate(g, d, grid);
}

double dual_report_score(const ConvexSpec& g, std::span<const double> d, std::span<const double> t,
                         const TypeSpace& grid) {
    return dot(t, d) - dual_conjugate(g, d, grid);
}

double dual_type_score(const ConvexSpec& g, std::span<const double> t, std::span<const double> d) {
    return dot(t, d) - eval_convex(g, t);
}

double biconjugate(const ConvexSpec& g, std::span<const double> t, const TypeSpace& grid,
                   const std::vector<Vector>& duals) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& d : duals) best = std::max(best, dot(t, d) - dual_conjugate(g, d, grid));
    return best;
}

double fenchel_young_gap(const ConvexSpec& g, std::span<const double> t, std::span<const double> d,
                         const TypeSpace& grid) {
    return eval_convex(g, t) + dual_conjugate(g, d, grid) - dot(t, d);
}

QuadrangleEval evaluate_quadrangle(const ConvexSpec& g, std::span<const double> t_report,
                                   std::span<const double> d_report, std::span<const double> t,
                                   std::span<const double> d, const TypeSpace& grid) {
    QuadrangleEval q;
    q.primal_primal = eval_convex(g, t_report) + dot(subtract(t, t_report), subgradient(g, t_report));
    q.dual_report = dual_report_score(g, d_report, t, grid);
    q.dual_type = dual_type_score(g, t_report, d);
    const ConjugatePoint cp = conjugate_point(g, d_report, grid);
    q.dual_dual = dual_conjugate(g, d_report, grid) + dot(cp.argmax, subtract(d, d_report));
    return q;
}

CheckReport check_duality_identities(const ConvexSpec& g, const TypeSpace& grid,
                                     const std::vector<Vector>& duals, double tol) {
    Vector g_vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) g_vals[i] = eval_convex(g, grid[i]);
    Vector conj(duals.size());
    for (std::size_t k = 0; k < duals.size(); ++k) conj[k] = dual_conjugate(g, duals[k], grid);

    std::vector<Witness> ws;
    double worst_fy = 0.0;
    double worst_diff = 0.0;
    double worst_regret = 0.0;
    double max_gap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t k = 0; k < duals.size(); ++k) {
            const double td = dot(grid[i], duals[k]);
            const double report_score = td - conj[k];     // A(d, t)
            const double type_score = td - g_vals[i];     // A*(t, d)

            const double fy = td - report_score - type_score;  // = G(t) + G*(d) - <t,d>
            max_gap = std::max(max_gap, fy);
            worst_fy = std::min(worst_fy, fy);
            if (fy < -tol) ws.push_back({{i, k}, -fy, "fenchel_young"});

            const double diff = std::abs((report_score - type_score) - (g_vals[i] - conj[k]));
            worst_diff = std::max(worst_diff, diff);
            if (diff > tol) ws.push_back({{i, k}, diff, "difference_identity"});

            const double primal_regret = g_vals[i] - report_score;  // D_G(t, d)
            const double dual_regret = conj[k] - type_score;        // D_G*(d, t)
            const double regret = std::abs(primal_regret - dual_regret);
            worst_regret = std::max(worst_regret, regret);
            if (regret > tol) ws.push_back({{i, k}, regret, "regret_symmetry"});
        }
    }
    CheckReport report = CheckReport::from_witnesses(std::move(ws));
    report.metrics["min_fenchel_young_gap"] = worst_fy;
    report.metrics["max_fenchel_young_gap"] = max_gap;
    report.metrics["max_difference_error"] = worst_diff;
    report.metrics["max_regret_asymmetry"] = worst_regret;
    return report;
}

std::vector<Equilibrium> elicitation_game_equilibria(const ConvexSpec& g, const TypeSpace& t_grid,
                                                     const std::vector<Vector>& d_grid,
                                                     const TypeSpace& grid, double tol) {
    std::vector<Equilibrium> out;
    Vector g_vals(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) g_vals[i] = eval_convex(g, t_grid[i]);
    for (std::size_t k = 0; k < d_grid.size(); ++k) {
        const double conj = dual_conjugate(g, d_grid[k], grid);
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            const double gap = g_vals[i] + conj - dot(t_grid[i], d_grid[k]);
            if (std::abs(gap) <= tol) out.push_back({k, i, d_grid[k], t_grid[i], g_vals[i], conj, gap});
        }
    }
    return out;
}

DualProperty dual_property(const LabeledSample& sample) {
    if (sample.labels.size() != sample.points.size())
        throw DimensionMismatch("one label per sample point required");
    DualProperty out;
    for (std::size_t k = 0; k < sample.size(); ++k) out[sample.labels[k]].push_back(sample.points[k]);
    return out;
}

std::vector<std::pair<Vector, std::vector<std::size_t>>> primal_property(const DualProperty& dual) {
    std::vector<std::pair<Vector, std::vector<std::size_t>>> out;
    for (const auto& [label, pts] : dual) {
        for (const auto& p : pts) {
            auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == p; });
            if (it == out.end()) {
                out.push_back({p, {label}});
            } else if (std::find(it->second.begin(), it->second.end(), label) == it->second.end()) {
                it->second.push_back(label);
            }
        }
    }
    return out;
}

}  // namespace elicit
