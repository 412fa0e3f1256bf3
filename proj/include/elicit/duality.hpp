#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "elicit/property.hpp"
#include "elicit/report.hpp"
#include "elicit/types.hpp"
#include "elicit/vec.hpp"

namespace elicit {

/// Fenchel-Young equality band used to decide subgradient membership.
inline constexpr double kDualTol = 1e-6;

/// G*(d) as used by every duality routine: the closed form |d|^2 / 4 for the
/// squared norm when G carries a box domain containing the maximizer d / 2,
/// otherwise the discrete conjugate over `grid`.
double dual_conjugate(const ConvexSpec& g, std::span<const double> d, const TypeSpace& grid);

/// A(d, t) = <t, d> - G*(d).
double dual_report_score(const ConvexSpec& g, std::span<const double> d, std::span<const double> t,
                         const TypeSpace& grid);

/// A*(t, d) = <t, d> - G(t).
double dual_type_score(const ConvexSpec& g, std::span<const double> t, std::span<const double> d);

/// G**(t) = max over `duals` of <t, d> - G*(d).
double biconjugate(const ConvexSpec& g, std::span<const double> t, const TypeSpace& grid,
                   const std::vector<Vector>& duals);

/// G(t) + G*(d) - <t, d>: the common regret of both players at (d, t).
double fenchel_young_gap(const ConvexSpec& g, std::span<const double> t, std::span<const double> d,
                         const TypeSpace& grid);

struct QuadrangleEval {
    double primal_primal = 0.0;  // A(t', t)  = G(t') + <t - t', dG(t')>
    double dual_report = 0.0;    // A(d', t)  = <t, d'> - G*(d')
    double dual_type = 0.0;      // A*(t', d) = <t', d> - G(t')
    double dual_dual = 0.0;      // A*(d', d) = G*(d') + <dG*(d'), d - d'>
};

/// The four scores at reports (t', d') and types (t, d). The conjugate's
/// subgradient dG*(d') is the grid maximizer of <d', v> - G(v).
QuadrangleEval evaluate_quadrangle(const ConvexSpec& g, std::span<const double> t_report,
                                   std::span<const double> d_report, std::span<const double> t,
                                   std::span<const double> d, const TypeSpace& grid);

/// Over every (t in grid, d in duals): Fenchel-Young >= -tol, the difference
/// identity A(d,t) - A*(t,d) = G(t) - G*(d), and D_G(t,d) = D_G*(d,t), each
/// within `tol`. Metrics report the worst deviation of each.
CheckReport check_duality_identities(const ConvexSpec& g, const TypeSpace& grid,
                                     const std::vector<Vector>& duals, double tol = kTol);

struct Equilibrium {
    std::size_t d_index = 0;
    std::size_t t_index = 0;
    Vector d;
    Vector t;
    double agent_payoff = 0.0;      // G(t)
    double principal_payoff = 0.0;  // G*(d)
    double gap = 0.0;
};

/// Pure equilibria of the elicitation game: pairs with Fenchel-Young gap at
/// most `tol`, in (d_index, t_index) order.
std::vector<Equilibrium> elicitation_game_equilibria(const ConvexSpec& g, const TypeSpace& t_grid,
                                                     const std::vector<Vector>& d_grid,
                                                     const TypeSpace& grid, double tol = kDualTol);

using DualProperty = std::map<std::size_t, std::vector<Vector>>;

/// label -> points carrying it, in sample order.
DualProperty dual_property(const LabeledSample& sample);

/// Inverse of dual_property: point -> labels, grouped by point in order of
/// first appearance (labels ascending).
std::vector<std::pair<Vector, std::vector<std::size_t>>> primal_property(const DualProperty& dual);

}  // namespace elicit
