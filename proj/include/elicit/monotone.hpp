#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "elicit/report.hpp"
#include "elicit/types.hpp"
#include "elicit/vec.hpp"

namespace elicit {

/// Default closed-loop tolerance for path-independence checks.
inline constexpr double kIntegralTol = 1e-6;

/// Edge weight of the implementability graph: w(i -> j) = <d_i, t_j - t_i>.
double edge_weight(const TypeSpace& ts, const LinearFamily& fam, std::size_t from, std::size_t to);

struct PositiveCycle {
    std::vector<std::size_t> vertices;  // closed walk, first vertex not repeated
    double weight = 0.0;
};

/// Bellman-Ford search for a cycle with total weight above `tol`.
///
/// Edges are relaxed with weights shifted down by tol/|T|, so every cycle of
/// weight above `tol` stays strictly positive while exact-zero cycles become
/// strictly negative. Returns nullopt when no such cycle exists.
std::optional<PositiveCycle> find_positive_cycle(const TypeSpace& ts, const LinearFamily& fam,
                                                 double tol = kTol);

/// Longest-path values P(source -> v) for every v (assumes no positive cycle).
Vector longest_paths_from(const TypeSpace& ts, const LinearFamily& fam, std::size_t source);

/// Longest-path values P(v -> target) for every v (assumes no positive cycle).
Vector longest_paths_to(const TypeSpace& ts, const LinearFamily& fam, std::size_t target);

/// Weak monotonicity over all unordered pairs; witness (i, j) with slack
/// <d_i, t_j - t_i> + <d_j, t_i - t_j>.
CheckReport check_wmon(const TypeSpace& ts, const LinearFamily& fam, double tol = kTol);

/// Cyclic monotonicity. On failure the single witness is a positive cycle
/// (vertex order preserved) with its total weight as slack.
CheckReport check_cmon(const TypeSpace& ts, const LinearFamily& fam, double tol = kTol);

using VectorField = std::function<Vector(const Vector&)>;

/// Circulation of `field` around the triangle a -> b -> c -> a by composite
/// trapezoid rule with `samples` nodes per edge. Passes when |circulation|
/// <= tol + allowance, where the allowance is the Richardson estimate of the
/// quadrature error. Metrics: "circulation", "allowance".
CheckReport check_path_independence(const VectorField& field, const std::array<Vector, 3>& triangle,
                                    std::size_t samples, double tol = kIntegralTol);

/// Both truthfulness inequalities for every pair of types within `radius`.
/// Also runs the unrestricted scan and records whether the verdicts agree.
CheckReport check_local_truthful(const ScoreTable& score, const TypeSpace& ts,
                                 std::span<const std::size_t> report_of, double radius,
                                 double tol = kTol);

}  // namespace elicit
