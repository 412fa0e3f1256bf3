#pragma once

#include <cstddef>
#include <span>

#include "elicit/report.hpp"
#include "elicit/types.hpp"
#include "elicit/vec.hpp"

namespace elicit {

/// Simplex membership slack accepted for negative-entropy inputs.
inline constexpr double kSimplexTol = 1e-9;
/// Smallest coordinate at which the negative-entropy gradient is defined.
inline constexpr double kInteriorFloor = 1e-12;

double eval_convex(const ConvexSpec& g, std::span<const double> t);

/// One element of the subdifferential at t. Max-affine ties go to the
/// lowest piece index.
Vector subgradient(const ConvexSpec& g, std::span<const double> t);

struct ConjugatePoint {
    double value = 0.0;
    Vector argmax;  // maximizing grid point (or 1-D breakpoint)
};

/// Discrete Legendre transform: max over the grid (plus, for 1-D max-affine
/// functions, every pairwise piece intersection) of <d, v> - G(v). Always a
/// lower bound on the true conjugate.
ConjugatePoint conjugate_point(const ConvexSpec& g, std::span<const double> d,
                               const TypeSpace& grid);

double conjugate(const ConvexSpec& g, std::span<const double> d, const TypeSpace& grid);

/// Verifies G(t') >= G(t) + <d_t, t' - t> - tol over all ordered pairs.
/// Witness indices are (t, t'), slack the amount of violation.
CheckReport check_subgradient_selection(const ConvexSpec& g, const LinearFamily& fam,
                                        const TypeSpace& ts, double tol = kTol);

/// G(t) - G(t_report) - <t - t_report, dG(t_report)> using subgradient().
double bregman_divergence(const ConvexSpec& g, std::span<const double> t,
                          std::span<const double> t_report);

/// The family {subgradient(g, t)} over the points of `ts`.
LinearFamily subgradient_family(const ConvexSpec& g, const TypeSpace& ts);

}  // namespace elicit
