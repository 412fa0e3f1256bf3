#pragma once

#include <cstddef>
#include <map>

#include "elicit/report.hpp"
#include "elicit/types.hpp"
#include "elicit/vec.hpp"

namespace elicit {

/// Surplus G and payments p(t) = <f(t), t> - G(t) for an implementable family.
struct PaymentResult {
    Vector surplus;
    Vector payments;
    std::size_t base_type = 0;
    /// Truthfulness scan of the induced score, run during synthesis.
    CheckReport verification;

    /// A(t')(t) = <f(t'), t> - p(t').
    ScoreTable induced_score(const LinearFamily& fam) const;
};

/// Rochet's construction: surplus(t) is the longest path from t0 to t in the
/// implementability graph. Throws NotImplementable with the cycle certificate
/// when the family is not cyclically monotone.
PaymentResult rochet_payments(const TypeSpace& ts, const LinearFamily& fam, std::size_t t0,
                              double tol = kTol);

/// Right-continuous, single-parameter step allocation on [0, inf):
/// values[0] on [0, breakpoints[0]), values[k] on [breakpoints[k-1], breakpoints[k]).
struct StepAllocation {
    Vector breakpoints;
    Vector values;

    double operator()(double t) const;
    /// Exact integral over [0, upto].
    double integral(double upto) const;
    /// Throws InvalidInput for malformed shapes and NotMonotone for the first
    /// decreasing pair of values.
    void validate() const;
};

/// p(t) = t f(t) - int_0^t f + p0.
double myerson_payment(const StepAllocation& alloc, double t, double p0 = 0.0);

struct RevenueInterval {
    double lower = 0.0;
    double upper = 0.0;
    std::map<std::size_t, double> fixed;
    std::size_t target = 0;

    double width() const { return upper - lower; }
};

/// Range of surplus values at `target` consistent with the anchored values
/// and the family. A target that is itself anchored yields the degenerate
/// interval at its anchored value.
RevenueInterval revenue_interval(const TypeSpace& ts, const LinearFamily& fam,
                                 const std::map<std::size_t, double>& anchors, std::size_t target,
                                 double tol = kTol);

/// Anchors type 0 at surplus 0 and reports every target whose interval has
/// positive width.
CheckReport check_revenue_equivalence(const TypeSpace& ts, const LinearFamily& fam,
                                      double tol = kTol);

}  // namespace elicit
