#include "elicit/payments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "elicit/errors.hpp"
#include "elicit/monotone.hpp"

namespace elicit {

namespace {

void require_implementable(const TypeSpace& ts, const LinearFamily& fam, double tol) {
    CheckReport cmon = check_cmon(ts, fam, tol);
    if (!cmon.passed) throw NotImplementable(std::move(cmon));
}

}  // namespace

ScoreTable PaymentResult::induced_score(const LinearFamily& fam) const {
    if (fam.size() != payments.size()) throw DimensionMismatch("family vs payments");
    std::vector<ScoreRow> rows;
    rows.reserve(fam.size());
    for (std::size_t r = 0; r < fam.size(); ++r) rows.push_back({fam[r], -payments[r]});
    return ScoreTable(std::move(rows));
}

PaymentResult rochet_payments(const TypeSpace& ts, const LinearFamily& fam, std::size_t t0,
                              double tol) {
    fam.require_aligned(ts);
    if (t0 >= ts.size()) throw InvalidInput("base type index out of range");
    require_implementable(ts, fam, tol);

    PaymentResult out;
    out.base_type = t0;
    out.surplus = longest_paths_from(ts, fam, t0);
    out.surplus[t0] = 0.0;
    out.payments.resize(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        out.payments[i] = dot(fam[i], ts[i]) - out.surplus[i];

    std::vector<std::size_t> identity(ts.size());
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
    out.verification = check_score_pairs(out.induced_score(fam), ts, identity,
                                         std::numeric_limits<double>::infinity(), tol);
    return out;
}

void StepAllocation::validate() const {
    if (values.size() != breakpoints.size() + 1)
        throw InvalidInput("step allocation needs one more value than breakpoints");
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidInput("allocation values must be finite");
    for (std::size_t k = 0; k < breakpoints.size(); ++k) {
        if (!std::isfinite(breakpoints[k]) || breakpoints[k] < 0.0)
            throw InvalidInput("breakpoints must be finite and nonnegative");
        if (k > 0 && !(breakpoints[k] > breakpoints[k - 1]))
            throw InvalidInput("breakpoints must be strictly increasing");
    }
    for (std::size_t k = 0; k + 1 < values.size(); ++k)
        if (values[k + 1] < values[k]) throw NotMonotone(k, k + 1);
}

double StepAllocation::operator()(double t) const {
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    return values[static_cast<std::size_t>(it - breakpoints.begin())];
}

double StepAllocation::integral(double upto) const {
    long double total = 0.0L;
    double left = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double right = k < breakpoints.size() ? std::min(breakpoints[k], upto) : upto;
        if (right > left) total += static_cast<long double>(values[k]) * (right - left);
        left = std::max(left, right);
        if (left >= upto) break;
    }
    return static_cast<double>(total);
}

double myerson_payment(const StepAllocation& alloc, double t, double p0) {
    alloc.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("myerson payment needs t >= 0");
    return static_cast<double>(static_cast<long double>(t) * alloc(t) - alloc.integral(t) + p0);
}

RevenueInterval revenue_interval(const TypeSpace& ts, const LinearFamily& fam,
                                 const std::map<std::size_t, double>& anchors, std::size_t target,
                                 double tol) {
    fam.require_aligned(ts);
    if (anchors.empty()) throw InvalidInput("revenue interval needs at least one anchor");
    if (target >= ts.size()) throw InvalidInput("target index out of range");
    for (const auto& [s, v] : anchors) {
        if (s >= ts.size()) throw InvalidInput("anchor index out of range");
        if (!std::isfinite(v)) throw InvalidInput("anchor values must be finite");
    }
    require_implementable(ts, fam, tol);

    std::map<std::size_t, Vector> from;
    for (const auto& [s, v] : anchors) from.emplace(s, longest_paths_from(ts, fam, s));

    // G(s') >= G(s) + P(s -> s') for every ordered anchor pair.
    for (const auto& [s, vs] : anchors)
        for (const auto& [s2, vs2] : anchors) {
            if (s == s2) continue;
            const double excess = vs + from.at(s)[s2] - vs2;
            if (excess > tol) throw InconsistentAnchors(s, s2, excess);
        }

    RevenueInterval out;
    out.fixed = anchors;
    out.target = target;
    if (auto it = anchors.find(target); it != anchors.end()) {
        out.lower = out.upper = it->second;
        return out;
    }
    const Vector from_target = longest_paths_from(ts, fam, target);
    out.lower = -std::numeric_limits<double>::infinity();
    out.upper = std::numeric_limits<double>::infinity();
    for (const auto& [s, v] : anchors) {
        out.lower = std::max(out.lower, v + from.at(s)[target]);
        out.upper = std::min(out.upper, v - from_target[s]);
    }
    return out;
}

CheckReport check_revenue_equivalence(const TypeSpace& ts, const LinearFamily& fam, double tol) {
    fam.require_aligned(ts);
    require_implementable(ts, fam, tol);
    const Vector out_of_base = longest_paths_from(ts, fam, 0);
    const Vector into_base = longest_paths_to(ts, fam, 0);
    std::vector<Witness> ws;
    double max_width = 0.0;
    for (std::size_t t = 1; t < ts.size(); ++t) {
        const double width = -into_base[t] - out_of_base[t];
        max_width = std::max(max_width, width);
        if (width > tol) ws.push_back({{t}, width, "interval_width"});
    }
    CheckReport report = CheckReport::from_witnesses(std::move(ws));
    report.metrics["max_width"] = max_width;
    return report;
}

}  // namespace elicit
