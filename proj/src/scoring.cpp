#include "elicit/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "elicit/core.hpp"
#include "elicit/errors.hpp"

namespace elicit {

namespace {

void require_distribution(std::span<const double> p, std::size_t n, const char* what) {
    require_same_dim(p.size(), n, what);
    if (!on_simplex(p, kSimplexTol)) throw DomainError(std::string(what) + " is not a distribution");
}

}  // namespace

OutcomeScoreTable::OutcomeScoreTable(std::size_t n_outcomes, std::vector<OutcomeRow> rows)
    : n_outcomes_(n_outcomes), rows_(std::move(rows)) {
    if (n_outcomes_ == 0) throw InvalidInput("scoring rule needs at least one outcome");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& r = rows_[i];
        require_distribution(r.report, n_outcomes_, "report");
        require_same_dim(r.payoffs.size(), n_outcomes_, "payoff row");
        for (std::size_t w = 0; w < n_outcomes_; ++w)
            if (r.payoffs[w].is_neg_infinity() && r.report[w] > 0.0)
                throw DomainError("row " + std::to_string(i) +
                                  " is -infinity at an outcome it gives positive probability");
    }
}

std::optional<std::size_t> OutcomeScoreTable::find_report(std::span<const double> p,
                                                          double tol) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& r = rows_[i].report;
        if (r.size() != p.size()) continue;
        bool same = true;
        for (std::size_t k = 0; k < r.size() && same; ++k) same = std::abs(r[k] - p[k]) <= tol;
        if (same) return i;
    }
    return std::nullopt;
}

OutcomeScoreTable make_scoring_rule(const ConvexSpec& g, const std::vector<Vector>& reports) {
    if (reports.empty()) throw InvalidInput("scoring rule needs at least one report");
    const std::size_t n = reports.front().size();
    const bool entropy = g.analytic() == AnalyticKind::NegEntropy;
    std::vector<OutcomeRow> rows;
    rows.reserve(reports.size());
    for (const auto& p : reports) {
        require_distribution(p, n, "report");
        std::vector<ExtendedReal> payoffs;
        payoffs.reserve(n);
        const bool boundary =
            std::any_of(p.begin(), p.end(), [](double x) { return x < kInteriorFloor; });
        if (entropy && boundary) {
            for (double x : p)
                payoffs.push_back(x > 0.0 ? ExtendedReal(std::log(x)) : ExtendedReal::neg_infinity());
        } else {
            const double gp = eval_convex(g, p);
            const Vector d = subgradient(g, p);
            const double dp = dot(d, p);
            for (std::size_t w = 0; w < n; ++w) payoffs.emplace_back(gp + d[w] - dp);
        }
        rows.push_back({p, std::move(payoffs)});
    }
    return OutcomeScoreTable(n, std::move(rows));
}

ExtendedReal expected_score(const OutcomeScoreTable& table, std::size_t report_idx,
                            std::span<const double> belief) {
    require_distribution(belief, table.n_outcomes(), "belief");
    const auto& row = table.row(report_idx);
    ExtendedReal total = 0.0;
    for (std::size_t w = 0; w < table.n_outcomes(); ++w) total = total + row.payoffs[w].times(belief[w]);
    return total;
}

ExtendedReal score_value(const OutcomeScoreTable& table, std::span<const double> belief) {
    ExtendedReal best = ExtendedReal::neg_infinity();
    for (std::size_t r = 0; r < table.size(); ++r) best = std::max(best, expected_score(table, r, belief));
    return best;
}

CheckReport check_proper(const OutcomeScoreTable& table, const std::vector<Vector>& beliefs,
                         bool strict, double tol) {
    std::vector<Witness> ws;
    std::size_t unmatched = 0;
    for (std::size_t b = 0; b < beliefs.size(); ++b) {
        const auto own = table.find_report(beliefs[b]);
        if (!own) {
            ++unmatched;
            continue;
        }
        const ExtendedReal truth = expected_score(table, *own, beliefs[b]);
        if (truth.is_neg_infinity())
            throw DomainError("truthful expected score is -infinity for belief " + std::to_string(b));
        for (std::size_t r = 0; r < table.size(); ++r) {
            if (r == *own) continue;
            const ExtendedReal dev = expected_score(table, r, beliefs[b]);
            if (dev.is_neg_infinity()) continue;
            const double gain = dev.value() - truth.value();
            if (gain > tol) {
                ws.push_back({{b, r}, gain, "violation"});
            } else if (strict && gain >= -tol && table.row(r).report != table.row(*own).report) {
                ws.push_back({{b, r}, gain, "tie"});
            }
        }
    }
    CheckReport report = CheckReport::from_witnesses(std::move(ws));
    report.metrics["unmatched_beliefs"] = static_cast<double>(unmatched);
    return report;
}

OutcomeScoreTable extend_to_hull(const OutcomeScoreTable& table,
                                 const std::vector<Vector>& extra_reports) {
    std::vector<OutcomeRow> rows = table.rows();
    for (const auto& p : extra_reports) {
        if (table.find_report(p)) continue;
        std::size_t best = 0;
        ExtendedReal best_val = ExtendedReal::neg_infinity();
        for (std::size_t r = 0; r < table.size(); ++r) {
            const ExtendedReal v = expected_score(table, r, p);
            if (r == 0 || v > best_val) {
                best_val = v;
                best = r;
            }
        }
        // The best row is finite wherever p is positive unless every row is -inf there.
        rows.push_back({p, table.row(best).payoffs});
    }
    return OutcomeScoreTable(table.n_outcomes(), std::move(rows));
}

CheckReport check_expert_separation(const OutcomeScoreTable& table,
                                    const std::vector<Vector>& informed,
                                    std::span<const double> uninformed, double delta_informed,
                                    double delta_uninformed, double tol) {
    std::vector<Witness> ws;
    double min_informed = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < informed.size(); ++i) {
        const ExtendedReal v = score_value(table, informed[i]);
        min_informed = std::min(min_informed, v.value());
        const double shortfall = delta_informed - v.value();
        if (shortfall > tol)
            ws.push_back({{i}, std::isfinite(shortfall) ? shortfall : std::numeric_limits<double>::max(),
                          "informed"});
    }
    const ExtendedReal vu = score_value(table, uninformed);
    const double excess = vu.value() - delta_uninformed;
    if (excess > tol) ws.push_back({{informed.size()}, excess, "uninformed"});
    CheckReport report = CheckReport::from_witnesses(std::move(ws));
    if (std::isfinite(min_informed)) report.metrics["min_informed_value"] = min_informed;
    if (vu.is_finite()) report.metrics["uninformed_value"] = vu.value();
    return report;
}

double DecisionScoreSpec::expected_value(std::size_t report_idx, std::span<const double> p) const {
    const auto& row = rows.at(report_idx);
    require_same_dim(p.size(), n_actions * n_outcomes, "decision belief");
    double v = 0.0;
    for (std::size_t i = 0; i < n_actions; ++i)
        for (std::size_t o = 0; o < n_outcomes; ++o) {
            const std::size_t k = i * n_outcomes + o;
            v += row.report.decision[i] * p[k] * row.scores[k];
        }
    return v;
}

DecisionScoreSpec make_decision_score(const ConvexSpec& g, std::size_t n_actions,
                                      std::size_t n_outcomes,
                                      const std::vector<DecisionReport>& reports) {
    if (n_actions == 0 || n_outcomes == 0) throw InvalidInput("decision score needs actions and outcomes");
    DecisionScoreSpec spec;
    spec.n_actions = n_actions;
    spec.n_outcomes = n_outcomes;
    const std::size_t cells = n_actions * n_outcomes;
    for (std::size_t r = 0; r < reports.size(); ++r) {
        const auto& rep = reports[r];
        require_same_dim(rep.q.size(), cells, "decision report matrix");
        require_distribution(rep.decision, n_actions, "decision rule row");
        for (std::size_t i = 0; i < n_actions; ++i)
            require_distribution(std::span<const double>(rep.q).subspan(i * n_outcomes, n_outcomes),
                                 n_outcomes, "conditional distribution");

        const double gq = eval_convex(g, rep.q);
        const Vector grad = subgradient(g, rep.q);
        const double frob = dot(grad, rep.q);
        DecisionRow row{rep, Vector(cells, 0.0), std::vector<bool>(n_actions, false)};
        for (std::size_t i = 0; i < n_actions; ++i) {
            const double di = rep.decision[i];
            if (di <= 0.0) {
                for (std::size_t o = 0; o < n_outcomes; ++o)
                    if (grad[i * n_outcomes + o] != 0.0) throw UnreachableAction(r, i, o);
                row.unconstrained[i] = true;
                continue;
            }
            for (std::size_t o = 0; o < n_outcomes; ++o)
                row.scores[i * n_outcomes + o] = gq - frob + grad[i * n_outcomes + o] / di;
        }
        spec.rows.push_back(std::move(row));
    }
    return spec;
}

ScoreTable make_direct_score(const ConvexSpec& g, const TypeSpace& ts) {
    std::vector<ScoreRow> rows;
    rows.reserve(ts.size());
    for (const auto& r : ts) {
        Vector d = subgradient(g, r);
        const double c = eval_convex(g, r) - dot(d, r);
        rows.push_back({std::move(d), c});
    }
    return ScoreTable(std::move(rows));
}

CheckReport check_truthful(const ScoreTable& score, const TypeSpace& ts, double tol) {
    if (score.size() != ts.size())
        throw DimensionMismatch("score has " + std::to_string(score.size()) + " reports for " +
                                std::to_string(ts.size()) + " types");
    std::vector<std::size_t> identity(ts.size());
    std::iota(identity.begin(), identity.end(), 0);
    return check_score_pairs(score, ts, identity, std::numeric_limits<double>::infinity(), tol);
}

}  // namespace elicit
