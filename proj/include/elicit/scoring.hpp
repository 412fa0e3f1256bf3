#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "elicit/report.hpp"
#include "elicit/types.hpp"
#include "elicit/vec.hpp"

namespace elicit {

struct OutcomeRow {
    Vector report;                       // distribution over outcomes
    std::vector<ExtendedReal> payoffs;   // S(report, outcome)
};

/// Scoring rule over a finite report set: S(p, w) per report p and outcome w.
/// -infinity is only allowed where the report puts zero probability.
class OutcomeScoreTable {
public:
    OutcomeScoreTable(std::size_t n_outcomes, std::vector<OutcomeRow> rows);

    std::size_t n_outcomes() const { return n_outcomes_; }
    std::size_t size() const { return rows_.size(); }
    const OutcomeRow& row(std::size_t i) const { return rows_[i]; }
    const std::vector<OutcomeRow>& rows() const { return rows_; }

    /// Index of the row whose report equals `p` coordinatewise within `tol`.
    std::optional<std::size_t> find_report(std::span<const double> p, double tol = 1e-12) const;

private:
    std::size_t n_outcomes_;
    std::vector<OutcomeRow> rows_;
};

/// S(p, w) = G(p) + d_p[w] - <d_p, p> with d_p = subgradient(G, p). Under
/// negative entropy, boundary reports use the limit S(p, w) = ln p(w).
OutcomeScoreTable make_scoring_rule(const ConvexSpec& g, const std::vector<Vector>& reports);

/// sum_w belief[w] * S(report, w) with 0 * (-inf) = 0.
ExtendedReal expected_score(const OutcomeScoreTable& table, std::size_t report_idx,
                            std::span<const double> belief);

/// max over rows of expected_score: the value function at `belief`.
ExtendedReal score_value(const OutcomeScoreTable& table, std::span<const double> belief);

/// Properness: for every belief that appears as a report row, no other row
/// earns more in expectation (witness (belief, report), kind "violation").
/// In strict mode a distinct row within `tol` of the truthful value is a
/// witness of kind "tie" whose slack is the (non-positive) gain.
/// Beliefs with no matching row are counted in metric "unmatched_beliefs".
CheckReport check_proper(const OutcomeScoreTable& table, const std::vector<Vector>& beliefs,
                         bool strict = false, double tol = kTol);

/// Adds rows for `extra_reports` by linear extension: each new report takes
/// the payoffs of the existing row that is best for it in expectation (a
/// supporting affine piece of the value function there).
OutcomeScoreTable extend_to_hull(const OutcomeScoreTable& table,
                                 const std::vector<Vector>& extra_reports);

/// Informed experts (beliefs in `informed`) earn at least delta_informed and
/// the uninformed belief earns at most delta_uninformed, both measured by the
/// value function. Witness kinds "informed" (index into `informed`) and
/// "uninformed" (index informed.size()).
CheckReport check_expert_separation(const OutcomeScoreTable& table,
                                    const std::vector<Vector>& informed,
                                    std::span<const double> uninformed, double delta_informed,
                                    double delta_uninformed, double tol = kTol);

/// One report of a decision market: a row-major n_actions x n_outcomes matrix
/// of conditional distributions and the decision rule's action distribution.
struct DecisionReport {
    Vector q;
    Vector decision;
};

struct DecisionRow {
    DecisionReport report;
    Vector scores;                    // S_{i,o}(Q), row-major
    std::vector<bool> unconstrained;  // per action: D_i(Q) = 0, payoff is a free placeholder
};

struct DecisionScoreSpec {
    std::size_t n_actions = 0;
    std::size_t n_outcomes = 0;
    std::vector<DecisionRow> rows;

    /// V(Q, P) = sum_{i,o} D_i(Q) P_{i,o} S_{i,o}(Q).
    double expected_value(std::size_t report_idx, std::span<const double> p) const;
};

/// S_{i,o}(Q) = G(Q) - G_Q : Q + G_{Q,i,o} / D_i(Q) where D_i(Q) > 0, and 0
/// flagged unconstrained otherwise. G takes the flattened matrix.
DecisionScoreSpec make_decision_score(const ConvexSpec& g, std::size_t n_actions,
                                      std::size_t n_outcomes,
                                      const std::vector<DecisionReport>& reports);

/// Direct-revelation score on `ts`: linear part d_r = subgradient(G, r) and
/// constant G(r) - <d_r, r>.
ScoreTable make_direct_score(const ConvexSpec& g, const TypeSpace& ts);

/// Exhaustive pairwise truthfulness with report r belonging to type r.
CheckReport check_truthful(const ScoreTable& score, const TypeSpace& ts, double tol = kTol);

}  // namespace elicit
