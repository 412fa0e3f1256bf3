#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "elicit/report.hpp"
#include "elicit/types.hpp"
#include "elicit/vec.hpp"

namespace elicit {

/// Sites p_i with weights w_i; cell i = { t : i in argmin_j |p_j - t|^2 - w_j }.
class PowerDiagram {
public:
    PowerDiagram(std::vector<Vector> sites, Vector weights);

    std::size_t size() const { return sites_.size(); }
    std::size_t dim() const { return sites_.front().size(); }
    const std::vector<Vector>& sites() const { return sites_; }
    const Vector& weights() const { return weights_; }

    /// |p_i - t|^2 - w_i.
    double power(std::size_t i, const Vector& t) const;

private:
    std::vector<Vector> sites_;
    Vector weights_;
};

/// Points tagged with the report (site) that is correct for them.
struct LabeledSample {
    std::vector<Vector> points;
    std::vector<std::size_t> labels;

    std::size_t size() const { return points.size(); }
    /// Shapes agree, dimensions match `dim`, labels below `n_labels` (if given).
    void validate(std::size_t dim, std::optional<std::size_t> n_labels = std::nullopt) const;
};

struct Labeling {
    std::vector<std::size_t> labels;
    std::vector<bool> ties;
};

/// Lowest-index minimizer of the power distance per point, with a tie flag
/// when another site is within `tol`.
Labeling power_cells(const PowerDiagram& diagram, const std::vector<Vector>& points,
                     double tol = kTol);

/// Lowest-index argmax report per point, same tie convention as power_cells.
Labeling argmax_labels(const ScoreTable& score, const std::vector<Vector>& points,
                       double tol = kTol);

/// A(r, t) = <2 p_r, t> + w_r - |p_r|^2, whose argmax cells are the power cells.
ScoreTable score_from_diagram(const PowerDiagram& diagram);

/// Sample point `sample` must prefer its own label over site `site`.
struct CellConstraint {
    std::size_t sample = 0;
    std::size_t site = 0;

    friend bool operator==(const CellConstraint&, const CellConstraint&) = default;
};

struct WeightFit {
    bool feasible = false;
    Vector weights;                        // min weight normalized to 0
    std::vector<CellConstraint> witness;   // irreducible infeasible subsystem
};

/// Weights making every sample point land in its labeled cell, with the
/// sites held fixed. Infeasibility is a certified answer: the witness is an
/// irreducible set of cell constraints with no common solution.
WeightFit fit_weights(const std::vector<Vector>& sites, const LabeledSample& sample,
                      double tol = kTol);

/// For sample points t (label i) and t' (label j != i), requires
/// <p_i - p_j, t' - t> <= tol. Witness (a, b) with that inner product as slack.
CheckReport check_wmon_cells(const std::vector<Vector>& sites, const LabeledSample& sample,
                             double tol = kTol);

/// Sites alpha p_r + offset with weights chosen so that every cell is unchanged.
PowerDiagram homothet_transform(const PowerDiagram& diagram, double alpha, const Vector& offset);

/// Default distance within which a point counts as lying on a segment.
inline constexpr double kSegmentEps = 1e-6;

/// Necessary condition for convex level sets: no point lies strictly inside a
/// segment (within `eps`) joining two points of another common label.
/// Witness (a, b, c): a and b share a label, c is sandwiched between them.
CheckReport check_level_set_convexity(const LabeledSample& sample, double eps = kSegmentEps);

/// Power diagram equal to the Bregman Voronoi diagram of G with the given
/// sites: p_j = dG(t_j) / 2, w_j = |dG(t_j)|^2 / 4 - G*(dG(t_j)), the
/// conjugate taken over `grid`.
PowerDiagram bregman_to_power(const ConvexSpec& g, const std::vector<Vector>& sites,
                              const TypeSpace& grid);

}  // namespace elicit
