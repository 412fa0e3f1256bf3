#include "elicit/property.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "elicit/core.hpp"
#include "elicit/errors.hpp"
#include "elicit/lp.hpp"

namespace elicit {

PowerDiagram::PowerDiagram(std::vector<Vector> sites, Vector weights)
    : sites_(std::move(sites)), weights_(std::move(weights)) {
    if (sites_.empty()) throw InvalidInput("power diagram needs at least one site");
    if (weights_.size() != sites_.size()) throw DimensionMismatch("one weight per site required");
    const std::size_t n = sites_.front().size();
    if (n == 0) throw InvalidInput("sites need dimension >= 1");
    for (const auto& s : sites_) require_same_dim(s.size(), n, "site");
    for (double w : weights_)
        if (!std::isfinite(w)) throw InvalidInput("weights must be finite");
    // TypeSpace enforces distinctness.
    (void)TypeSpace(sites_);
}

double PowerDiagram::power(std::size_t i, const Vector& t) const {
    return squared_distance(sites_[i], t) - weights_[i];
}

void LabeledSample::validate(std::size_t dim, std::optional<std::size_t> n_labels) const {
    if (labels.size() != points.size()) throw DimensionMismatch("one label per sample point required");
    for (const auto& p : points) require_same_dim(p.size(), dim, "sample point");
    if (n_labels)
        for (std::size_t l : labels)
            if (l >= *n_labels)
                throw InvalidInput("label " + std::to_string(l) + " exceeds site count");
}

Labeling power_cells(const PowerDiagram& diagram, const std::vector<Vector>& points, double tol) {
    Labeling out;
    out.labels.reserve(points.size());
    out.ties.reserve(points.size());
    Vector vals(diagram.size());
    for (const auto& t : points) {
        require_same_dim(t.size(), diagram.dim(), "query point");
        std::size_t best = 0;
        for (std::size_t j = 0; j < diagram.size(); ++j) {
            vals[j] = diagram.power(j, t);
            if (vals[j] < vals[best]) best = j;
        }
        bool tie = false;
        for (std::size_t j = 0; j < diagram.size() && !tie; ++j)
            tie = j != best && vals[j] - vals[best] <= tol;
        out.labels.push_back(best);
        out.ties.push_back(tie);
    }
    return out;
}

Labeling argmax_labels(const ScoreTable& score, const std::vector<Vector>& points, double tol) {
    Labeling out;
    for (const auto& t : points) {
        const auto [best, tie] = score.best_report(t, tol);
        out.labels.push_back(best);
        out.ties.push_back(tie);
    }
    return out;
}

ScoreTable score_from_diagram(const PowerDiagram& diagram) {
    std::vector<ScoreRow> rows;
    rows.reserve(diagram.size());
    for (std::size_t r = 0; r < diagram.size(); ++r) {
        const Vector& p = diagram.sites()[r];
        rows.push_back({scaled(p, 2.0), diagram.weights()[r] - squared_norm(p)});
    }
    return ScoreTable(std::move(rows));
}

namespace {

struct ConstraintSystem {
    lp::Matrix a;
    Vector b;
    std::vector<CellConstraint> tags;
};

// w_j - w_i <= |p_j - t|^2 - |p_i - t|^2 for a point t labeled i.
ConstraintSystem cell_constraints(const std::vector<Vector>& sites, const LabeledSample& sample) {
    ConstraintSystem sys;
    const std::size_t m = sites.size();
    for (std::size_t k = 0; k < sample.size(); ++k) {
        const std::size_t i = sample.labels[k];
        const double own = squared_distance(sites[i], sample.points[k]);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            Vector row(m, 0.0);
            row[j] = 1.0;
            row[i] = -1.0;
            sys.a.push_back(std::move(row));
            sys.b.push_back(squared_distance(sites[j], sample.points[k]) - own);
            sys.tags.push_back({k, j});
        }
    }
    return sys;
}

bool subsystem_feasible(const ConstraintSystem& sys, const std::vector<std::size_t>& rows, double tol) {
    lp::Matrix a;
    Vector b;
    for (std::size_t r : rows) {
        a.push_back(sys.a[r]);
        b.push_back(sys.b[r]);
    }
    return lp::phase_one(a, b, tol).feasible;
}

}  // namespace

WeightFit fit_weights(const std::vector<Vector>& sites, const LabeledSample& sample, double tol) {
    if (sites.empty()) throw InvalidInput("fit_weights needs at least one site");
    const std::size_t dim = sites.front().size();
    for (const auto& s : sites) require_same_dim(s.size(), dim, "site");
    sample.validate(dim, sites.size());

    const ConstraintSystem sys = cell_constraints(sites, sample);
    WeightFit out;
    // Constraints only involve weight differences, so w >= 0 loses nothing.
    const lp::Feasibility res = lp::phase_one(sys.a, sys.b, tol);
    if (res.feasible) {
        out.feasible = true;
        out.weights = res.x.empty() ? Vector(sites.size(), 0.0) : res.x;
        const double lo = *std::min_element(out.weights.begin(), out.weights.end());
        for (double& w : out.weights) w -= lo;
        return out;
    }

    // Start from the Farkas support and shrink it to an irreducible subsystem.
    const double ymax = *std::max_element(res.farkas.begin(), res.farkas.end());
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < res.farkas.size(); ++r)
        if (res.farkas[r] > 1e-9 * std::max(1.0, ymax)) keep.push_back(r);
    if (subsystem_feasible(sys, keep, tol)) {
        keep.resize(sys.tags.size());
        for (std::size_t r = 0; r < keep.size(); ++r) keep[r] = r;
    }
    for (std::size_t pos = 0; pos < keep.size();) {
        std::vector<std::size_t> trial = keep;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(pos));
        if (!subsystem_feasible(sys, trial, tol)) {
            keep = std::move(trial);
        } else {
            ++pos;
        }
    }
    for (std::size_t r : keep) out.witness.push_back(sys.tags[r]);
    return out;
}

CheckReport check_wmon_cells(const std::vector<Vector>& sites, const LabeledSample& sample,
                             double tol) {
    if (sites.empty()) throw InvalidInput("check_wmon_cells needs at least one site");
    const std::size_t dim = sites.front().size();
    for (const auto& s : sites) require_same_dim(s.size(), dim, "site");
    sample.validate(dim, sites.size());

    std::vector<Witness> ws;
    for (std::size_t a = 0; a < sample.size(); ++a) {
        for (std::size_t b = a + 1; b < sample.size(); ++b) {
            const std::size_t i = sample.labels[a];
            const std::size_t j = sample.labels[b];
            if (i == j) continue;
            const double s =
                dot(subtract(sites[i], sites[j]), subtract(sample.points[b], sample.points[a]));
            if (s > tol) ws.push_back({{a, b}, s, "violation"});
        }
    }
    return CheckReport::from_witnesses(std::move(ws));
}

PowerDiagram homothet_transform(const PowerDiagram& diagram, double alpha, const Vector& offset) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw NonPositiveScale("homothet scale must be positive");
    require_same_dim(offset.size(), diagram.dim(), "homothet offset");
    // Scores scale by alpha and shift by <2 offset, t>, which leaves every argmax unchanged.
    std::vector<Vector> sites;
    Vector weights;
    for (std::size_t r = 0; r < diagram.size(); ++r) {
        const Vector& p = diagram.sites()[r];
        Vector q = add(scaled(p, alpha), offset);
        weights.push_back(alpha * (diagram.weights()[r] - squared_norm(p)) + squared_norm(q));
        sites.push_back(std::move(q));
    }
    return PowerDiagram(std::move(sites), std::move(weights));
}

CheckReport check_level_set_convexity(const LabeledSample& sample, double eps) {
    if (sample.size() == 0) throw InvalidInput("level-set check needs a nonempty sample");
    sample.validate(sample.points.front().size());

    std::vector<Witness> ws;
    const auto& pts = sample.points;
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            if (sample.labels[a] != sample.labels[b]) continue;
            const Vector seg = subtract(pts[b], pts[a]);
            const double len2 = squared_norm(seg);
            if (len2 == 0.0) continue;
            for (std::size_t c = 0; c < pts.size(); ++c) {
                if (sample.labels[c] == sample.labels[a]) continue;
                const double lambda = dot(subtract(pts[c], pts[a]), seg) / len2;
                if (lambda <= 0.0 || lambda >= 1.0) continue;
                Vector foot = pts[a];
                for (std::size_t k = 0; k < foot.size(); ++k) foot[k] += lambda * seg[k];
                if (distance(foot, pts[c]) > eps) continue;
                const double depth = std::min(lambda, 1.0 - lambda) * std::sqrt(len2);
                ws.push_back({{a, b, c}, depth, "sandwich"});
            }
        }
    }
    return CheckReport::from_witnesses(std::move(ws));
}

PowerDiagram bregman_to_power(const ConvexSpec& g, const std::vector<Vector>& sites,
                              const TypeSpace& grid) {
    if (sites.empty()) throw InvalidInput("Bregman diagram needs at least one site");
    std::vector<Vector> centers;
    Vector weights;
    for (const auto& s : sites) {
        require_same_dim(s.size(), grid.dim(), "site vs grid");
        const Vector d = subgradient(g, s);
        weights.push_back(0.25 * squared_norm(d) - conjugate(g, d, grid));
        centers.push_back(scaled(d, 0.5));
    }
    return PowerDiagram(std::move(centers), std::move(weights));
}

}  // namespace elicit
