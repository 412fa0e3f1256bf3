#include "elicit/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "elicit/errors.hpp"

namespace elicit {

TypeSpace::TypeSpace(std::vector<Vector> points) : points_(std::move(points)) {
    if (points_.empty()) throw InvalidInput("type space must be nonempty");
    dim_ = points_.front().size();
    if (dim_ == 0) throw InvalidInput("type dimension must be at least 1");
    for (const auto& p : points_) require_same_dim(p.size(), dim_, "type space point");

    std::vector<std::size_t> order(points_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [this](std::size_t a, std::size_t b) { return points_[a] < points_[b]; });
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (points_[order[k - 1]] == points_[order[k]]) {
            throw InvalidInput("type space points " + std::to_string(order[k - 1]) + " and " +
                               std::to_string(order[k]) + " coincide");
        }
    }
}

double TypeSpace::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            best = std::max(best, distance(points_[i], points_[j]));
    return best;
}

TypeSpace uniform_grid_1d(double lo, double hi, std::size_t count) {
    if (count == 0) throw InvalidInput("grid needs at least one point");
    std::vector<Vector> pts;
    pts.reserve(count);
    if (count == 1) {
        pts.push_back({lo});
    } else {
        const double step = (hi - lo) / static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i) pts.push_back({lo + step * static_cast<double>(i)});
    }
    return TypeSpace(std::move(pts));
}

TypeSpace box_lattice(double lo, double hi, std::size_t count, std::size_t dim) {
    if (count == 0 || dim == 0) throw InvalidInput("lattice needs count >= 1 and dim >= 1");
    const double step = count > 1 ? (hi - lo) / static_cast<double>(count - 1) : 0.0;
    std::vector<Vector> pts;
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
        Vector p(dim);
        for (std::size_t k = 0; k < dim; ++k) p[k] = lo + step * static_cast<double>(idx[k]);
        pts.push_back(std::move(p));
        std::size_t k = dim;
        while (k > 0) {
            --k;
            if (++idx[k] < count) break;
            idx[k] = 0;
            if (k == 0) return TypeSpace(std::move(pts));
        }
    }
}

namespace {

void compose(std::size_t remaining, std::size_t parts, std::size_t k, std::vector<std::size_t>& cur,
             std::vector<Vector>& out) {
    if (parts == 1) {
        cur.push_back(remaining);
        Vector p(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i)
            p[i] = static_cast<double>(cur[i]) / static_cast<double>(k);
        out.push_back(std::move(p));
        cur.pop_back();
        return;
    }
    for (std::size_t a = remaining + 1; a-- > 0;) {
        cur.push_back(a);
        compose(remaining - a, parts - 1, k, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Vector> simplex_lattice(std::size_t n_outcomes, std::size_t denominator) {
    if (n_outcomes == 0 || denominator == 0)
        throw InvalidInput("simplex lattice needs n_outcomes >= 1 and denominator >= 1");
    std::vector<Vector> out;
    std::vector<std::size_t> cur;
    compose(denominator, n_outcomes, denominator, cur, out);
    return out;
}

LinearFamily::LinearFamily(std::vector<Vector> entries) : entries_(std::move(entries)) {
    if (!entries_.empty()) {
        dim_ = entries_.front().size();
        for (const auto& e : entries_) require_same_dim(e.size(), dim_, "linear family entry");
    }
}

void LinearFamily::require_aligned(const TypeSpace& ts) const {
    if (entries_.size() != ts.size()) {
        throw DimensionMismatch("family has " + std::to_string(entries_.size()) +
                                " entries for " + std::to_string(ts.size()) + " types");
    }
    require_same_dim(dim_, ts.dim(), "family vs type space");
}

ConvexSpec ConvexSpec::max_affine(std::vector<AffinePiece> pieces) {
    if (pieces.empty()) throw InvalidInput("max-affine function needs at least one piece");
    const std::size_t n = pieces.front().slope.size();
    if (n == 0) throw InvalidInput("max-affine slopes must have dimension >= 1");
    for (const auto& p : pieces) {
        require_same_dim(p.slope.size(), n, "max-affine piece");
        if (!std::isfinite(p.intercept)) throw InvalidInput("max-affine intercepts must be finite");
        for (double a : p.slope)
            if (!std::isfinite(a)) throw InvalidInput("max-affine slopes must be finite");
    }
    return ConvexSpec(MaxAffine{std::move(pieces)});
}

ConvexSpec ConvexSpec::squared_norm() { return ConvexSpec(AnalyticKind::SquaredNorm); }

ConvexSpec ConvexSpec::neg_entropy() {
    ConvexSpec g(AnalyticKind::NegEntropy);
    g.hint_.simplex = true;
    return g;
}

std::optional<AnalyticKind> ConvexSpec::analytic() const {
    if (const auto* k = std::get_if<AnalyticKind>(&repr_)) return *k;
    return std::nullopt;
}

std::optional<std::size_t> ConvexSpec::fixed_dim() const {
    if (const auto* m = as_max_affine()) return m->pieces.front().slope.size();
    return std::nullopt;
}

ConvexSpec ConvexSpec::with_box(Vector lower, Vector upper) const {
    require_same_dim(lower.size(), upper.size(), "domain box");
    if (auto n = fixed_dim()) require_same_dim(lower.size(), *n, "domain box vs pieces");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (lower[i] > upper[i]) throw InvalidInput("domain box has lower > upper");
    ConvexSpec g = *this;
    g.hint_.box = std::make_pair(std::move(lower), std::move(upper));
    return g;
}

ConvexSpec tangent_envelope(const TypeSpace& at, std::span<const double> values,
                            const LinearFamily& grads) {
    grads.require_aligned(at);
    if (values.size() != at.size()) throw DimensionMismatch("one value per tangent point required");
    std::vector<AffinePiece> pieces;
    pieces.reserve(at.size());
    for (std::size_t k = 0; k < at.size(); ++k)
        pieces.push_back({grads[k], values[k] - dot(grads[k], at[k])});
    return ConvexSpec::max_affine(std::move(pieces));
}

ExtendedReal::ExtendedReal(double v) : v_(v) {
    if (std::isnan(v)) throw DomainError("NaN is not an extended real");
    if (v == std::numeric_limits<double>::infinity()) throw DomainError("+infinity is not allowed");
}

ExtendedReal ExtendedReal::neg_infinity() { return {-std::numeric_limits<double>::infinity()}; }

bool ExtendedReal::is_neg_infinity() const { return v_ == -std::numeric_limits<double>::infinity(); }

ExtendedReal ExtendedReal::times(double k) const {
    if (!is_neg_infinity()) return {k * v_};
    if (k == 0.0) return {0.0};
    if (k < 0.0) throw DomainError("negative multiple of -infinity");
    return neg_infinity();
}

ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.is_neg_infinity() || b.is_neg_infinity()) return ExtendedReal::neg_infinity();
    return {a.v_ + b.v_};
}

ScoreTable::ScoreTable(std::vector<ScoreRow> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw InvalidInput("score table needs at least one report");
    dim_ = rows_.front().linear.size();
    if (dim_ == 0) throw InvalidInput("score rows need dimension >= 1");
    for (const auto& r : rows_) {
        require_same_dim(r.linear.size(), dim_, "score row");
        for (double a : r.linear)
            if (!std::isfinite(a)) throw InvalidInput("score linear parts must be finite");
    }
}

ExtendedReal ScoreTable::value(std::size_t report, std::span<const double> t) const {
    const ScoreRow& r = rows_.at(report);
    return r.constant + ExtendedReal(dot(r.linear, t));
}

std::pair<std::size_t, bool> ScoreTable::best_report(std::span<const double> t, double tol) const {
    std::vector<ExtendedReal> vals;
    vals.reserve(rows_.size());
    std::size_t best = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        vals.push_back(value(r, t));
        if (vals[r] > vals[best]) best = r;
    }
    bool tie = false;
    if (vals[best].is_finite()) {
        for (std::size_t r = 0; r < rows_.size() && !tie; ++r)
            if (r != best && vals[r].is_finite() && vals[best].value() - vals[r].value() <= tol)
                tie = true;
    }
    return {best, tie};
}

void ScoreTable::require_regular(const TypeSpace& ts) const {
    require_same_dim(ts.dim(), dim_, "score vs type space");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (value(best_report(ts[i]).first, ts[i]).is_neg_infinity())
            throw DomainError("score is -infinity for every report at type " + std::to_string(i));
    }
}

CheckReport check_score_pairs(const ScoreTable& score, const TypeSpace& ts,
                              std::span<const std::size_t> report_of, double radius,
                              double tol) {
    require_same_dim(ts.dim(), score.dim(), "score vs type space");
    if (report_of.size() != ts.size())
        throw DimensionMismatch("report map must cover every type");
    for (std::size_t r : report_of)
        if (r >= score.size()) throw InvalidInput("report index out of range");

    std::vector<Witness> ws;
    double min_slack = std::numeric_limits<double>::infinity();
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const ExtendedReal truth = score.value(report_of[i], ts[i]);
        if (truth.is_neg_infinity())
            throw DomainError("truthful score is -infinity at type " + std::to_string(i));
        for (std::size_t j = 0; j < ts.size(); ++j) {
            if (i == j || distance(ts[i], ts[j]) > radius) continue;
            ++pairs;
            const ExtendedReal dev = score.value(report_of[j], ts[i]);
            if (dev.is_neg_infinity()) continue;
            const double margin = truth.value() - dev.value();
            min_slack = std::min(min_slack, margin);
            if (-margin > tol) ws.push_back({{i, j}, -margin, "violation"});
        }
    }
    CheckReport report = CheckReport::from_witnesses(std::move(ws));
    report.metrics["pairs_checked"] = static_cast<double>(pairs);
    if (pairs > 0 && std::isfinite(min_slack)) report.metrics["min_slack"] = min_slack;
    return report;
}

}  // namespace elicit
