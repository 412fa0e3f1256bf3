#include "elicit/core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "elicit/errors.hpp"

namespace elicit {

namespace {

void require_domain(const ConvexSpec& g, std::span<const double> t) {
    if (t.empty()) throw DimensionMismatch("empty argument");
    if (auto n = g.fixed_dim()) require_same_dim(t.size(), *n, "convex function argument");
    for (double x : t)
        if (!std::isfinite(x)) throw DomainError("argument must be finite");
    if (g.hint().simplex && !on_simplex(t, kSimplexTol))
        throw DomainError("argument is off the probability simplex");
    if (const auto& box = g.hint().box) {
        require_same_dim(t.size(), box->first.size(), "argument vs domain box");
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] < box->first[i] - kTol || t[i] > box->second[i] + kTol)
                throw DomainError("argument outside the domain box");
    }
}

std::size_t active_piece(const MaxAffine& m, std::span<const double> t) {
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m.pieces.size(); ++k) {
        const double v = dot(m.pieces[k].slope, t) + m.pieces[k].intercept;
        if (v > best_val) {
            best_val = v;
            best = k;
        }
    }
    return best;
}

}  // namespace

double eval_convex(const ConvexSpec& g, std::span<const double> t) {
    require_domain(g, t);
    if (const auto* m = g.as_max_affine()) {
        const auto& p = m->pieces[active_piece(*m, t)];
        return dot(p.slope, t) + p.intercept;
    }
    switch (*g.analytic()) {
        case AnalyticKind::SquaredNorm:
            return squared_norm(t);
        case AnalyticKind::NegEntropy: {
            double s = 0.0;
            for (double x : t)
                if (x > 0.0) s += x * std::log(x);  // 0 ln 0 = 0
            return s;
        }
    }
    throw std::logic_error("unhandled convex representation");
}

Vector subgradient(const ConvexSpec& g, std::span<const double> t) {
    require_domain(g, t);
    if (const auto* m = g.as_max_affine()) return m->pieces[active_piece(*m, t)].slope;
    switch (*g.analytic()) {
        case AnalyticKind::SquaredNorm:
            return scaled(t, 2.0);
        case AnalyticKind::NegEntropy: {
            Vector d(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i] < kInteriorFloor)
                    throw DomainError("negative entropy has no subgradient on the simplex boundary");
                d[i] = 1.0 + std::log(t[i]);
            }
            return d;
        }
    }
    throw std::logic_error("unhandled convex representation");
}

ConjugatePoint conjugate_point(const ConvexSpec& g, std::span<const double> d,
                               const TypeSpace& grid) {
    require_same_dim(d.size(), grid.dim(), "dual vs grid");
    ConjugatePoint best{-std::numeric_limits<double>::infinity(), {}};
    auto consider = [&](std::span<const double> v) {
        const double val = dot(d, v) - eval_convex(g, v);
        if (val > best.value) best = {val, Vector(v.begin(), v.end())};
    };
    for (const auto& v : grid) consider(v);

    const auto* m = g.as_max_affine();
    if (m != nullptr && grid.dim() == 1) {
        const auto& ps = m->pieces;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                const double da = ps[i].slope[0] - ps[j].slope[0];
                if (da == 0.0) continue;
                const double x = (ps[j].intercept - ps[i].intercept) / da;
                if (!std::isfinite(x)) continue;
                const double v[1] = {x};
                // Boxed domains skip breakpoints that fall outside.
                if (const auto& box = g.hint().box)
                    if (x < box->first[0] || x > box->second[0]) continue;
                consider(v);
            }
        }
    }
    return best;
}

double conjugate(const ConvexSpec& g, std::span<const double> d, const TypeSpace& grid) {
    return conjugate_point(g, d, grid).value;
}

CheckReport check_subgradient_selection(const ConvexSpec& g, const LinearFamily& fam,
                                        const TypeSpace& ts, double tol) {
    fam.require_aligned(ts);
    Vector values(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) values[i] = eval_convex(g, ts[i]);

    std::vector<Witness> ws;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = 0; j < ts.size(); ++j) {
            if (i == j) continue;
            const double support = values[i] + dot(fam[i], subtract(ts[j], ts[i]));
            const double excess = support - values[j];
            if (excess > tol) ws.push_back({{i, j}, excess, "violation"});
        }
    }
    return CheckReport::from_witnesses(std::move(ws));
}

double bregman_divergence(const ConvexSpec& g, std::span<const double> t,
                          std::span<const double> t_report) {
    const Vector d = subgradient(g, t_report);
    return eval_convex(g, t) - eval_convex(g, t_report) - dot(subtract(t, t_report), d);
}

LinearFamily subgradient_family(const ConvexSpec& g, const TypeSpace& ts) {
    std::vector<Vector> entries;
    entries.reserve(ts.size());
    for (const auto& t : ts) entries.push_back(subgradient(g, t));
    return LinearFamily(std::move(entries));
}

}  // namespace elicit
