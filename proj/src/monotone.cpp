#include "elicit/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "elicit/errors.hpp"

namespace elicit {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::vector<Vector> weight_matrix(const TypeSpace& ts, const LinearFamily& fam) {
    fam.require_aligned(ts);
    const std::size_t n = ts.size();
    std::vector<Vector> w(n, Vector(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) w[i][j] = dot(fam[i], subtract(ts[j], ts[i]));
    return w;
}

double cycle_weight(const std::vector<Vector>& w, const std::vector<std::size_t>& cyc) {
    double s = 0.0;
    for (std::size_t k = 0; k < cyc.size(); ++k) s += w[cyc[k]][cyc[(k + 1) % cyc.size()]];
    return s;
}

/// Every cycle of the functional graph v -> pred[v], returned in forward
/// edge order (pred[v] = u encodes the edge u -> v).
std::vector<std::vector<std::size_t>> predecessor_cycles(const std::vector<std::size_t>& pred) {
    const std::size_t n = pred.size();
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on current walk, 2 done
    std::vector<std::vector<std::size_t>> cycles;
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> walk;
        std::size_t v = s;
        while (v != kNone && state[v] == 0) {
            state[v] = 1;
            walk.push_back(v);
            v = pred[v];
        }
        if (v != kNone && state[v] == 1) {
            std::vector<std::size_t> cyc;
            std::size_t x = v;
            do {
                cyc.push_back(x);
                x = pred[x];
            } while (x != v);
            std::reverse(cyc.begin(), cyc.end());
            cycles.push_back(std::move(cyc));
        }
        for (std::size_t u : walk) state[u] = 2;
    }
    return cycles;
}

/// Single-source longest paths over the complete graph with matrix `w`
/// (w[i][j] is the weight of i -> j), |T|-1 rounds.
Vector longest_paths(const std::vector<Vector>& w, std::size_t source) {
    const std::size_t n = w.size();
    Vector dist(n, -std::numeric_limits<double>::infinity());
    dist[source] = 0.0;
    for (std::size_t round = 0; round + 1 < n; ++round) {
        bool changed = false;
        for (std::size_t u = 0; u < n; ++u) {
            if (!std::isfinite(dist[u])) continue;
            for (std::size_t v = 0; v < n; ++v) {
                if (u == v) continue;
                const double cand = dist[u] + w[u][v];
                if (cand > dist[v]) {
                    dist[v] = cand;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    return dist;
}

}  // namespace

double edge_weight(const TypeSpace& ts, const LinearFamily& fam, std::size_t from, std::size_t to) {
    fam.require_aligned(ts);
    return dot(fam.entries().at(from), subtract(ts.points().at(to), ts.points().at(from)));
}

std::optional<PositiveCycle> find_positive_cycle(const TypeSpace& ts, const LinearFamily& fam,
                                                 double tol) {
    const auto w = weight_matrix(ts, fam);
    const std::size_t n = ts.size();
    if (n < 2) return std::nullopt;
    const double shift = tol / static_cast<double>(n);

    Vector dist(n, 0.0);
    std::vector<std::size_t> pred(n, kNone);
    bool changed = true;
    for (std::size_t round = 0; round < n && changed; ++round) {
        changed = false;
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
                if (u == v) continue;
                const double cand = dist[u] + (w[u][v] - shift);
                if (cand > dist[v]) {
                    dist[v] = cand;
                    pred[v] = u;
                    changed = true;
                }
            }
        }
    }
    if (!changed) return std::nullopt;

    std::optional<PositiveCycle> best;
    for (auto& cyc : predecessor_cycles(pred)) {
        const double wt = cycle_weight(w, cyc);
        if (!best || wt > best->weight) best = PositiveCycle{std::move(cyc), wt};
    }
    // A detected cycle whose true weight sits inside the tolerance band is
    // numerically zero.
    if (best && best->weight > tol) return best;
    return std::nullopt;
}

Vector longest_paths_from(const TypeSpace& ts, const LinearFamily& fam, std::size_t source) {
    if (source >= ts.size()) throw InvalidInput("source index out of range");
    return longest_paths(weight_matrix(ts, fam), source);
}

Vector longest_paths_to(const TypeSpace& ts, const LinearFamily& fam, std::size_t target) {
    if (target >= ts.size()) throw InvalidInput("target index out of range");
    auto w = weight_matrix(ts, fam);
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) std::swap(w[i][j], w[j][i]);
    return longest_paths(w, target);
}

CheckReport check_wmon(const TypeSpace& ts, const LinearFamily& fam, double tol) {
    const auto w = weight_matrix(ts, fam);
    std::vector<Witness> ws;
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            const double s = w[i][j] + w[j][i];
            if (s > tol) ws.push_back({{i, j}, s, "violation"});
        }
    return CheckReport::from_witnesses(std::move(ws));
}

CheckReport check_cmon(const TypeSpace& ts, const LinearFamily& fam, double tol) {
    std::vector<Witness> ws;
    if (auto cyc = find_positive_cycle(ts, fam, tol))
        ws.push_back({std::move(cyc->vertices), cyc->weight, "cycle"});
    return CheckReport::from_witnesses(std::move(ws));
}

namespace {

double edge_integral(const VectorField& field, const Vector& from, const Vector& to,
                     std::size_t nodes) {
    const Vector dir = subtract(to, from);
    const double h = 1.0 / static_cast<double>(nodes - 1);
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes; ++k) {
        const double s = static_cast<double>(k) * h;
        Vector x(from.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = from[i] + s * dir[i];
        Vector f;
        try {
            f = field(x);
        } catch (const std::exception& e) {
            throw EvaluationError(std::string("vector field failed: ") + e.what());
        }
        if (f.size() != dir.size()) throw EvaluationError("vector field returned wrong dimension");
        const double wgt = (k == 0 || k + 1 == nodes) ? 0.5 : 1.0;
        sum += wgt * dot(f, dir);
    }
    return sum * h;
}

double loop_integral(const VectorField& field, const std::array<Vector, 3>& tri, std::size_t nodes) {
    return edge_integral(field, tri[0], tri[1], nodes) + edge_integral(field, tri[1], tri[2], nodes) +
           edge_integral(field, tri[2], tri[0], nodes);
}

}  // namespace

CheckReport check_path_independence(const VectorField& field, const std::array<Vector, 3>& triangle,
                                    std::size_t samples, double tol) {
    if (samples < 2) throw InvalidInput("path independence needs at least 2 samples per edge");
    require_same_dim(triangle[1].size(), triangle[0].size(), "triangle vertex");
    require_same_dim(triangle[2].size(), triangle[0].size(), "triangle vertex");
    if (triangle[0].empty()) throw DimensionMismatch("triangle vertices must be nonempty");

    const double fine = loop_integral(field, triangle, samples);
    double allowance = 0.0;
    const std::size_t coarse_nodes = std::max<std::size_t>(2, (samples + 1) / 2);
    if (coarse_nodes < samples) {
        const double coarse = loop_integral(field, triangle, coarse_nodes);
        const double hf = 1.0 / static_cast<double>(samples - 1);
        const double hc = 1.0 / static_cast<double>(coarse_nodes - 1);
        allowance = std::abs(fine - coarse) * hf * hf / (hc * hc - hf * hf);
    }

    std::vector<Witness> ws;
    if (std::abs(fine) > tol + allowance) ws.push_back({{0, 1, 2}, std::abs(fine), "circulation"});
    CheckReport report = CheckReport::from_witnesses(std::move(ws));
    report.metrics["circulation"] = fine;
    report.metrics["allowance"] = allowance;
    return report;
}

CheckReport check_local_truthful(const ScoreTable& score, const TypeSpace& ts,
                                 std::span<const std::size_t> report_of, double radius,
                                 double tol) {
    if (!(radius > 0.0)) throw InvalidInput("radius must be positive");
    CheckReport local = check_score_pairs(score, ts, report_of, radius, tol);
    const CheckReport global = check_score_pairs(score, ts, report_of,
                                                 std::numeric_limits<double>::infinity(), tol);
    local.agrees_with_global = local.passed == global.passed;
    local.metrics["global_violations"] = static_cast<double>(global.witnesses.size());
    return local;
}

}  // namespace elicit
