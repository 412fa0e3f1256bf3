#include <gtest/gtest.h>

#include <cmath>

#include "elicit/core.hpp"
#include "elicit/errors.hpp"
#include "elicit/lp.hpp"
#include "elicit/property.hpp"
#include "support/oracles.hpp"

using namespace elicit;

namespace {

PowerDiagram random_diagram(oracle::Rng& rng, std::size_t sites, std::size_t n) {
    return PowerDiagram(oracle::random_points(rng, sites, n, -1, 1), oracle::random_vec(rng, sites, -0.5, 0.5));
}

}  // namespace

TEST(PhaseOne, FeasibleSystemReturnsAPoint) {
    const lp::Matrix a{{1.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const Vector b{4.0, -1.0, -2.0};  // x >= 1, y >= 2, x + y <= 4
    const auto res = lp::phase_one(a, b);
    ASSERT_TRUE(res.feasible);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LE(dot(a[i], res.x), b[i] + 1e-9);
    for (double x : res.x) EXPECT_GE(x, -1e-12);
}

TEST(PhaseOne, InfeasibleSystemHasFarkasCertificate) {
    const lp::Matrix a{{1.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const Vector b{2.0, -1.5, -1.0};  // x >= 1.5, y >= 1, x + y <= 2
    const auto res = lp::phase_one(a, b);
    ASSERT_FALSE(res.feasible);
    ASSERT_EQ(res.farkas.size(), a.size());
    Vector ya(2, 0.0);
    double yb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_GE(res.farkas[i], 0.0);
        for (std::size_t j = 0; j < 2; ++j) ya[j] += res.farkas[i] * a[i][j];
        yb += res.farkas[i] * b[i];
    }
    for (double v : ya) EXPECT_GE(v, -1e-9);
    EXPECT_LT(yb, 0.0);
}

TEST(PhaseOne, RandomSystemsAgreeWithWitnessPoints) {
    // Systems built around a known nonnegative point are feasible; adding a
    // contradicting pair makes them infeasible.
    oracle::Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const Vector x0 = oracle::random_vec(rng, n, 0, 2);
        lp::Matrix a;
        Vector b;
        for (std::size_t i = 0; i < 3 * n; ++i) {
            a.push_back(oracle::random_vec(rng, n, -1, 1));
            b.push_back(dot(a.back(), x0) + oracle::uniform(rng, 0, 0.5));
        }
        EXPECT_TRUE(lp::phase_one(a, b).feasible);
        Vector e(n, 0.0);
        e[0] = 1.0;
        a.push_back(e);
        b.push_back(-0.5);  // x_0 <= -0.5 contradicts x >= 0
        EXPECT_FALSE(lp::phase_one(a, b).feasible);
    }
}

TEST(PowerCells, Examples) {
    const PowerDiagram d({{0.0, 0.0}, {1.0, 1.0}}, {0.0, 0.0});
    const Labeling l = power_cells(d, {{0.4, 0.4}, {0.5, 0.5}});
    EXPECT_EQ(l.labels, (std::vector<std::size_t>{0, 0}));
    EXPECT_EQ(l.ties, (std::vector<bool>{false, true}));

    const PowerDiagram d1({{0.0}, {1.0}}, {0.0, 2.0});
    EXPECT_EQ(power_cells(d1, {{0.0}}).labels[0], 1u);
    EXPECT_TRUE(power_cells(d1, {{-0.5}}).ties[0]);
    EXPECT_EQ(power_cells(d1, {{-0.6}}).labels[0], 0u);
    EXPECT_THROW(power_cells(d1, {{0.0, 1.0}}), DimensionMismatch);
}

TEST(PowerDiagram, RejectsMalformedInput) {
    EXPECT_THROW(PowerDiagram({}, {}), InvalidInput);
    EXPECT_THROW(PowerDiagram({{0.0}, {0.0}}, {0.0, 1.0}), InvalidInput);
    EXPECT_THROW(PowerDiagram({{0.0}, {1.0}}, {0.0}), DimensionMismatch);
    EXPECT_THROW(PowerDiagram({{0.0}, {1.0, 2.0}}, {0.0, 0.0}), DimensionMismatch);
}

TEST(ScoreFromDiagram, Examples) {
    const PowerDiagram d({{0.0}, {1.0}}, {0.0, 0.0});
    const ScoreTable s = score_from_diagram(d);
    EXPECT_DOUBLE_EQ(s.value(0, Vector{0.4}).value(), 0.0);
    EXPECT_DOUBLE_EQ(s.value(1, Vector{0.4}).value(), -0.2);
    EXPECT_EQ(s.best_report(Vector{0.4}).first, 0u);

    const PowerDiagram one({{0.3, 0.2}}, {1.0});
    const ScoreTable s1 = score_from_diagram(one);
    EXPECT_EQ(argmax_labels(s1, {{5.0, 5.0}, {-1.0, 0.0}}).labels, (std::vector<std::size_t>{0, 0}));
}

TEST(ScoreFromDiagram, ArgmaxMatchesPowerCells) {
    oracle::Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = random_diagram(rng, 2 + trial % 7, 1 + trial % 3);
        const auto pts = oracle::random_points(rng, 200, d.dim(), -1.5, 1.5);
        const auto a = power_cells(d, pts);
        const auto b = argmax_labels(score_from_diagram(d), pts);
        for (std::size_t k = 0; k < pts.size(); ++k)
            if (!a.ties[k] && !b.ties[k]) EXPECT_EQ(a.labels[k], b.labels[k]);
    }
}

TEST(FitWeights, Examples) {
    const std::vector<Vector> sites{{0.0}, {1.0}};
    const WeightFit ok = fit_weights(sites, {{{0.0}, {1.0}}, {0, 1}});
    ASSERT_TRUE(ok.feasible);
    EXPECT_DOUBLE_EQ(*std::min_element(ok.weights.begin(), ok.weights.end()), 0.0);
    const PowerDiagram fitted(sites, ok.weights);
    EXPECT_EQ(power_cells(fitted, {{0.0}, {1.0}}).labels, (std::vector<std::size_t>{0, 1}));

    const WeightFit bad = fit_weights(sites, {{{0.0}, {2.0}}, {1, 0}});
    EXPECT_FALSE(bad.feasible);
    EXPECT_EQ(bad.witness, (std::vector<CellConstraint>{{0, 0}, {1, 1}}));

    const WeightFit empty = fit_weights(sites, {});
    ASSERT_TRUE(empty.feasible);
    EXPECT_EQ(empty.weights, (Vector{0.0, 0.0}));

    EXPECT_THROW(fit_weights(sites, {{{0.0}}, {2}}), InvalidInput);
}

TEST(FitWeights, WitnessIsIrreducible) {
    // Three sites on a line; a cyclic labeling that needs three constraints.
    oracle::Rng rng(42);
    int infeasible = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto sites = oracle::random_points(rng, 3, 2, -1, 1);
        LabeledSample sample;
        sample.points = oracle::random_points(rng, 6, 2, -1, 1);
        for (std::size_t k = 0; k < 6; ++k) sample.labels.push_back(oracle::uniform_index(rng, 0, 2));
        const WeightFit fw = fit_weights(sites, sample);
        if (fw.feasible) {
            const auto lab = power_cells(PowerDiagram(sites, fw.weights), sample.points, 1e-7);
            for (std::size_t k = 0; k < sample.size(); ++k)
                EXPECT_TRUE(lab.labels[k] == sample.labels[k] || lab.ties[k]);
            continue;
        }
        ++infeasible;
        ASSERT_FALSE(fw.witness.empty());
        // Removing any single constraint from the witness restores feasibility.
        auto system = [&](const std::vector<CellConstraint>& cs) {
            lp::Matrix a;
            Vector b;
            for (const auto& c : cs) {
                const std::size_t i = sample.labels[c.sample];
                Vector row(3, 0.0);
                row[c.site] += 1.0;
                row[i] -= 1.0;
                a.push_back(row);
                b.push_back(oracle::sqdist(sites[c.site], sample.points[c.sample]) -
                            oracle::sqdist(sites[i], sample.points[c.sample]));
            }
            return lp::phase_one(a, b).feasible;
        };
        EXPECT_FALSE(system(fw.witness));
        for (std::size_t drop = 0; drop < fw.witness.size(); ++drop) {
            auto sub = fw.witness;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
            EXPECT_TRUE(system(sub));
        }
    }
    EXPECT_GT(infeasible, 5);
}

TEST(WmonCells, Examples) {
    const std::vector<Vector> sites{{0.0}, {1.0}};
    EXPECT_TRUE(check_wmon_cells(sites, {{{0.0}, {1.0}}, {0, 1}}).passed);
    const CheckReport bad = check_wmon_cells(sites, {{{0.0}, {2.0}}, {1, 0}});
    ASSERT_EQ(bad.witnesses.size(), 1u);
    EXPECT_EQ(bad.witnesses[0].indices, (std::vector<std::size_t>{0, 1}));
    EXPECT_DOUBLE_EQ(bad.witnesses[0].slack, 2.0);
    EXPECT_TRUE(check_wmon_cells(sites, {{{0.0}, {2.0}, {5.0}}, {1, 1, 1}}).passed);
}

TEST(Homothet, Examples) {
    const PowerDiagram d({{0.0}, {1.0}}, {0.0, 0.0});
    const PowerDiagram h = homothet_transform(d, 2.0, {0.0});
    EXPECT_EQ(h.sites(), (std::vector<Vector>{{0.0}, {2.0}}));
    EXPECT_DOUBLE_EQ(h.weights()[1] - h.weights()[0], 2.0);
    EXPECT_TRUE(power_cells(h, {{0.5}}).ties[0]);

    const PowerDiagram same = homothet_transform(d, 1.0, {0.0});
    EXPECT_EQ(same.sites(), d.sites());
    EXPECT_EQ(same.weights(), d.weights());

    EXPECT_THROW(homothet_transform(d, 0.0, {0.0}), NonPositiveScale);
    EXPECT_THROW(homothet_transform(d, -1.0, {0.0}), NonPositiveScale);
}

TEST(Homothet, LabelsInvariant) {
    oracle::Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const auto d = random_diagram(rng, 2 + trial % 6, 1 + trial % 3);
        const auto pts = oracle::random_points(rng, 500, d.dim(), -1.5, 1.5);
        const auto base = power_cells(d, pts);
        for (int draw = 0; draw < 20; ++draw) {
            const double alpha = oracle::uniform(rng, 0.2, 5.0);
            const auto h = homothet_transform(d, alpha, oracle::random_vec(rng, d.dim(), -2, 2));
            const auto lab = power_cells(h, pts, 1e-7);
            for (std::size_t k = 0; k < pts.size(); ++k)
                if (!base.ties[k] && !lab.ties[k]) EXPECT_EQ(base.labels[k], lab.labels[k]);
        }
    }
}

TEST(LevelSetConvexity, Examples) {
    const CheckReport bad = check_level_set_convexity({{{0.0}, {1.0}, {2.0}}, {0, 1, 0}});
    ASSERT_EQ(bad.witnesses.size(), 1u);
    EXPECT_EQ(bad.witnesses[0].indices, (std::vector<std::size_t>{0, 2, 1}));
    EXPECT_EQ(bad.witnesses[0].kind, "sandwich");
    EXPECT_TRUE(check_level_set_convexity({{{0.0}, {1.0}, {2.0}}, {0, 0, 0}}).passed);
    EXPECT_THROW(check_level_set_convexity({}), InvalidInput);
}

TEST(LevelSetConvexity, PowerCellLabelingsPass) {
    oracle::Rng rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = random_diagram(rng, 2 + trial % 5, 1 + trial % 2);
        // A lattice makes collinear triples plentiful.
        const TypeSpace grid = box_lattice(-1, 1, d.dim() == 1 ? 41 : 9, d.dim());
        const auto lab = power_cells(d, grid.points());
        LabeledSample s;
        for (std::size_t k = 0; k < grid.size(); ++k)
            if (!lab.ties[k]) {
                s.points.push_back(grid[k]);
                s.labels.push_back(lab.labels[k]);
            }
        EXPECT_TRUE(check_level_set_convexity(s).passed);
    }
}

TEST(BregmanToPower, SquaredNormIsVoronoi) {
    const TypeSpace grid = box_lattice(-1, 2, 7, 2);
    const PowerDiagram d = bregman_to_power(ConvexSpec::squared_norm(), {{0.0, 0.0}, {1.0, 1.0}}, grid);
    EXPECT_EQ(d.sites(), (std::vector<Vector>{{0.0, 0.0}, {1.0, 1.0}}));
    for (double w : d.weights()) EXPECT_NEAR(w, 0.0, 1e-12);
}

TEST(BregmanToPower, NegEntropyMatchesKlArgmin) {
    const auto pts = simplex_lattice(3, 20);
    const TypeSpace grid(pts);
    const std::vector<Vector> sites{{0.2, 0.3, 0.5}, {0.6, 0.2, 0.2}, {0.1, 0.8, 0.1}, {0.35, 0.35, 0.3}};
    const PowerDiagram d = bregman_to_power(ConvexSpec::neg_entropy(), sites, grid);
    const auto lab = power_cells(d, pts);
    std::size_t compared = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const auto o = oracle::nearest(pts[k], sites, oracle::kl, 1e-9);
        if (o.tie || lab.ties[k]) continue;
        ++compared;
        EXPECT_EQ(lab.labels[k], o.label);
    }
    EXPECT_GT(compared, 200u);

    const PowerDiagram single = bregman_to_power(ConvexSpec::neg_entropy(), {{0.5, 0.25, 0.25}}, grid);
    for (std::size_t l : power_cells(single, pts).labels) EXPECT_EQ(l, 0u);
    EXPECT_THROW(bregman_to_power(ConvexSpec::neg_entropy(), {{1.0, 0.0, 0.0}}, grid), DomainError);
}
