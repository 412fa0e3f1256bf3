#include <gtest/gtest.h>

#include <cmath>

#include "elicit/core.hpp"
#include "elicit/duality.hpp"
#include "support/oracles.hpp"

using namespace elicit;

namespace {

// Tangent lines of t^2 / 2 at the given points.
ConvexSpec half_square_envelope(const std::vector<double>& at) {
    std::vector<AffinePiece> pieces;
    for (double a : at) pieces.push_back({{a}, -0.5 * a * a});
    return ConvexSpec::max_affine(pieces);
}

// G* over `grid` written out as a max-affine function of d.
ConvexSpec grid_conjugate(const ConvexSpec& g, const TypeSpace& grid) {
    std::vector<AffinePiece> pieces;
    for (const auto& v : grid) pieces.push_back({v, -eval_convex(g, v)});
    return ConvexSpec::max_affine(pieces);
}

const TypeSpace kThree({{-1.0}, {0.0}, {1.0}});

}  // namespace

TEST(DualReportScore, Examples) {
    const ConvexSpec g = half_square_envelope({-1.0, 0.0, 1.0});
    EXPECT_DOUBLE_EQ(dual_report_score(g, Vector{1.0}, Vector{1.0}, kThree), 0.5);
    EXPECT_DOUBLE_EQ(dual_report_score(g, Vector{1.0}, Vector{1.0}, kThree), eval_convex(g, Vector{1.0}));
    // d = 0 gives -G*(0) = min G over the grid.
    EXPECT_DOUBLE_EQ(dual_report_score(g, Vector{0.0}, Vector{0.7}, kThree), 0.0);
    for (const auto& t : kThree)
        EXPECT_NEAR(dual_report_score(g, subgradient(g, t), t, kThree), eval_convex(g, t), 1e-12);
}

TEST(DualTypeScore, Examples) {
    const ConvexSpec sq = ConvexSpec::squared_norm();
    EXPECT_DOUBLE_EQ(dual_type_score(sq, Vector{1.0, 0.0}, Vector{2.0, 0.0}), 1.0);
    EXPECT_DOUBLE_EQ(dual_type_score(sq, Vector{0.3, 0.4}, Vector{0.0, 0.0}), -0.25);
    const TypeSpace grid = box_lattice(-1, 1, 5, 2);
    const Vector d{1.0, -1.0};
    const ConjugatePoint cp = conjugate_point(sq, d, grid);
    EXPECT_DOUBLE_EQ(dual_type_score(sq, cp.argmax, d), conjugate(sq, d, grid));
}

TEST(DualConjugate, ClosedFormOnlyInsideTheBox) {
    const TypeSpace grid = box_lattice(-1, 1, 3, 1);
    const ConvexSpec free = ConvexSpec::squared_norm();
    // Grid conjugate at d = 1: max over {-1, 0, 1} of v - v^2 is 0.
    EXPECT_DOUBLE_EQ(dual_conjugate(free, Vector{1.0}, grid), 0.0);
    const ConvexSpec boxed = free.with_box({-1.0}, {1.0});
    EXPECT_DOUBLE_EQ(dual_conjugate(boxed, Vector{1.0}, grid), 0.25);
    // Maximizer 1.5 leaves the box, so the grid value is used.
    EXPECT_DOUBLE_EQ(dual_conjugate(boxed, Vector{3.0}, grid), 2.0);
}

TEST(Quadrangle, EntriesAgreeOnMatchedPairs) {
    const ConvexSpec sq = ConvexSpec::squared_norm();
    const TypeSpace grid = box_lattice(-1, 1, 11, 2);
    const Vector t_rep{0.2, -0.4}, t{0.6, 0.0};
    const Vector d_rep = subgradient(sq, t_rep), d = subgradient(sq, t);
    const QuadrangleEval q = evaluate_quadrangle(sq, t_rep, d_rep, t, d, grid);
    // With d' = dG(t') the primal and dual report forms coincide.
    EXPECT_NEAR(q.primal_primal, q.dual_report, 1e-12);
    // The dual-dual score is the Bregman form of G* and equals A*(t', d).
    EXPECT_NEAR(q.dual_dual, q.dual_type, 1e-12);
    EXPECT_NEAR(q.dual_report, dot(t, d_rep) - dual_conjugate(sq, d_rep, grid), 1e-15);
}

TEST(DualityIdentities, SquaredNormLattice) {
    const TypeSpace grid = box_lattice(-1, 1, 11, 2);
    std::vector<Vector> duals;
    for (const auto& v : grid) duals.push_back(scaled(v, 2.0));
    const CheckReport r = check_duality_identities(ConvexSpec::squared_norm(), grid, duals, 1e-9);
    EXPECT_TRUE(r.passed);
    EXPECT_LE(r.metrics.at("max_difference_error"), 1e-9);
    EXPECT_GE(r.metrics.at("min_fenchel_young_gap"), -1e-9);
    EXPECT_LE(r.metrics.at("max_regret_asymmetry"), 1e-12);
    for (std::size_t i = 0; i < grid.size(); i += 7)
        EXPECT_NEAR(biconjugate(ConvexSpec::squared_norm(), grid[i], grid, duals),
                    eval_convex(ConvexSpec::squared_norm(), grid[i]), 1e-6);
}

TEST(DualityIdentities, NonSubgradientPairHasGapEqualToDivergence) {
    const ConvexSpec sq = ConvexSpec::squared_norm();
    const TypeSpace grid = box_lattice(-1, 1, 11, 2);
    const Vector t{0.4, 0.2}, s{-0.2, 0.6};
    const double gap = fenchel_young_gap(sq, t, subgradient(sq, s), grid);
    EXPECT_GT(gap, 0.0);
    EXPECT_NEAR(gap, bregman_divergence(sq, t, s), 1e-12);
}

TEST(Biconjugate, MaxAffineFixedPoint) {
    oracle::Rng rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<AffinePiece> ps;
        for (int k = 0; k < 5; ++k) ps.push_back({{oracle::uniform(rng, -2, 2)}, oracle::uniform(rng, -1, 1)});
        const ConvexSpec g = ConvexSpec::max_affine(ps);
        const TypeSpace grid = uniform_grid_1d(-3, 3, 61);
        std::vector<Vector> duals;
        for (const auto& p : ps) duals.push_back(p.slope);
        for (const auto& t : grid) EXPECT_NEAR(biconjugate(g, t, grid, duals), eval_convex(g, t), 1e-6);
    }
}

TEST(Game, Examples) {
    const ConvexSpec g = half_square_envelope({-1.0, 0.0, 1.0});
    const auto eq = elicitation_game_equilibria(g, kThree, {{-1.0}, {0.0}, {1.0}}, kThree);
    ASSERT_EQ(eq.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(eq[k].d, eq[k].t);
        EXPECT_DOUBLE_EQ(eq[k].agent_payoff, eval_convex(g, eq[k].t));
        EXPECT_DOUBLE_EQ(eq[k].principal_payoff, dual_conjugate(g, eq[k].d, kThree));
    }

    const ConvexSpec abs = ConvexSpec::max_affine({{{1.0}, 0.0}, {{-1.0}, 0.0}});
    const auto eq_abs = elicitation_game_equilibria(abs, TypeSpace(std::vector<Vector>{{0.0}}),
                                                    {{-1.0}, {-0.5}, {0.0}, {0.5}, {1.0}, {1.5}}, kThree);
    EXPECT_EQ(eq_abs.size(), 5u);

    EXPECT_TRUE(elicitation_game_equilibria(g, kThree, {}, kThree).empty());
}

TEST(Game, RolesSwapUnderConjugation) {
    const ConvexSpec g = half_square_envelope({-1.0, -0.5, 0.0, 0.5, 1.0});
    const TypeSpace grid = uniform_grid_1d(-1, 1, 9);
    const ConvexSpec g_star = grid_conjugate(g, grid);
    const auto forward = elicitation_game_equilibria(g, grid, grid.points(), grid);
    const auto backward = elicitation_game_equilibria(g_star, grid, grid.points(), grid);
    std::vector<std::pair<Vector, Vector>> a, b;
    for (const auto& e : forward) a.push_back({e.d, e.t});
    for (const auto& e : backward) b.push_back({e.t, e.d});
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, b);
}

TEST(DualProperty, InversionAndGrouping) {
    const LabeledSample s{{{0.0}, {1.0}, {2.0}, {3.0}}, {0, 1, 0, 1}};
    const DualProperty dual = dual_property(s);
    ASSERT_EQ(dual.size(), 2u);
    EXPECT_EQ(dual.at(0), (std::vector<Vector>{{0.0}, {2.0}}));
    EXPECT_EQ(dual.at(1), (std::vector<Vector>{{1.0}, {3.0}}));

    const auto back = primal_property(dual);
    ASSERT_EQ(back.size(), 4u);
    // Every original (point, label) pair is recovered.
    for (std::size_t k = 0; k < s.size(); ++k) {
        bool found = false;
        for (const auto& [p, labels] : back)
            if (p == s.points[k]) found = std::find(labels.begin(), labels.end(), s.labels[k]) != labels.end();
        EXPECT_TRUE(found);
    }

    // A point carrying two labels keeps both.
    const auto multi = primal_property(dual_property({{{0.0}, {0.0}}, {0, 1}}));
    ASSERT_EQ(multi.size(), 1u);
    EXPECT_EQ(multi[0].second, (std::vector<std::size_t>{0, 1}));

    // Double inversion returns the original relation.
    LabeledSample again;
    for (const auto& [p, labels] : back)
        for (std::size_t l : labels) {
            again.points.push_back(p);
            again.labels.push_back(l);
        }
    EXPECT_EQ(dual_property(again), dual);
}
