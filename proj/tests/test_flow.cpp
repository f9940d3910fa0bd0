// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>
#include <omp.h>

#include "fdedit/consistency.hpp"
#include "fdedit/error.hpp"
#include "fdedit/expansion.hpp"
#include "fdedit/reports.hpp"
#include "fdedit/theorem.hpp"
#include "oracles.hpp"

using namespace fdedit;

namespace {

ImagePair random_pair(std::size_t n, Rng& rng) {
    return enforce_color_consistency({oracle::random_image(n, n, 1, rng), oracle::random_image(n, n, 1, rng)});
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Laplacian, MatchesDenseOracle) {
    for (bool circ : {true, false}) {
        const GridLaplacian L(4, 5, circ ? BoundaryMode::Circular : BoundaryMode::Reflect);
        EXPECT_TRUE(L.dense().isApprox(oracle::laplacian(4, 5, circ)));
        EXPECT_LT(L.dense().rowwise().sum().cwiseAbs().maxCoeff(), 1e-15);
    }
    EXPECT_THROW(GridLaplacian(2, 5, BoundaryMode::Circular), ShapeError);
}

TEST(Solver, MatchesDenseLdlt) {
    Rng rng(30);
    for (int t = 0; t < 20; ++t) {
        const ImagePair p = random_pair(6, rng);
        const FlowProblem prob = build_problem(p.i1, p.i2, 1e-3);
        const FlowSolution sol = solve_flow_detailed(prob, 1e-12);
        const oracle::DenseFlow dense = oracle::dense_flow(p.i1, p.i2, 1e-3);
        const auto u = sol.flow.interleaved();
        const Eigen::Map<const Eigen::VectorXd> uv(u.data(), static_cast<Eigen::Index>(u.size()));
        EXPECT_LT((uv - dense.u).norm() / dense.u.norm(), 1e-6);
        EXPECT_LE(sol.relative_residual, 1e-12);
        const ConsistencyReport rep = consistency_score(prob, {BoundaryMode::Circular, 1e-12, 0});
        EXPECT_LT(rel(rep.score, dense.score), 1e-8);
        EXPECT_LT(rel(rep.score, dense.projector_score), 1e-8);
        EXPECT_NEAR(rep.score, rep.residual_norm * rep.residual_norm, 1e-9 * rep.score);
        EXPECT_TRUE(rep.color_consistent);
    }
}

TEST(Solver, ProjectorFormFromLibraryAgreesWithOracle) {
    Rng rng(31);
    const ImagePair p = random_pair(5, rng);
    const FlowProblem prob = build_problem(p.i1, p.i2, 2e-3);
    const Eigen::MatrixXd D = dense_projector(prob);
    const Eigen::MatrixXd A = oracle::gradient_matrix(p.i1);
    const Eigen::MatrixXd K = 2e-3 * A * A.transpose() +
                              Eigen::kroneckerProduct(oracle::laplacian(5, 5, true), Eigen::Matrix2d::Identity()).eval();
    const Eigen::MatrixXd want = 2e-3 * A.transpose() * K.ldlt().solve(A);
    EXPECT_LT((D - want).cwiseAbs().maxCoeff(), 1e-10);
    // D is symmetric with spectrum in [0, 1]
    EXPECT_LT((D - D.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (D + D.transpose()));
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
    EXPECT_LT(es.eigenvalues().maxCoeff(), 1.0 + 1e-10);
}

TEST(Solver, ZeroGradientsGiveMinimumNormFlow) {
    const Image flat(6, 6, 1, 0.4);
    Image other(6, 6, 1, 0.4);
    other.at(2, 3) = 0.9;
    const FlowProblem prob = build_problem(flat, other, 1e-3);
    const FlowSolution sol = solve_flow_detailed(prob);
    EXPECT_TRUE(sol.degenerate);
    for (double v : sol.flow.interleaved()) EXPECT_EQ(v, 0.0);
    const ConsistencyReport rep = consistency_score(prob);
    EXPECT_NEAR(rep.score, 0.25, 1e-15);
}

TEST(Solver, RankOneDataTermProjectsOutFreeDirection) {
    // horizontal ramp: only the x flow is constrained
    Image i1(6, 6, 1), i2(6, 6, 1);
    Rng rng(32);
    for (std::size_t y = 0; y < 6; ++y)
        for (std::size_t x = 0; x < 6; ++x) {
            i1.at(y, x) = std::sin(2 * std::numbers::pi * x / 6.0);
            i2.at(y, x) = std::sin(2 * std::numbers::pi * (x + 0.3) / 6.0) + 0.01 * rng.uniform();
        }
    const ImagePair p = enforce_color_consistency({i1, i2});
    const FlowSolution sol = solve_flow_detailed(build_problem(p.i1, p.i2, 1e-2), 1e-10);
    EXPECT_TRUE(sol.degenerate);
    double sy = 0.0;
    for (double v : sol.flow.uy.data()) sy += v;
    EXPECT_NEAR(sy, 0.0, 1e-12);
}

TEST(Solver, NonConvergenceCarriesResidual) {
    Rng rng(33);
    const ImagePair p = random_pair(8, rng);
    const FlowProblem prob = build_problem(p.i1, p.i2, 1e-3);
    try {
        solve_flow_detailed(prob, 1e-12, 2);
        FAIL() << "expected SolverError";
    } catch (const SolverError& e) {
        EXPECT_GT(e.achieved_residual(), 1e-12);
        EXPECT_EQ(e.iterations(), 2);
    }
    EXPECT_THROW(solve_flow_detailed(prob, 0.0), ConfigError);
}

TEST(Consistency, IdenticalImagesScoreZero) {
    Rng rng(34);
    const Image a = oracle::random_image(8, 8, 3, rng);
    const ConsistencyReport rep = consistency_score(a, a, 1e-3);
    EXPECT_EQ(rep.score, 0.0);
    EXPECT_THROW(consistency_score(a, Image(8, 9, 3), 1e-3), ShapeError);
    EXPECT_THROW(consistency_score(a, a, 0.0), ConfigError);
}

TEST(Consistency, ScoreBoundedByDataResidual) {
    Rng rng(35);
    for (int t = 0; t < 10; ++t) {
        const ImagePair p = random_pair(7, rng);
        const ConsistencyReport rep = consistency_score(p.i1, p.i2, 1e-3);
        const double b2 = std::pow(l2_norm(p.i2 - p.i1), 2);
        EXPECT_GE(rep.score, 0.0);
        EXPECT_LE(rep.score, b2 * (1 + 1e-12));
    }
}

TEST(Theorem, SmoothingLowersScoreOnSmoothPairs) {
    TheoremConfig cfg;
    cfg.trials = 30;
    const TheoremReport rep = verify_smoothing_theorem(cfg, smooth_pair_generator({}));
    EXPECT_EQ(rep.degenerate, 0);
    EXPECT_EQ(rep.strict, 30);
    EXPECT_EQ(rep.size, 16u);
    for (const auto& r : rep.results) EXPECT_LT(r.ratio(), 1.0);
}

TEST(Theorem, StyledVariantAndFlowSources) {
    TheoremConfig cfg;
    cfg.trials = 20;
    SmoothPairConfig pc;
    pc.channels = 3;
    for (FlowSource src : {FlowSource::Stylized, FlowSource::Original}) {
        cfg.flow_source = src;
        const TheoremReport rep = verify_style_theorem(cfg, smooth_pair_generator(pc));
        EXPECT_GE(rep.strict_fraction, 0.99);
    }
}

TEST(Theorem, ConstantPairsAreDegenerate) {
    TheoremConfig cfg;
    cfg.trials = 4;
    const TheoremReport rep = verify_smoothing_theorem(cfg, [](Rng& rng) {
        const double v = rng.uniform();
        return ImagePair{Image(8, 8, 1, v), Image(8, 8, 1, v)};
    });
    EXPECT_EQ(rep.degenerate, 4);
    EXPECT_EQ(rep.strict, 0);
    EXPECT_EQ(rep.strict_fraction, 0.0);
}

TEST(Theorem, ValidationAndDeterminismAcrossThreads) {
    TheoremConfig cfg;
    cfg.trials = 0;
    EXPECT_THROW(verify_smoothing_theorem(cfg, smooth_pair_generator({})), ConfigError);
    cfg.trials = 12;
    cfg.lowpass.boundary = BoundaryMode::Reflect;
    EXPECT_THROW(verify_smoothing_theorem(cfg, smooth_pair_generator({})), ConfigError);
    cfg.lowpass.boundary = BoundaryMode::Circular;
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const std::string one = theorem_csv(verify_smoothing_theorem(cfg, smooth_pair_generator({})));
    omp_set_num_threads(3);
    const std::string three = theorem_csv(verify_smoothing_theorem(cfg, smooth_pair_generator({})));
    omp_set_num_threads(saved);
    EXPECT_EQ(one, three);
    EXPECT_EQ(one.substr(0, one.find('\n')), "trial,raw_score,smoothed_score,ratio,strict,degenerate");
}

TEST(Expansion, SecondOrderConvergence) {
    Rng rng(3);
    const ImagePair p = random_pair(8, rng);
    const FlowProblem prob = build_problem(p.i1, p.i2, 1e-4);
    const ExpansionReport a = small_mu_expansion(prob);
    const ExpansionReport b = small_mu_expansion(with_mu(prob, 5e-5));
    const double ratio = a.error / b.error;
    EXPECT_GE(ratio, 3.0);
    EXPECT_LE(ratio, 5.0);
    EXPECT_NEAR(a.error_literal / b.error_literal, 2.0, 0.2);
    EXPECT_EQ(a.rank_e, 2);
}

TEST(Expansion, SchurRouteAgreesWithDenseSolveAtModerateMu) {
    Rng rng(36);
    const ImagePair p = random_pair(6, rng);
    const ExpansionReport r = small_mu_expansion(build_problem(p.i1, p.i2, 1e-2));
    EXPECT_LT(r.schur_direct_diff, 1e-10);
    // independent dense D b from the oracle
    const Eigen::MatrixXd A = oracle::gradient_matrix(p.i1);
    Eigen::VectorXd b(36);
    for (Eigen::Index k = 0; k < 36; ++k) b(k) = p.i2.data()[k] - p.i1.data()[k];
    const Eigen::MatrixXd K = 1e-2 * A * A.transpose() +
                              Eigen::kroneckerProduct(oracle::laplacian(6, 6, true), Eigen::Matrix2d::Identity()).eval();
    const Eigen::VectorXd Db = 1e-2 * A.transpose() * K.ldlt().solve(A * b);
    EXPECT_LT((r.exact - Db).norm(), 1e-10 * Db.norm());
}

TEST(Expansion, GuardsAndRankDeficiency) {
    Rng rng(37);
    const ImagePair big = random_pair(13, rng);
    EXPECT_THROW(small_mu_expansion(build_problem(big.i1, big.i2, 1e-4)), ConfigError);
    const Image flat(6, 6, 1, 0.5);
    EXPECT_THROW(small_mu_expansion(build_problem(flat, flat, 1e-4)), DegenerateError);
    // ramp in x only: rank one
    Image i1(6, 6, 1), i2(6, 6, 1);
    for (std::size_t y = 0; y < 6; ++y)
        for (std::size_t x = 0; x < 6; ++x) {
            i1.at(y, x) = std::cos(2 * std::numbers::pi * x / 6.0);
            i2.at(y, x) = std::cos(2 * std::numbers::pi * (x + 0.2) / 6.0) + 0.05 * rng.uniform();
        }
    const ImagePair p = enforce_color_consistency({i1, i2});
    const ExpansionReport a = small_mu_expansion(build_problem(p.i1, p.i2, 1e-4));
    EXPECT_EQ(a.rank_e, 1);
    EXPECT_LT(a.error, a.leading_error);
}

TEST(Reports, JsonFields) {
    Rng rng(38);
    const ImagePair p = random_pair(6, rng);
    const auto j = to_json(consistency_score(p.i1, p.i2, 1e-3));
    for (const char* k : {"score", "residual_norm", "solver_iterations", "color_consistent", "degenerate", "mu"})
        EXPECT_TRUE(j.contains(k)) << k;
}
