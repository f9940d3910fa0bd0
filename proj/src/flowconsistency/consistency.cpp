// SPDX-License-Identifier: Apache-2.0
#include "fdedit/consistency.hpp"

#include <cmath>

namespace fdedit {

double residual_score(const FlowProblem& prob, const FlowField& flow) {
    const auto u = flow.interleaved();
    std::vector<double> r(prob.pixels());
    prob.residual(u, r);
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
}

ConsistencyReport consistency_score(const FlowProblem& prob, const ConsistencyConfig& cfg) {
    auto sol = solve_flow_detailed(prob, cfg.tol, cfg.max_iter);
    ConsistencyReport rep;
    rep.score = residual_score(prob, sol.flow);
    rep.residual_norm = std::sqrt(rep.score);
    rep.flow = std::move(sol.flow);
    rep.solver_iterations = sol.iterations;
    rep.color_consistent = prob.color_consistent;
    rep.degenerate = sol.degenerate;
    rep.mu = prob.mu;
    rep.b_mean = prob.b_mean();
    return rep;
}

ConsistencyReport consistency_score(const Image& i1, const Image& i2, double mu, const ConsistencyConfig& cfg) {
    return consistency_score(build_problem(luminance(i1), luminance(i2), mu, cfg.boundary), cfg);
}

}  // namespace fdedit
