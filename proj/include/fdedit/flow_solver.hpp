// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdedit/flow_problem.hpp"

namespace fdedit {

struct FlowField {
    Image ux;  ///< pixels
    Image uy;

    /// Interleaved (u_x, u_y) per pixel, the solver's layout.
    std::vector<double> interleaved() const;
    static FlowField from_interleaved(std::span<const double> u, std::size_t height, std::size_t width);
};

struct FlowSolution {
    FlowField flow;
    int iterations = 0;
    double relative_residual = 0.0;
    /// The data term leaves a constant flow direction unconstrained (E^T E
    /// singular); the returned flow is the minimum-norm solution.
    bool degenerate = false;
};

/// Jacobi-preconditioned conjugate gradients on (mu A A^T + L kron I2) u = -mu A b,
/// stopped at ||r|| <= tol * ||rhs||. Summation order is fixed, so results are
/// bit-reproducible. max_iter <= 0 selects 20 * unknowns.
///
/// Throws SolverError (carrying the achieved residual) if tol is not reached.
FlowSolution solve_flow_detailed(const FlowProblem& prob, double tol = 1e-8, int max_iter = 0);

inline FlowField solve_flow(const FlowProblem& prob, double tol = 1e-8, int max_iter = 0) {
    return solve_flow_detailed(prob, tol, max_iter).flow;
}

}  // namespace fdedit
