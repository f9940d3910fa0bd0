// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdedit/flow_solver.hpp"

namespace fdedit {

struct ConsistencyConfig {
    BoundaryMode boundary = BoundaryMode::Circular;
    double tol = 1e-8;
    int max_iter = 0;
};

/// c(I1, I2) = ||A^T u* + b||^2 with u* the optimal smooth flow; equal to
/// ||(I - D(A)) b||^2 with D(A) = mu A^T (mu A A^T + L kron I2)^-1 A.
struct ConsistencyReport {
    double score = 0.0;
    double residual_norm = 0.0;
    FlowField flow;
    int solver_iterations = 0;
    bool color_consistent = false;
    bool degenerate = false;
    double mu = 0.0;
    double b_mean = 0.0;
};

/// ||A^T u + b||^2 for an arbitrary flow.
double residual_score(const FlowProblem& prob, const FlowField& flow);

ConsistencyReport consistency_score(const FlowProblem& prob, const ConsistencyConfig& cfg = {});

/// Colour inputs are reduced to Rec. 709 luminance first.
ConsistencyReport consistency_score(const Image& i1, const Image& i2, double mu,
                                    const ConsistencyConfig& cfg = {});

}  // namespace fdedit
