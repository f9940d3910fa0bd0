// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "fdedit/image.hpp"
#include "fdedit/laplacian.hpp"

namespace fdedit {

/// Linearised brightness-constancy problem between two grayscale views:
///
///   minimise  mu * ||A^T u + b||^2 + u^T (L kron I2) u
///
/// A is block diagonal with one 2x1 block (dI1/dx, dI1/dy) per pixel, b = I2 - I1,
/// and the flow u interleaves (u_x, u_y) per pixel. I2 in "L kron I2" is the
/// 2x2 identity: smoothness acts on each flow component separately.
struct FlowProblem {
    Image ax;  ///< dI1/dx
    Image ay;  ///< dI1/dy
    Image b;   ///< I2 - I1
    GridLaplacian laplacian;
    double mu = 1e-3;

    double b_sum = 0.0;
    /// |sum_p b(p)| <= 1e-6 * n^2 (the colour-consistency premise 1^T b = 0).
    bool color_consistent = false;

    std::size_t pixels() const noexcept { return b.pixel_count(); }
    std::size_t unknowns() const noexcept { return 2 * pixels(); }
    double b_mean() const noexcept { return b_sum / static_cast<double>(pixels()); }

    /// out = (mu A A^T + L kron I2) u.
    void apply_system(std::span<const double> u, std::span<double> out) const;
    /// out = A^T u + b (length pixels()).
    void residual(std::span<const double> u, std::span<double> out) const;
    /// -mu A b (length unknowns()).
    std::vector<double> rhs() const;
    /// 2x2 structure sum E^T E = sum_p A(p) A(p)^T, row-major.
    std::array<double, 4> structure_sum() const;
};

/// Both inputs single-channel, equal shape, at least 3x3; mu > 0.
FlowProblem build_problem(const Image& i1, const Image& i2, double mu,
                          BoundaryMode boundary = BoundaryMode::Circular);

/// Same gradients and b with another trade-off weight.
FlowProblem with_mu(FlowProblem prob, double mu);

}  // namespace fdedit
