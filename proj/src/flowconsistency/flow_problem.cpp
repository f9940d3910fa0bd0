// SPDX-License-Identifier: Apache-2.0
#include "fdedit/flow_problem.hpp"

#include <cmath>
#include <string>

#include "fdedit/error.hpp"
#include "fdedit/lowpass.hpp"

namespace fdedit {

FlowProblem build_problem(const Image& i1, const Image& i2, double mu, BoundaryMode boundary) {
    if (i1.channels() != 1 || i2.channels() != 1) {
        throw ShapeError("build_problem: inputs must be single-channel (convert to luminance first)");
    }
    require_same_shape(i1, i2, "build_problem");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("build_problem: mu must be > 0, got " + std::to_string(mu));

    auto g = gradient(i1, boundary);
    FlowProblem prob{std::move(g.gx), std::move(g.gy), i2 - i1, GridLaplacian(i1.height(), i1.width(), boundary), mu};
    for (double v : prob.b.data()) prob.b_sum += v;
    prob.color_consistent = std::abs(prob.b_sum) <= 1e-6 * static_cast<double>(prob.pixels());
    return prob;
}

FlowProblem with_mu(FlowProblem prob, double mu) {
    if (!(mu > 0.0)) throw ConfigError("with_mu: mu must be > 0");
    prob.mu = mu;
    return prob;
}

void FlowProblem::apply_system(std::span<const double> u, std::span<double> out) const {
    const std::size_t n = pixels();
    const auto ax_ = ax.data();
    const auto ay_ = ay.data();
    for (std::size_t p = 0; p < n; ++p) {
        const double t = mu * (ax_[p] * u[2 * p] + ay_[p] * u[2 * p + 1]);
        const int deg = laplacian.degree(p);
        const auto& nb = laplacian.neighbours(p);
        double lx = 0.0;
        double ly = 0.0;
        for (int k = 0; k < deg; ++k) {
            lx += u[2 * p] - u[2 * nb[k]];
            ly += u[2 * p + 1] - u[2 * nb[k] + 1];
        }
        out[2 * p] = t * ax_[p] + lx;
        out[2 * p + 1] = t * ay_[p] + ly;
    }
}

void FlowProblem::residual(std::span<const double> u, std::span<double> out) const {
    const std::size_t n = pixels();
    for (std::size_t p = 0; p < n; ++p) {
        out[p] = ax.data()[p] * u[2 * p] + ay.data()[p] * u[2 * p + 1] + b.data()[p];
    }
}

std::vector<double> FlowProblem::rhs() const {
    const std::size_t n = pixels();
    std::vector<double> r(2 * n);
    for (std::size_t p = 0; p < n; ++p) {
        r[2 * p] = -mu * ax.data()[p] * b.data()[p];
        r[2 * p + 1] = -mu * ay.data()[p] * b.data()[p];
    }
    return r;
}

std::array<double, 4> FlowProblem::structure_sum() const {
    double xx = 0.0, xy = 0.0, yy = 0.0;
    for (std::size_t p = 0; p < pixels(); ++p) {
        const double gx = ax.data()[p], gy = ay.data()[p];
        xx += gx * gx;
        xy += gx * gy;
        yy += gy * gy;
    }
    return {xx, xy, xy, yy};
}

}  // namespace fdedit
