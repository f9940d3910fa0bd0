// SPDX-License-Identifier: Apache-2.0
#include "fdedit/flow_solver.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "fdedit/error.hpp"

namespace fdedit {

std::vector<double> FlowField::interleaved() const {
    std::vector<double> u(2 * ux.pixel_count());
    for (std::size_t p = 0; p < ux.pixel_count(); ++p) {
        u[2 * p] = ux.data()[p];
        u[2 * p + 1] = uy.data()[p];
    }
    return u;
}

FlowField FlowField::from_interleaved(std::span<const double> u, std::size_t height, std::size_t width) {
    FlowField f{Image(height, width, 1), Image(height, width, 1)};
    for (std::size_t p = 0; p < height * width; ++p) {
        f.ux.data()[p] = u[2 * p];
        f.uy.data()[p] = u[2 * p + 1];
    }
    return f;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Unit directions c with E c = 0, i.e. eigenvectors of the 2x2 structure sum
// whose eigenvalue vanishes relative to its trace.
std::vector<std::array<double, 2>> unconstrained_directions(const FlowProblem& prob) {
    const auto s = prob.structure_sum();
    const double a = s[0], b = s[1], d = s[3];
    const double tr = a + d;
    if (tr <= 0.0) return {{1.0, 0.0}, {0.0, 1.0}};

    const double half = 0.5 * (a - d);
    const double disc = std::sqrt(half * half + b * b);
    const double lmin = 0.5 * tr - disc;
    if (lmin > 1e-12 * tr) return {};
    // Eigenvector for lmin of [[a, b], [b, d]].
    std::array<double, 2> v = std::abs(b) > 0.0 ? std::array<double, 2>{b, lmin - a}
                                                : (a <= d ? std::array<double, 2>{1.0, 0.0}
                                                          : std::array<double, 2>{0.0, 1.0});
    const double nv = std::hypot(v[0], v[1]);
    return {{v[0] / nv, v[1] / nv}};
}

// Pseudo-inverse of the coarse operator mu * S on the constant flows, where the
// Laplacian contributes nothing. Row-major 2x2.
std::array<double, 4> coarse_inverse(const FlowProblem& prob) {
    const auto s = prob.structure_sum();
    const double a = prob.mu * s[0], b = prob.mu * s[1], d = prob.mu * s[3];
    const double tr = a + d;
    if (tr <= 0.0) return {0.0, 0.0, 0.0, 0.0};
    const double det = a * d - b * b;
    if (det > 1e-12 * tr * tr) return {d / det, -b / det, -b / det, a / det};
    // rank one: E = tr v v^T, E^+ = E / tr^2
    const double t2 = tr * tr;
    return {a / t2, b / t2, b / t2, d / t2};
}

}  // namespace

FlowSolution solve_flow_detailed(const FlowProblem& prob, double tol, int max_iter) {
    if (!(tol > 0.0)) throw ConfigError("solve_flow: tol must be > 0");
    const std::size_t n = prob.pixels();
    const std::size_t m = prob.unknowns();
    if (max_iter <= 0) max_iter = static_cast<int>(20 * m);

    FlowSolution sol;
    const auto nullspace = unconstrained_directions(prob);
    sol.degenerate = !nullspace.empty();

    std::vector<double> rhs = prob.rhs();
    const double rhs_norm = std::sqrt(dot(rhs, rhs));
    std::vector<double> u(m, 0.0);
    if (rhs_norm == 0.0) {
        sol.flow = FlowField::from_interleaved(u, prob.b.height(), prob.b.width());
        return sol;
    }

    std::vector<double> inv_diag(m);
    for (std::size_t p = 0; p < n; ++p) {
        const double deg = prob.laplacian.degree(p);
        inv_diag[2 * p] = 1.0 / (prob.mu * prob.ax.data()[p] * prob.ax.data()[p] + deg);
        inv_diag[2 * p + 1] = 1.0 / (prob.mu * prob.ay.data()[p] * prob.ay.data()[p] + deg);
    }

    // Two-level preconditioner: Jacobi plus an exact solve on the constant
    // flows, the near-null space of the Laplacian term.
    const auto cinv = coarse_inverse(prob);
    const auto precondition = [&](const std::vector<double>& r, std::vector<double>& z) {
        double sx = 0.0, sy = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            sx += r[2 * p];
            sy += r[2 * p + 1];
        }
        const double cx = cinv[0] * sx + cinv[1] * sy;
        const double cy = cinv[2] * sx + cinv[3] * sy;
        for (std::size_t p = 0; p < n; ++p) {
            z[2 * p] = inv_diag[2 * p] * r[2 * p] + cx;
            z[2 * p + 1] = inv_diag[2 * p + 1] * r[2 * p + 1] + cy;
        }
    };

    // PCG with residual replacement: when the recurrence claims convergence the
    // true residual is recomputed and, if it disagrees, the iteration restarts
    // from the current iterate.
    std::vector<double> r(m), z(m), d(m), q(m);
    double true_res = 1.0;
    int it = 0;
    while (it < max_iter) {
        prob.apply_system(u, q);
        for (std::size_t i = 0; i < m; ++i) r[i] = rhs[i] - q[i];
        true_res = std::sqrt(dot(r, r)) / rhs_norm;
        if (true_res <= tol) break;

        precondition(r, z);
        d = z;
        double rz = dot(r, z);
        const int restart_at = it;
        while (it < max_iter) {
            prob.apply_system(d, q);
            const double dq = dot(d, q);
            if (!(dq > 0.0)) break;
            const double step = rz / dq;
            for (std::size_t i = 0; i < m; ++i) {
                u[i] += step * d[i];
                r[i] -= step * q[i];
            }
            ++it;
            if (std::sqrt(dot(r, r)) / rhs_norm <= 0.5 * tol) break;
            precondition(r, z);
            const double rz_next = dot(r, z);
            const double beta = rz_next / rz;
            rz = rz_next;
            for (std::size_t i = 0; i < m; ++i) d[i] = z[i] + beta * d[i];
        }
        if (it == restart_at) break;  // no progress possible (breakdown)
    }
    prob.apply_system(u, q);
    for (std::size_t i = 0; i < m; ++i) r[i] = rhs[i] - q[i];
    true_res = std::sqrt(dot(r, r)) / rhs_norm;
    sol.iterations = it;
    sol.relative_residual = true_res;
    if (!(true_res <= tol)) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "solve_flow: conjugate gradients did not reach tol %.3g within %d iterations "
                      "(relative residual %.3g)",
                      tol, it, true_res);
        throw SolverError(msg, true_res, it);
    }

    // Remove components along constant flows the data term does not see.
    for (const auto& c : nullspace) {
        double proj = 0.0;
        for (std::size_t p = 0; p < n; ++p) proj += c[0] * u[2 * p] + c[1] * u[2 * p + 1];
        proj /= static_cast<double>(n);
        for (std::size_t p = 0; p < n; ++p) {
            u[2 * p] -= proj * c[0];
            u[2 * p + 1] -= proj * c[1];
        }
    }

    sol.flow = FlowField::from_interleaved(u, prob.b.height(), prob.b.width());
    return sol;
}

}  // namespace fdedit
