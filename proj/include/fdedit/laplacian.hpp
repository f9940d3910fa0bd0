// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <span>

#include "fdedit/image.hpp"

namespace fdedit {

/// Graph Laplacian of the 4-neighbourhood pixel grid.
///
/// Circular connects opposite edges (torus, every node has degree 4).
/// Reflect has no edges across the border (free boundary, degree 2..4).
/// Both graphs are connected, so the constant vector spans the nullspace.
class GridLaplacian {
public:
    GridLaplacian(std::size_t height, std::size_t width, BoundaryMode boundary);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t nodes() const noexcept { return height_ * width_; }
    BoundaryMode boundary() const noexcept { return boundary_; }

    int degree(std::size_t node) const noexcept { return degree_[node]; }

    /// Neighbour indices of `node`; unused slots hold `nodes()`.
    const std::array<std::size_t, 4>& neighbours(std::size_t node) const noexcept { return nbr_[node]; }

    /// out = L v, with v and out of length nodes().
    void apply(std::span<const double> v, std::span<double> out) const;

    /// Explicit n x n matrix (for dense oracles and the eigen-expansion).
    Eigen::MatrixXd dense() const;

private:
    std::size_t height_;
    std::size_t width_;
    BoundaryMode boundary_;
    std::vector<int> degree_;
    std::vector<std::array<std::size_t, 4>> nbr_;
};

}  // namespace fdedit
