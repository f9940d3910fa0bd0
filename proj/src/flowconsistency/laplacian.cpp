// SPDX-License-Identifier: Apache-2.0
#include "fdedit/laplacian.hpp"

#include "fdedit/error.hpp"

namespace fdedit {

GridLaplacian::GridLaplacian(std::size_t height, std::size_t width, BoundaryMode boundary)
    : height_(height), width_(width), boundary_(boundary), degree_(height * width, 0), nbr_(height * width) {
    if (height < 3 || width < 3) throw ShapeError("GridLaplacian: grid must be at least 3x3");
    const std::size_t n = nodes();
    for (auto& slots : nbr_) slots.fill(n);

    auto link = [&](std::size_t p, std::size_t q) {
        nbr_[p][degree_[p]++] = q;
        nbr_[q][degree_[q]++] = p;
    };
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const std::size_t p = y * width + x;
            if (x + 1 < width) {
                link(p, p + 1);
            } else if (boundary == BoundaryMode::Circular) {
                link(p, y * width);
            }
            if (y + 1 < height) {
                link(p, p + width);
            } else if (boundary == BoundaryMode::Circular) {
                link(p, x);
            }
        }
    }
}

void GridLaplacian::apply(std::span<const double> v, std::span<double> out) const {
    const std::size_t n = nodes();
    for (std::size_t p = 0; p < n; ++p) {
        // sum of differences: a constant component cancels exactly
        double acc = 0.0;
        for (int k = 0; k < degree_[p]; ++k) acc += v[p] - v[nbr_[p][k]];
        out[p] = acc;
    }
}

Eigen::MatrixXd GridLaplacian::dense() const {
    const auto n = static_cast<Eigen::Index>(nodes());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
        L(p, p) = degree_[p];
        for (int k = 0; k < degree_[p]; ++k) L(p, static_cast<Eigen::Index>(nbr_[p][k])) -= 1.0;
    }
    return L;
}

}  // namespace fdedit
