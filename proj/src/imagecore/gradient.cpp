// SPDX-License-Identifier: Apache-2.0
#include "fdedit/error.hpp"
#include "fdedit/lowpass.hpp"

namespace fdedit {

Gradients gradient(const Image& img, BoundaryMode boundary) {
    if (img.channels() != 1) throw ShapeError("gradient: expected a single-channel (luminance) image");
    if (img.height() < 3 || img.width() < 3) throw ShapeError("gradient: image must be at least 3x3");

    const auto h = static_cast<std::ptrdiff_t>(img.height());
    const auto w = static_cast<std::ptrdiff_t>(img.width());
    Gradients g{Image(img.height(), img.width(), 1), Image(img.height(), img.width(), 1)};

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        const auto yu = boundary_index(y - 1, h, boundary);
        const auto yd = boundary_index(y + 1, h, boundary);
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            const auto xl = boundary_index(x - 1, w, boundary);
            const auto xr = boundary_index(x + 1, w, boundary);
            g.gx.at(y, x) = 0.5 * (img.at(y, xr) - img.at(y, xl));
            g.gy.at(y, x) = 0.5 * (img.at(yd, x) - img.at(yu, x));
        }
    }
    return g;
}

}  // namespace fdedit
