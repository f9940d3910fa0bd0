// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "fdedit/error.hpp"
#include "fdedit/reference.hpp"

namespace fdedit::reference {

Image gaussian_lowpass(const Image& img, const LowpassConfig& cfg) {
    cfg.validate();
    if (img.empty()) throw ShapeError("gaussian_lowpass: empty image");
    const int r = cfg.radius();
    if (r == 0) return img;
    const auto w = gaussian_kernel(cfg.sigma, r);
    const auto h = static_cast<std::ptrdiff_t>(img.height());
    const auto wd = static_cast<std::ptrdiff_t>(img.width());
    const auto ch = static_cast<std::ptrdiff_t>(img.channels());

    Image tmp(img.height(), img.width(), img.channels());
    for (std::ptrdiff_t y = 0; y < h; ++y)
        for (std::ptrdiff_t x = 0; x < wd; ++x)
            for (std::ptrdiff_t c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int k = -r; k <= r; ++k)
                    acc += w[k + r] * img.at(y, boundary_index(x + k, wd, cfg.boundary), c);
                tmp.at(y, x, c) = acc;
            }

    Image out(img.height(), img.width(), img.channels());
    for (std::ptrdiff_t y = 0; y < h; ++y)
        for (std::ptrdiff_t x = 0; x < wd; ++x)
            for (std::ptrdiff_t c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int k = -r; k <= r; ++k)
                    acc += w[k + r] * tmp.at(boundary_index(y + k, h, cfg.boundary), x, c);
                out.at(y, x, c) = acc;
            }
    return out;
}

Image resample(const Image& img, std::size_t new_height, std::size_t new_width) {
    if (new_height == 0 || new_width == 0) throw ShapeError("resample: target size must be >= 1x1");
    if (img.empty()) throw ShapeError("resample: empty image");
    if (new_height == img.height() && new_width == img.width()) return img;

    auto source = [](std::size_t i, std::size_t n_src, std::size_t n_dst) {
        const double scale = static_cast<double>(n_src) / static_cast<double>(n_dst);
        return std::clamp((static_cast<double>(i) + 0.5) * scale - 0.5, 0.0, static_cast<double>(n_src - 1));
    };
    Image out(new_height, new_width, img.channels());
    for (std::size_t y = 0; y < new_height; ++y) {
        const double sy = source(y, img.height(), new_height);
        const auto y0 = static_cast<std::size_t>(std::floor(sy));
        const auto y1 = std::min(y0 + 1, img.height() - 1);
        const double fy = sy - static_cast<double>(y0);
        for (std::size_t x = 0; x < new_width; ++x) {
            const double sx = source(x, img.width(), new_width);
            const auto x0 = static_cast<std::size_t>(std::floor(sx));
            const auto x1 = std::min(x0 + 1, img.width() - 1);
            const double fx = sx - static_cast<double>(x0);
            for (std::size_t c = 0; c < img.channels(); ++c) {
                const double top = img.at(y0, x0, c) + fx * (img.at(y0, x1, c) - img.at(y0, x0, c));
                const double bot = img.at(y1, x0, c) + fx * (img.at(y1, x1, c) - img.at(y1, x0, c));
                out.at(y, x, c) = top + fy * (bot - top);
            }
        }
    }
    return out;
}

Gradients gradient(const Image& img, BoundaryMode boundary) {
    if (img.channels() != 1) throw ShapeError("gradient: expected a single-channel (luminance) image");
    if (img.height() < 3 || img.width() < 3) throw ShapeError("gradient: image must be at least 3x3");
    const auto h = static_cast<std::ptrdiff_t>(img.height());
    const auto w = static_cast<std::ptrdiff_t>(img.width());
    Gradients g{Image(img.height(), img.width(), 1), Image(img.height(), img.width(), 1)};
    for (std::ptrdiff_t y = 0; y < h; ++y)
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            g.gx.at(y, x) = 0.5 * (img.at(y, boundary_index(x + 1, w, boundary)) -
                                   img.at(y, boundary_index(x - 1, w, boundary)));
            g.gy.at(y, x) = 0.5 * (img.at(boundary_index(y + 1, h, boundary), x) -
                                   img.at(boundary_index(y - 1, h, boundary), x));
        }
    return g;
}

}  // namespace fdedit::reference
