// SPDX-License-Identifier: Apache-2.0
#include "fdedit/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "fdedit/error.hpp"

namespace fdedit {

double bilinear_sample(const Image& img, double x, double y, std::size_t c) {
    const std::size_t w = img.width(), h = img.height();
    const auto x0 = std::min(static_cast<std::size_t>(std::floor(x)), w - 1);
    const auto y0 = std::min(static_cast<std::size_t>(std::floor(y)), h - 1);
    const std::size_t x1 = std::min(x0 + 1, w - 1), y1 = std::min(y0 + 1, h - 1);
    const double fx = x - static_cast<double>(x0), fy = y - static_cast<double>(y0);
    const double top = img.at(y0, x0, c) + fx * (img.at(y0, x1, c) - img.at(y0, x0, c));
    const double bot = img.at(y1, x0, c) + fx * (img.at(y1, x1, c) - img.at(y1, x0, c));
    return top + fy * (bot - top);
}

PairScore warped_rmse(const Image& i1, const Image& i2, const Image& u, const Image& v, const Image& valid) {
    require_same_shape(i1, i2, "warped_rmse");
    if (u.height() != i1.height() || u.width() != i1.width() || u.channels() != 1)
        throw ShapeError("warped_rmse: flow must be single-channel and match the images");
    require_same_shape(u, v, "warped_rmse");
    require_same_shape(u, valid, "warped_rmse");
    const std::size_t h = i1.height(), w = i1.width(), ch = i1.channels();
    const double xmax = static_cast<double>(w) - 1.0, ymax = static_cast<double>(h) - 1.0;

    double sse = 0.0;
    std::size_t n = 0;
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            if (!(valid.at(y, x) > 0.5)) continue;
            const double sx = static_cast<double>(x) + u.at(y, x);
            const double sy = static_cast<double>(y) + v.at(y, x);
            if (!(sx >= 0.0 && sy >= 0.0 && sx <= xmax && sy <= ymax)) continue;
            for (std::size_t c = 0; c < ch; ++c) {
                const double d = bilinear_sample(i1, sx, sy, c) - i2.at(y, x, c);
                sse += d * d;
            }
            ++n;
        }
    if (n == 0) throw DegenerateError("warped_rmse: no overlap");
    return {std::sqrt(sse / static_cast<double>(n * ch)), static_cast<double>(n) / static_cast<double>(h * w), n};
}

double sharpness(const Image& img) {
    if (img.empty()) throw ShapeError("sharpness: empty image");
    const Image lum = luminance(img);
    const auto h = static_cast<std::ptrdiff_t>(lum.height());
    const auto w = static_cast<std::ptrdiff_t>(lum.width());
    const auto at = [&](std::ptrdiff_t y, std::ptrdiff_t x) {
        return 255.0 * lum.at(static_cast<std::size_t>(boundary_index(y, h, BoundaryMode::Circular)),
                              static_cast<std::size_t>(boundary_index(x, w, BoundaryMode::Circular)));
    };
    std::vector<double> lap(static_cast<std::size_t>(h * w));
    double mean = 0.0;
    for (std::ptrdiff_t y = 0; y < h; ++y)
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            const double l = at(y - 1, x) + at(y + 1, x) + at(y, x - 1) + at(y, x + 1) - 4.0 * at(y, x);
            lap[static_cast<std::size_t>(y * w + x)] = l;
            mean += l;
        }
    mean /= static_cast<double>(lap.size());
    double var = 0.0;
    for (double l : lap) var += (l - mean) * (l - mean);
    return var / static_cast<double>(lap.size());
}

}  // namespace fdedit
