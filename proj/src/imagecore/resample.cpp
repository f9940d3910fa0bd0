// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <vector>

#include "fdedit/error.hpp"
#include "fdedit/lowpass.hpp"

namespace fdedit {
namespace detail {

struct Tap {
    std::size_t i0;
    std::size_t i1;
    double f;
};

// Source position of target sample i is (i + 0.5) * n_src / n_dst - 0.5,
// clamped to the valid range.
std::vector<Tap> bilinear_taps(std::size_t n_src, std::size_t n_dst) {
    std::vector<Tap> taps(n_dst);
    const double scale = static_cast<double>(n_src) / static_cast<double>(n_dst);
    const double hi = static_cast<double>(n_src - 1);
    for (std::size_t i = 0; i < n_dst; ++i) {
        const double s = std::clamp((static_cast<double>(i) + 0.5) * scale - 0.5, 0.0, hi);
        const auto i0 = static_cast<std::size_t>(std::floor(s));
        taps[i] = {i0, std::min(i0 + 1, n_src - 1), s - static_cast<double>(i0)};
    }
    return taps;
}

}  // namespace detail

Image resample(const Image& img, std::size_t new_height, std::size_t new_width) {
    if (new_height == 0 || new_width == 0) throw ShapeError("resample: target size must be >= 1x1");
    if (img.empty()) throw ShapeError("resample: empty image");
    if (new_height == img.height() && new_width == img.width()) return img;

    const auto ty = detail::bilinear_taps(img.height(), new_height);
    const auto tx = detail::bilinear_taps(img.width(), new_width);
    const auto ch = img.channels();
    Image out(new_height, new_width, ch);

    // a + f * (b - a) keeps constant images bit-exact.
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t yy = 0; yy < static_cast<std::ptrdiff_t>(new_height); ++yy) {
        const auto& vy = ty[yy];
        for (std::size_t x = 0; x < new_width; ++x) {
            const auto& vx = tx[x];
            for (std::size_t c = 0; c < ch; ++c) {
                const double a = img.at(vy.i0, vx.i0, c);
                const double b = img.at(vy.i0, vx.i1, c);
                const double d = img.at(vy.i1, vx.i0, c);
                const double e = img.at(vy.i1, vx.i1, c);
                const double top = a + vx.f * (b - a);
                const double bot = d + vx.f * (e - d);
                out.at(yy, x, c) = top + vy.f * (bot - top);
            }
        }
    }
    return out;
}

}  // namespace fdedit
