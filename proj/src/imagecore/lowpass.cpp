// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <string>

#include "fdedit/error.hpp"
#include "fdedit/lowpass.hpp"

namespace fdedit {

int LowpassConfig::radius() const {
    return kernel_radius ? *kernel_radius : static_cast<int>(std::ceil(3.0 * sigma));
}

void LowpassConfig::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ConfigError("lowpass sigma must be > 0, got " + std::to_string(sigma));
    }
    if (kernel_radius && *kernel_radius < 0) throw ConfigError("kernel_radius must be >= 0");
    if (downscale < 1) throw ConfigError("downscale must be >= 1, got " + std::to_string(downscale));
}

std::vector<double> gaussian_kernel(double sigma, int radius) {
    if (!(sigma > 0.0)) throw ConfigError("gaussian_kernel: sigma must be > 0");
    if (radius < 0) throw ConfigError("gaussian_kernel: radius must be >= 0");
    std::vector<double> w(2 * static_cast<std::size_t>(radius) + 1);
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double v = std::exp(-0.5 * (k * k) / (sigma * sigma));
        w[k + radius] = v;
        sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
}

Image gaussian_lowpass(const Image& img, const LowpassConfig& cfg) {
    cfg.validate();
    if (img.empty()) throw ShapeError("gaussian_lowpass: empty image");
    const int r = cfg.radius();
    if (r == 0) return img;
    const auto w = gaussian_kernel(cfg.sigma, r);

    const auto h = static_cast<std::ptrdiff_t>(img.height());
    const auto wd = static_cast<std::ptrdiff_t>(img.width());
    const auto ch = static_cast<std::ptrdiff_t>(img.channels());

    // Horizontal pass then vertical pass; each output sample accumulates its
    // taps in a fixed order, so results do not depend on the thread count.
    Image tmp(img.height(), img.width(), img.channels());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        for (std::ptrdiff_t x = 0; x < wd; ++x) {
            for (std::ptrdiff_t c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int k = -r; k <= r; ++k) {
                    const auto xs = boundary_index(x + k, wd, cfg.boundary);
                    acc += w[k + r] * img.at(y, xs, c);
                }
                tmp.at(y, x, c) = acc;
            }
        }
    }

    Image out(img.height(), img.width(), img.channels());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        for (std::ptrdiff_t x = 0; x < wd; ++x) {
            for (std::ptrdiff_t c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int k = -r; k <= r; ++k) {
                    const auto ys = boundary_index(y + k, h, cfg.boundary);
                    acc += w[k + r] * tmp.at(ys, x, c);
                }
                out.at(y, x, c) = acc;
            }
        }
    }
    return out;
}

}  // namespace fdedit
