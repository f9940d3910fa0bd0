// SPDX-License-Identifier: Apache-2.0
#include "fdedit/pair_generator.hpp"

#include <cmath>
#include <numbers>

#include "fdedit/error.hpp"
#include "fdedit/lowpass.hpp"

namespace fdedit {

namespace {

struct Wave {
    double fx, fy;
    double amp[3];
    double phase[3];
};

}  // namespace

ImagePair make_smooth_pair(const SmoothPairConfig& cfg, Rng& rng) {
    if (cfg.size < 3) throw ConfigError("make_smooth_pair: size must be >= 3");
    if (cfg.channels != 1 && cfg.channels != 3) throw ConfigError("make_smooth_pair: channels must be 1 or 3");
    const std::size_t n = cfg.size;
    const double two_pi_n = 2.0 * std::numbers::pi / static_cast<double>(n);

    std::vector<Wave> waves(static_cast<std::size_t>(cfg.waves));
    for (auto& w : waves) {
        do {
            w.fx = rng.uniform_int(-cfg.max_frequency, cfg.max_frequency);
            w.fy = rng.uniform_int(-cfg.max_frequency, cfg.max_frequency);
        } while (w.fx == 0 && w.fy == 0);
        for (int c = 0; c < 3; ++c) {
            w.amp[c] = cfg.amplitude * rng.uniform(0.25, 1.0);
            w.phase[c] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
    }
    const double dx = rng.uniform(-cfg.max_shift, cfg.max_shift);
    const double dy = rng.uniform(-cfg.max_shift, cfg.max_shift);

    auto field = [&](double x, double y, std::size_t c) {
        double v = 0.5;
        for (const auto& w : waves) v += w.amp[c] * std::cos(two_pi_n * (w.fx * x + w.fy * y) + w.phase[c]);
        return v;
    };

    Image noise(n, n, cfg.channels);
    for (double& v : noise.data()) v = rng.normal();
    LowpassConfig smooth;
    smooth.sigma = 1.5;
    noise = gaussian_lowpass(noise, smooth);
    double var = 0.0;
    for (double v : noise.data()) var += v * v;
    const double scale = var > 0.0 ? cfg.perturbation / std::sqrt(var / static_cast<double>(noise.size())) : 0.0;

    ImagePair pair{Image(n, n, cfg.channels), Image(n, n, cfg.channels)};
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t c = 0; c < cfg.channels; ++c) {
                const auto xd = static_cast<double>(x), yd = static_cast<double>(y);
                pair.i1.at(y, x, c) = field(xd, yd, c);
                pair.i2.at(y, x, c) = field(xd - dx, yd - dy, c) + scale * noise.at(y, x, c);
            }
        }
    }
    return pair;
}

PairGenerator smooth_pair_generator(SmoothPairConfig cfg) {
    return [cfg](Rng& rng) { return make_smooth_pair(cfg, rng); };
}

ImagePair enforce_color_consistency(ImagePair pair) {
    require_same_shape(pair.i1, pair.i2, "enforce_color_consistency");
    const std::size_t ch = pair.i1.channels();
    for (std::size_t c = 0; c < ch; ++c) {
        double s = 0.0;
        for (std::size_t p = 0; p < pair.i1.pixel_count(); ++p) s += pair.i2.data()[p * ch + c] - pair.i1.data()[p * ch + c];
        const double m = s / static_cast<double>(pair.i1.pixel_count());
        for (std::size_t p = 0; p < pair.i1.pixel_count(); ++p) pair.i2.data()[p * ch + c] -= m;
    }
    return pair;
}

}  // namespace fdedit
