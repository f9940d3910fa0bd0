// SPDX-License-Identifier: Apache-2.0
#include "fdedit/freqpipe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdedit/error.hpp"

namespace fdedit {

namespace {

void require_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ConfigError(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
    }
}

LowpassConfig full_resolution(const LowpassConfig& cfg) {
    LowpassConfig c = cfg;
    c.downscale = 1;
    return c;
}

}  // namespace

void BlendParams::validate() const {
    require_unit(alpha, "alpha");
    require_unit(lambda1, "lambda1");
    require_unit(lambda2, "lambda2");
}

IntensityLevel::IntensityLevel(double l) : l_(l) { require_unit(l, "intensity level"); }

Decomposition decompose(const Image& img, const LowpassConfig& cfg) {
    cfg.validate();
    const auto d = static_cast<std::size_t>(cfg.downscale);
    if (img.empty() || img.height() < d || img.width() < d) {
        throw ShapeError("decompose: image " + std::to_string(img.height()) + "x" +
                         std::to_string(img.width()) + " is smaller than the downscale factor " +
                         std::to_string(d));
    }
    Decomposition dec;
    const Image smoothed = gaussian_lowpass(img, cfg);
    dec.low_ds = resample(smoothed, img.height() / d, img.width() / d);
    dec.low_full = resample(dec.low_ds, img.height(), img.width());
    dec.high = img - dec.low_full;
    return dec;
}

Image blend_detail(const Image& styled_low_ds, const Decomposition& dec, double alpha) {
    require_same_shape(styled_low_ds, dec.low_ds, "blend_detail");
    require_unit(alpha, "alpha");
    const Image up = resample(styled_low_ds, dec.high.height(), dec.high.width());
    if (alpha == 0.0) return up;
    return up + alpha * dec.high;
}

Image intensity_mix(const Image& low_ds, const Image& styled_low_ds, IntensityLevel level) {
    require_same_shape(low_ds, styled_low_ds, "intensity_mix");
    const double l = level.value();
    if (l == 0.0) return low_ds;
    if (l == 1.0) return styled_low_ds;
    Image out(low_ds.height(), low_ds.width(), low_ds.channels());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.data()[i] = l * styled_low_ds.data()[i] + (1.0 - l) * low_ds.data()[i];
    }
    return out;
}

Image enhance_simple(const Image& edited, const Image& original, const LowpassConfig& cfg) {
    require_same_shape(edited, original, "enhance_simple");
    const auto c = full_resolution(cfg);
    const Image e_low = gaussian_lowpass(edited, c);
    const Image o_low = gaussian_lowpass(original, c);
    return e_low + (original - o_low);
}

Image change_mask(const Image& edited, const Image& original, const LowpassConfig& cfg) {
    require_same_shape(edited, original, "change_mask");
    const auto c = full_resolution(cfg);
    const Image e_low = gaussian_lowpass(edited, c);
    const Image o_low = gaussian_lowpass(original, c);
    Image mask(edited.height(), edited.width(), 1);
    for (std::size_t y = 0; y < mask.height(); ++y) {
        for (std::size_t x = 0; x < mask.width(); ++x) {
            double m = 0.0;
            for (std::size_t ch = 0; ch < edited.channels(); ++ch) {
                m = std::max(m, std::abs(e_low.at(y, x, ch) - o_low.at(y, x, ch)));
            }
            mask.at(y, x) = std::min(m, 1.0);
        }
    }
    return mask;
}

Image enhance_masked(const Image& edited, const Image& original, const BlendParams& params,
                     const LowpassConfig& cfg) {
    require_same_shape(edited, original, "enhance_masked");
    params.validate();
    const auto c = full_resolution(cfg);
    const Image e_low = gaussian_lowpass(edited, c);
    const Image o_low = gaussian_lowpass(original, c);
    const Image mask = change_mask(edited, original, cfg);

    Image out(edited.height(), edited.width(), edited.channels());
    for (std::size_t y = 0; y < out.height(); ++y) {
        for (std::size_t x = 0; x < out.width(); ++x) {
            const double a = mask.at(y, x);
            for (std::size_t ch = 0; ch < out.channels(); ++ch) {
                const double e_high = edited.at(y, x, ch) - e_low.at(y, x, ch);
                const double o_high = original.at(y, x, ch) - o_low.at(y, x, ch);
                out.at(y, x, ch) = e_low.at(y, x, ch) + params.lambda1 * a * e_high +
                                   params.lambda2 * (1.0 - a) * o_high;
            }
        }
    }
    return out;
}

Image mask_recompose(const Image& edited, const Image& original, const Image& mask) {
    require_same_shape(edited, original, "mask_recompose");
    if (mask.channels() != 1 || mask.height() != edited.height() || mask.width() != edited.width()) {
        throw ShapeError("mask_recompose: mask must be single-channel with the image's height and width");
    }
    for (double m : mask.data()) {
        if (!(m >= 0.0 && m <= 1.0)) throw ConfigError("mask_recompose: mask values must lie in [0,1]");
    }
    Image out(edited.height(), edited.width(), edited.channels());
    for (std::size_t y = 0; y < out.height(); ++y) {
        for (std::size_t x = 0; x < out.width(); ++x) {
            const double m = mask.at(y, x);
            for (std::size_t ch = 0; ch < out.channels(); ++ch) {
                out.at(y, x, ch) = m * edited.at(y, x, ch) + (1.0 - m) * original.at(y, x, ch);
            }
        }
    }
    return out;
}

}  // namespace fdedit
