// SPDX-License-Identifier: Apache-2.0
#pragma once

// Frequency-decomposed editing.
//
// The learned feature renderer, stylizer and decoder are replaced by their
// image-space counterparts: the "low-frequency feature map" is the downscaled
// Gaussian low-pass image itself and the decoder is the identity. Every
// blending formula keeps its algebraic form, so
//
//   styled = up(styled_low) + alpha * (I - up(low))
//   mixed  = l * styled_low + (1 - l) * low
//
// hold exactly as written. Intermediate images are never clamped; only PNG
// output clamps to [0,1].

#include "fdedit/image.hpp"
#include "fdedit/lowpass.hpp"

namespace fdedit {

struct Decomposition {
    Image low_ds;    ///< low-pass, downscaled by cfg.downscale (dimensions rounded down)
    Image low_full;  ///< low_ds bilinearly upsampled to the source size
    Image high;      ///< source - low_full (signed)
};

struct BlendParams {
    double alpha = 1.0;    ///< high-frequency blend weight
    double lambda1 = 1.0;  ///< weight of the edited high band inside the change mask
    double lambda2 = 1.0;  ///< weight of the original high band outside it

    void validate() const;
};

/// Editing strength: 0 = no edit, 1 = full edit.
class IntensityLevel {
public:
    explicit IntensityLevel(double l);
    double value() const noexcept { return l_; }

private:
    double l_;
};

Decomposition decompose(const Image& img, const LowpassConfig& cfg);

/// up(styled_low_ds) + alpha * dec.high, unclamped.
Image blend_detail(const Image& styled_low_ds, const Decomposition& dec, double alpha);

/// level * styled + (1 - level) * low, per sample.
Image intensity_mix(const Image& low_ds, const Image& styled_low_ds, IntensityLevel level);

/// lowpass(edited) + (original - lowpass(original)) at full resolution.
Image enhance_simple(const Image& edited, const Image& original, const LowpassConfig& cfg);

/// Change mask used by enhance_masked: per-channel |lowpass(edited) - lowpass(original)|,
/// max-reduced over channels and clamped to [0,1]. Single channel.
Image change_mask(const Image& edited, const Image& original, const LowpassConfig& cfg);

/// e_low + lambda1 * a * e_high + lambda2 * (1 - a) * o_high with a = change_mask(...).
/// The mask is used raw (no blur, no threshold).
Image enhance_masked(const Image& edited, const Image& original, const BlendParams& params,
                     const LowpassConfig& cfg);

/// mask * edited + (1 - mask) * original; mask is single-channel in [0,1] and
/// is broadcast across channels.
Image mask_recompose(const Image& edited, const Image& original, const Image& mask);

}  // namespace fdedit
