// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "fdedit/image.hpp"
#include "fdedit/random.hpp"

namespace fdedit {

struct ImagePair {
    Image i1;
    Image i2;
};

/// Draws one pair from a trial-local generator.
using PairGenerator = std::function<ImagePair(Rng&)>;

/// Smooth periodic test views: a sum of low-frequency cosines (integer
/// frequencies, so the field is periodic on the grid), the second view being
/// the same field translated by a sub-pixel shift plus a small smooth
/// perturbation standing in for view-dependent effects.
struct SmoothPairConfig {
    std::size_t size = 16;
    std::size_t channels = 1;
    int waves = 6;
    int max_frequency = 3;
    double amplitude = 0.08;     ///< per wave
    double max_shift = 1.0;      ///< pixels, per axis
    double perturbation = 0.01;  ///< std of the smooth perturbation
};

ImagePair make_smooth_pair(const SmoothPairConfig& cfg, Rng& rng);

PairGenerator smooth_pair_generator(SmoothPairConfig cfg);

/// Subtracts the per-channel mean of (i2 - i1) from i2 so that 1^T b = 0.
ImagePair enforce_color_consistency(ImagePair pair);

}  // namespace fdedit
