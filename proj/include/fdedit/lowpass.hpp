// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "fdedit/image.hpp"

namespace fdedit {

/// Parameters of the Gaussian low-pass filter and the low-frequency branch.
struct LowpassConfig {
    double sigma = 2.0;                  ///< full-resolution pixels, > 0
    std::optional<int> kernel_radius;    ///< default ceil(3 sigma)
    int downscale = 4;                   ///< low branch works at 1/downscale resolution
    BoundaryMode boundary = BoundaryMode::Circular;

    int radius() const;
    /// Throws ConfigError on sigma <= 0, negative radius or downscale < 1.
    void validate() const;
};

/// Normalized 1-D Gaussian taps w[-r..r] (stored at index k + r); sums to 1.
std::vector<double> gaussian_kernel(double sigma, int radius);

/// Separable convolution with the normalized Gaussian, per channel.
/// Same shape out; `cfg.downscale` is ignored here.
Image gaussian_lowpass(const Image& img, const LowpassConfig& cfg);

/// Bilinear resampling with half-pixel-centred sampling and edge clamping.
/// Resampling to the same size returns an exact copy.
Image resample(const Image& img, std::size_t new_height, std::size_t new_width);

struct Gradients {
    Image gx;
    Image gy;
};

/// Central differences (I(x+1) - I(x-1)) / 2 on a single-channel image of at
/// least 3 x 3; neighbours outside the grid follow `boundary`.
Gradients gradient(const Image& img, BoundaryMode boundary = BoundaryMode::Circular);

}  // namespace fdedit
