// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "fdedit/image.hpp"

namespace fdedit {

struct PairScore {
    double rmse = 0.0;
    double valid_fraction = 0.0;  ///< pixels used / all pixels
    std::size_t n_pixels = 0;
};

/// Bilinear sample of channel c at continuous pixel position (x, y); the
/// position must lie in [0, W-1] x [0, H-1].
double bilinear_sample(const Image& img, double x, double y, std::size_t c);

/// Samples i1 at p + (u(p), v(p)) and compares with i2(p) over pixels where
/// valid > 0.5 and the sample position lies inside i1. RMSE is taken over
/// all channels of those pixels. Throws DegenerateError ("no overlap") when
/// no pixel qualifies and ShapeError when shapes disagree.
PairScore warped_rmse(const Image& i1, const Image& i2, const Image& u, const Image& v, const Image& valid);

/// Variance of the circular 4-neighbour Laplacian of the luminance, on the
/// 0-255 intensity scale.
double sharpness(const Image& img);

}  // namespace fdedit
