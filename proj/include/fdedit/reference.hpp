// SPDX-License-Identifier: Apache-2.0
#pragma once

// Serial reference kernels. They follow the same arithmetic as the OpenMP
// kernels in a single plain loop nest and exist for equivalence tests and the
// benchmark; production paths call the parallel versions.

#include "fdedit/lowpass.hpp"

namespace fdedit::reference {

Image gaussian_lowpass(const Image& img, const LowpassConfig& cfg);
Image resample(const Image& img, std::size_t new_height, std::size_t new_width);
Gradients gradient(const Image& img, BoundaryMode boundary = BoundaryMode::Circular);

}  // namespace fdedit::reference
