// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>

#include "fdedit/image.hpp"

namespace fdedit {

/// Reads an 8-bit PNG as [0,1] samples (no gamma transform). Gray and gray+alpha
/// load as one channel, everything else as RGB; alpha is dropped.
Image read_png(const std::filesystem::path& path);

/// Writes 1- or 3-channel images as 8-bit PNG, clamping to [0,1] and rounding.
void write_png(const Image& img, const std::filesystem::path& path);

/// Portable float map: "Pf" (1 channel) or "PF" (3 channels), little-endian,
/// rows stored bottom-to-top. Samples are stored as float32.
Image read_pfm(const std::filesystem::path& path);
void write_pfm(const Image& img, const std::filesystem::path& path);

}  // namespace fdedit
