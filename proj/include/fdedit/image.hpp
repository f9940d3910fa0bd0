// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fdedit {

/// Boundary handling for stencils and convolutions.
///
/// Circular wraps indices around the torus; the induced smoothing matrix is
/// symmetric and doubly stochastic. Reflect mirrors about the edge
/// (d c b a | a b c d) and only preserves constants (row sums 1).
enum class BoundaryMode { Circular, Reflect };

std::string to_string(BoundaryMode mode);
BoundaryMode boundary_from_string(const std::string& name);

/// Maps an arbitrary (possibly negative or overflowing) index into [0, n).
inline std::ptrdiff_t boundary_index(std::ptrdiff_t i, std::ptrdiff_t n, BoundaryMode mode) {
    if (mode == BoundaryMode::Circular) {
        std::ptrdiff_t r = i % n;
        return r < 0 ? r + n : r;
    }
    const std::ptrdiff_t period = 2 * n;
    std::ptrdiff_t r = i % period;
    if (r < 0) r += period;
    return r < n ? r : period - 1 - r;
}

/// Row-major H x W x C grid of doubles. Nominal range [0,1]; intermediate
/// results may leave it. Channels are interleaved.
class Image {
public:
    Image() = default;
    Image(std::size_t height, std::size_t width, std::size_t channels, double fill = 0.0);
    Image(std::size_t height, std::size_t width, std::size_t channels, std::vector<double> data);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t channels() const noexcept { return channels_; }
    std::size_t pixel_count() const noexcept { return height_ * width_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& at(std::size_t y, std::size_t x, std::size_t c = 0) noexcept {
        return data_[(y * width_ + x) * channels_ + c];
    }
    double at(std::size_t y, std::size_t x, std::size_t c = 0) const noexcept {
        return data_[(y * width_ + x) * channels_ + c];
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    bool same_shape(const Image& other) const noexcept {
        return height_ == other.height_ && width_ == other.width_ && channels_ == other.channels_;
    }

    /// Extracts one channel as a single-channel image.
    Image channel(std::size_t c) const;

    bool all_finite() const noexcept;
    double mean() const noexcept;

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::size_t channels_ = 0;
    std::vector<double> data_;
};

/// Throws ShapeError unless a and b have identical shape. `what` names the operation.
void require_same_shape(const Image& a, const Image& b, const char* what);

// Elementwise helpers. All return new images; shapes must match.
Image operator+(const Image& a, const Image& b);
Image operator-(const Image& a, const Image& b);
Image operator*(double s, const Image& a);
Image add_scalar(const Image& a, double s);
Image clamp01(const Image& a);

double max_abs_diff(const Image& a, const Image& b);
double rmse(const Image& a, const Image& b);
double l2_norm(const Image& a);

/// Rec. 709 luminance (0.2126 R + 0.7152 G + 0.0722 B); single-channel input is copied.
Image luminance(const Image& img);

}  // namespace fdedit
