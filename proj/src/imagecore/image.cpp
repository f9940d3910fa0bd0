// SPDX-License-Identifier: Apache-2.0
#include "fdedit/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdedit/error.hpp"

namespace fdedit {

std::string to_string(BoundaryMode mode) {
    return mode == BoundaryMode::Circular ? "circular" : "reflect";
}

BoundaryMode boundary_from_string(const std::string& name) {
    if (name == "circular") return BoundaryMode::Circular;
    if (name == "reflect") return BoundaryMode::Reflect;
    throw ConfigError("unknown boundary mode '" + name + "' (expected circular or reflect)");
}

Image::Image(std::size_t height, std::size_t width, std::size_t channels, double fill)
    : height_(height), width_(width), channels_(channels), data_(height * width * channels, fill) {}

Image::Image(std::size_t height, std::size_t width, std::size_t channels, std::vector<double> data)
    : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
    if (data_.size() != height * width * channels) {
        throw ShapeError("image data length " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(height) + "x" + std::to_string(width) + "x" +
                         std::to_string(channels));
    }
}

Image Image::channel(std::size_t c) const {
    if (c >= channels_) throw ShapeError("channel index out of range");
    Image out(height_, width_, 1);
    for (std::size_t i = 0; i < pixel_count(); ++i) out.data_[i] = data_[i * channels_ + c];
    return out;
}

bool Image::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Image::mean() const noexcept {
    if (data_.empty()) return 0.0;
    double s = 0.0;
    for (double v : data_) s += v;
    return s / static_cast<double>(data_.size());
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
    if (!a.same_shape(b)) {
        auto dims = [](const Image& i) {
            return std::to_string(i.height()) + "x" + std::to_string(i.width()) + "x" +
                   std::to_string(i.channels());
        };
        throw ShapeError(std::string(what) + ": shape mismatch " + dims(a) + " vs " + dims(b));
    }
}

namespace {

template <class Op>
Image zip(const Image& a, const Image& b, const char* what, Op op) {
    require_same_shape(a, b, what);
    Image out(a.height(), a.width(), a.channels());
    auto da = a.data();
    auto db = b.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = op(da[i], db[i]);
    return out;
}

template <class Op>
Image map(const Image& a, Op op) {
    Image out(a.height(), a.width(), a.channels());
    auto src = a.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = op(src[i]);
    return out;
}

}  // namespace

Image operator+(const Image& a, const Image& b) {
    return zip(a, b, "add", [](double x, double y) { return x + y; });
}

Image operator-(const Image& a, const Image& b) {
    return zip(a, b, "subtract", [](double x, double y) { return x - y; });
}

Image operator*(double s, const Image& a) {
    return map(a, [s](double x) { return s * x; });
}

Image add_scalar(const Image& a, double s) {
    return map(a, [s](double x) { return x + s; });
}

Image clamp01(const Image& a) {
    return map(a, [](double x) { return std::clamp(x, 0.0, 1.0); });
}

double max_abs_diff(const Image& a, const Image& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double rmse(const Image& a, const Image& b) {
    require_same_shape(a, b, "rmse");
    if (a.empty()) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(a.size()));
}

double l2_norm(const Image& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

Image luminance(const Image& img) {
    if (img.channels() == 1) return img;
    if (img.channels() != 3) throw ShapeError("luminance: expected 1 or 3 channels");
    Image out(img.height(), img.width(), 1);
    for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            out.at(y, x) = 0.2126 * img.at(y, x, 0) + 0.7152 * img.at(y, x, 1) + 0.0722 * img.at(y, x, 2);
        }
    }
    return out;
}

}  // namespace fdedit
