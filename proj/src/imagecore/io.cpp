// SPDX-License-Identifier: Apache-2.0
#include "fdedit/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "fdedit/error.hpp"

namespace fdedit {

Image read_png(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw IoError(path.string(), "no such file");

    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
        throw IoError(path.string(), std::string("cannot decode PNG: ") + image.message);
    }
    const bool gray = (image.format & PNG_FORMAT_FLAG_COLOR) == 0;
    image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    const std::size_t channels = gray ? 1 : 3;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        png_image_free(&image);
        throw IoError(path.string(), std::string("cannot decode PNG: ") + image.message);
    }

    Image out(image.height, image.width, channels);
    auto dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = buffer[i] / 255.0;
    return out;
}

void write_png(const Image& img, const std::filesystem::path& path) {
    if (img.channels() != 1 && img.channels() != 3) {
        throw ShapeError("write_png: expected 1 or 3 channels, got " + std::to_string(img.channels()));
    }
    if (img.empty()) throw ShapeError("write_png: empty image");

    std::vector<png_byte> buffer(img.size());
    auto src = img.data();
    for (std::size_t i = 0; i < buffer.size(); ++i) {
        const double v = std::isfinite(src[i]) ? std::clamp(src[i], 0.0, 1.0) : 0.0;
        buffer[i] = static_cast<png_byte>(std::lround(v * 255.0));
    }

    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = img.channels() == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, buffer.data(), 0, nullptr)) {
        throw IoError(path.string(), std::string("cannot write PNG: ") + image.message);
    }
}

namespace {

std::uint32_t byteswap32(std::uint32_t v) {
    return (v >> 24) | ((v >> 8) & 0xff00u) | ((v << 8) & 0xff0000u) | (v << 24);
}

}  // namespace

Image read_pfm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot open for reading");

    std::string magic;
    std::size_t width = 0;
    std::size_t height = 0;
    double scale = 0.0;
    in >> magic >> width >> height >> scale;
    if (!in || (magic != "PF" && magic != "Pf") || width == 0 || height == 0 || scale == 0.0) {
        throw IoError(path.string(), "malformed PFM header");
    }
    in.get();  // single whitespace byte terminates the header

    const std::size_t channels = magic == "PF" ? 3 : 1;
    const bool file_little = scale < 0.0;
    const bool host_little = std::endian::native == std::endian::little;
    std::vector<std::uint32_t> raw(width * height * channels);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 4));
    if (in.gcount() != static_cast<std::streamsize>(raw.size() * 4)) {
        throw IoError(path.string(), "truncated PFM payload");
    }

    Image out(height, width, channels);
    for (std::size_t row = 0; row < height; ++row) {
        const std::size_t y = height - 1 - row;
        for (std::size_t i = 0; i < width * channels; ++i) {
            std::uint32_t bits = raw[row * width * channels + i];
            if (file_little != host_little) bits = byteswap32(bits);
            out.data()[y * width * channels + i] = static_cast<double>(std::bit_cast<float>(bits));
        }
    }
    return out;
}

void write_pfm(const Image& img, const std::filesystem::path& path) {
    if (img.channels() != 1 && img.channels() != 3) {
        throw ShapeError("write_pfm: expected 1 or 3 channels, got " + std::to_string(img.channels()));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string(), "cannot open for writing");

    out << (img.channels() == 3 ? "PF" : "Pf") << '\n'
        << img.width() << ' ' << img.height() << '\n'
        << "-1.0\n";
    const std::size_t row_len = img.width() * img.channels();
    std::vector<std::uint32_t> row(row_len);
    for (std::size_t r = 0; r < img.height(); ++r) {
        const std::size_t y = img.height() - 1 - r;
        for (std::size_t i = 0; i < row_len; ++i) {
            auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(img.data()[y * row_len + i]));
            if constexpr (std::endian::native != std::endian::little) bits = byteswap32(bits);
            row[i] = bits;
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row_len * 4));
    }
    if (!out) throw IoError(path.string(), "write failed");
}

}  // namespace fdedit
