// SPDX-License-Identifier: Apache-2.0
#include "fdedit/style.hpp"

#include <cmath>
#include <numbers>

#include "fdedit/error.hpp"

namespace fdedit {

Mat3 identity3() { return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}; }

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

bool finite(double v) { return std::isfinite(v); }

double tone(double x, double gamma) {
    return x >= 0.0 ? std::pow(x, gamma) : -std::pow(-x, gamma);
}

Image apply_affine(const AffineColor& a, const Image& img) {
    if (img.channels() != 3) throw ShapeError("apply_style: colour styles need a 3-channel image");
    Image out(img.height(), img.width(), 3);
    for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            const double r = img.at(y, x, 0), g = img.at(y, x, 1), b = img.at(y, x, 2);
            for (std::size_t c = 0; c < 3; ++c) {
                out.at(y, x, c) = a.matrix[c][0] * r + a.matrix[c][1] * g + a.matrix[c][2] * b + a.offset[c];
            }
        }
    }
    return out;
}

}  // namespace

void validate(const StyleOp& op) {
    std::visit(overloaded{
                   [](const AffineColor& a) {
                       for (const auto& row : a.matrix)
                           for (double v : row)
                               if (!finite(v)) throw ConfigError("affine_color: matrix entries must be finite");
                       for (double v : a.offset)
                           if (!finite(v)) throw ConfigError("affine_color: offset entries must be finite");
                   },
                   [](const ToneCurve& t) {
                       if (!(t.gamma > 0.0 && t.gamma <= 8.0)) {
                           throw ConfigError("tone_curve: gamma must lie in (0, 8], got " + std::to_string(t.gamma));
                       }
                   },
                   [](const PaletteShift& p) {
                       if (!finite(p.hue_rotation) || !finite(p.saturation_scale)) {
                           throw ConfigError("palette_shift: parameters must be finite");
                       }
                   },
               },
               op);
}

AffineColor to_affine(const PaletteShift& shift) {
    // Orthonormal opponent basis: rows are the two chroma axes and the grey axis.
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
    const Mat3 basis{{{1.0 / s2, -1.0 / s2, 0.0}, {1.0 / s6, 1.0 / s6, -2.0 / s6}, {1.0 / s3, 1.0 / s3, 1.0 / s3}}};
    const double th = shift.hue_rotation * std::numbers::pi / 180.0;
    const double k = shift.saturation_scale;
    const Mat3 core{{{k * std::cos(th), -k * std::sin(th), 0.0}, {k * std::sin(th), k * std::cos(th), 0.0}, {0.0, 0.0, 1.0}}};

    // matrix = basis^T * core * basis
    AffineColor a;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double v = 0.0;
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) v += basis[p][i] * core[p][q] * basis[q][j];
            a.matrix[i][j] = v;
        }
    }
    return a;
}

Image apply_style(const StyleOp& op, const Image& img) {
    validate(op);
    return std::visit(overloaded{
                          [&](const AffineColor& a) { return apply_affine(a, img); },
                          [&](const PaletteShift& p) { return apply_affine(to_affine(p), img); },
                          [&](const ToneCurve& t) {
                              if (img.channels() != 1 && img.channels() != 3) {
                                  throw ShapeError("apply_style: tone_curve needs 1 or 3 channels");
                              }
                              Image out(img.height(), img.width(), img.channels());
                              if (t.gamma == 1.0) return img;
                              for (std::size_t i = 0; i < img.size(); ++i) out.data()[i] = tone(img.data()[i], t.gamma);
                              return out;
                          },
                      },
                      op);
}

double commute_error(const StyleOp& op, const Image& img, const LowpassConfig& cfg) {
    LowpassConfig c = cfg;
    c.downscale = 1;
    const Image style_then_smooth = gaussian_lowpass(apply_style(op, img), c);
    const Image smooth_then_style = apply_style(op, gaussian_lowpass(img, c));
    return rmse(smooth_then_style, style_then_smooth);
}

nlohmann::json style_to_json(const StyleOp& op) {
    using nlohmann::json;
    return std::visit(overloaded{
                          [](const AffineColor& a) {
                              return json{{"type", "affine_color"}, {"matrix", a.matrix}, {"offset", a.offset}};
                          },
                          [](const ToneCurve& t) { return json{{"type", "tone_curve"}, {"gamma", t.gamma}}; },
                          [](const PaletteShift& p) {
                              return json{{"type", "palette_shift"},
                                          {"hue_rotation", p.hue_rotation},
                                          {"saturation_scale", p.saturation_scale}};
                          },
                      },
                      op);
}

StyleOp style_from_json(const nlohmann::json& j) {
    StyleOp op;
    try {
        if (!j.is_object() || !j.contains("type")) throw ConfigError("style JSON needs a \"type\" field");
        const auto type = j.at("type").get<std::string>();
        if (type == "affine_color") {
            AffineColor a;
            if (j.contains("matrix")) a.matrix = j.at("matrix").get<Mat3>();
            if (j.contains("offset")) a.offset = j.at("offset").get<Vec3>();
            op = a;
        } else if (type == "tone_curve") {
            op = ToneCurve{j.at("gamma").get<double>()};
        } else if (type == "palette_shift") {
            op = PaletteShift{j.value("hue_rotation", 0.0), j.value("saturation_scale", 1.0)};
        } else {
            throw ConfigError("unknown style type '" + type + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid style JSON: ") + e.what());
    }
    validate(op);
    return op;
}

std::string style_name(const StyleOp& op) {
    return std::visit(overloaded{
                          [](const AffineColor&) { return std::string("affine_color"); },
                          [](const ToneCurve&) { return std::string("tone_curve"); },
                          [](const PaletteShift&) { return std::string("palette_shift"); },
                      },
                      op);
}

}  // namespace fdedit
