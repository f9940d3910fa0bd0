// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <variant>

#include "json.hpp"

#include "fdedit/image.hpp"
#include "fdedit/lowpass.hpp"

namespace fdedit {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

Mat3 identity3();

/// out = matrix * rgb + offset. Commutes exactly with any constant-preserving
/// linear smoother.
struct AffineColor {
    Mat3 matrix = identity3();
    Vec3 offset{0.0, 0.0, 0.0};
};

/// out = x^gamma on each sample (odd extension for negative inputs). Accepts
/// 1 or 3 channels.
struct ToneCurve {
    double gamma = 1.0;
};

/// Rotation about the grey axis plus chroma scaling in an orthonormal opponent
/// basis; luminance along (1,1,1) is preserved. Affine, so it reduces to an
/// AffineColor.
struct PaletteShift {
    double hue_rotation = 0.0;  ///< degrees
    double saturation_scale = 1.0;
};

using StyleOp = std::variant<AffineColor, ToneCurve, PaletteShift>;

/// Throws ConfigError for non-finite parameters or gamma outside (0, 8].
void validate(const StyleOp& op);

/// The 3x3 matrix of a PaletteShift (zero offset).
AffineColor to_affine(const PaletteShift& shift);

Image apply_style(const StyleOp& op, const Image& img);

/// RMSE between apply_style(op, lowpass(img)) and lowpass(apply_style(op, img)),
/// both at full resolution.
double commute_error(const StyleOp& op, const Image& img, const LowpassConfig& cfg);

/// JSON form: {"type": "affine_color", "matrix": [[..],[..],[..]], "offset": [..]},
/// {"type": "tone_curve", "gamma": g}, {"type": "palette_shift", "hue_rotation": deg,
/// "saturation_scale": s}.
nlohmann::json style_to_json(const StyleOp& op);
StyleOp style_from_json(const nlohmann::json& j);

std::string style_name(const StyleOp& op);

}  // namespace fdedit
