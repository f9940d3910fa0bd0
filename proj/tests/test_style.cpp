// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "fdedit/error.hpp"
#include "fdedit/style.hpp"
#include "fdedit/theorem.hpp"
#include "oracles.hpp"

using namespace fdedit;

TEST(Style, AffineColorPerPixel) {
    AffineColor a;
    a.matrix = {{{1.0, 0.5, 0.0}, {0.0, 2.0, 0.0}, {0.1, 0.0, 1.0}}};
    a.offset = {0.1, 0.0, -0.2};
    Image img(1, 1, 3);
    img.at(0, 0, 0) = 0.2;
    img.at(0, 0, 1) = 0.4;
    img.at(0, 0, 2) = 0.6;
    const Image out = apply_style(a, img);
    EXPECT_NEAR(out.at(0, 0, 0), 0.2 + 0.2 + 0.1, 1e-15);
    EXPECT_NEAR(out.at(0, 0, 1), 0.8, 1e-15);
    EXPECT_NEAR(out.at(0, 0, 2), 0.02 + 0.6 - 0.2, 1e-15);
    EXPECT_THROW(apply_style(a, Image(2, 2, 1)), ShapeError);
}

TEST(Style, AffineCommutesWithCircularSmoothing) {
    Rng rng(20);
    const Image img = oracle::random_image(16, 16, 3, rng);
    for (int t = 0; t < 10; ++t) {
        const StyleOp op = random_affine_style(rng);
        EXPECT_LT(commute_error(op, img, {1.5, std::nullopt, 1, BoundaryMode::Circular}), 1e-14);
        EXPECT_LT(commute_error(op, img, {1.5, std::nullopt, 1, BoundaryMode::Reflect}), 1e-14);
    }
    EXPECT_GT(commute_error(ToneCurve{2.2}, img, {1.5, std::nullopt, 1, BoundaryMode::Circular}), 1e-4);
}

TEST(Style, PaletteShiftKeepsGreyAndIsOrthogonalAtUnitSaturation) {
    const AffineColor a = to_affine(PaletteShift{47.0, 1.0});
    Image grey(1, 1, 3, 0.3);
    const Image out = apply_style(a, grey);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(out.at(0, 0, c), 0.3, 1e-15);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a.matrix[k][i] * a.matrix[k][j];
            EXPECT_NEAR(s, i == j ? 1.0 : 0.0, 1e-14);
        }
    const AffineColor z = to_affine(PaletteShift{0.0, 0.0});
    Image col(1, 1, 3);
    col.at(0, 0, 0) = 0.9;
    const Image flat = apply_style(z, col);
    EXPECT_NEAR(flat.at(0, 0, 1), 0.3, 1e-15);
}

TEST(Style, ToneCurve) {
    Image img(1, 3, 1);
    img.at(0, 0) = 0.25;
    img.at(0, 1) = -0.25;
    img.at(0, 2) = 1.0;
    const Image out = apply_style(ToneCurve{2.0}, img);
    EXPECT_DOUBLE_EQ(out.at(0, 0), 0.0625);
    EXPECT_DOUBLE_EQ(out.at(0, 1), -0.0625);
    EXPECT_DOUBLE_EQ(out.at(0, 2), 1.0);
    EXPECT_EQ(apply_style(ToneCurve{1.0}, img), img);
    EXPECT_THROW(validate(ToneCurve{0.0}), ConfigError);
    EXPECT_THROW(validate(ToneCurve{9.0}), ConfigError);
}

TEST(Style, JsonRoundTrip) {
    AffineColor a;
    a.matrix[0][1] = 0.25;
    a.offset = {0.1, -0.2, 0.3};
    for (const StyleOp& op : {StyleOp{a}, StyleOp{ToneCurve{0.8}}, StyleOp{PaletteShift{30.0, 0.5}}}) {
        const StyleOp back = style_from_json(style_to_json(op));
        EXPECT_EQ(style_to_json(back), style_to_json(op));
        EXPECT_EQ(back.index(), op.index());
    }
    EXPECT_THROW(style_from_json(nlohmann::json{{"type", "vgg"}}), ConfigError);
    EXPECT_THROW(style_from_json(nlohmann::json{{"type", "affine_color"}, {"matrix", {1, 2}}}), ConfigError);
}
