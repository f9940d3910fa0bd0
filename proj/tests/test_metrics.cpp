// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "fdedit/editing.hpp"
#include "fdedit/error.hpp"
#include "fdedit/metrics.hpp"
#include "oracles.hpp"

using namespace fdedit;

namespace {

Image shift(const Image& img, long dy, long dx) {
    Image out(img.height(), img.width(), img.channels());
    const long h = static_cast<long>(img.height()), w = static_cast<long>(img.width());
    for (long y = 0; y < h; ++y)
        for (long x = 0; x < w; ++x)
            for (std::size_t c = 0; c < img.channels(); ++c)
                out.at(oracle::wrap(y + dy, h), oracle::wrap(x + dx, w), c) = img.at(y, x, c);
    return out;
}

}  // namespace

TEST(WarpedRmse, ZeroFlowCases) {
    Rng rng(40);
    const Image a = oracle::random_image(10, 12, 3, rng);
    const Image zero(10, 12, 1, 0.0), all(10, 12, 1, 1.0);
    const PairScore same = warped_rmse(a, a, zero, zero, all);
    EXPECT_EQ(same.rmse, 0.0);
    EXPECT_EQ(same.n_pixels, 120u);
    EXPECT_EQ(same.valid_fraction, 1.0);
    const Image lo(10, 12, 3, 0.3), hi(10, 12, 3, 0.4);
    EXPECT_NEAR(warped_rmse(lo, hi, zero, zero, all).rmse, 0.1, 1e-15);
}

TEST(WarpedRmse, NoOverlapAndShapes) {
    const Image a(4, 4, 1, 0.5), zero(4, 4, 1, 0.0);
    EXPECT_THROW(warped_rmse(a, a, zero, zero, zero), DegenerateError);
    try {
        warped_rmse(a, a, zero, zero, zero);
    } catch (const DegenerateError& e) {
        EXPECT_NE(std::string(e.what()).find("no overlap"), std::string::npos);
    }
    const Image far(4, 4, 1, 10.0), all(4, 4, 1, 1.0);
    EXPECT_THROW(warped_rmse(a, a, far, zero, all), DegenerateError);
    EXPECT_THROW(warped_rmse(a, Image(4, 5, 1), zero, zero, all), ShapeError);
}

TEST(WarpedRmse, IntegerShiftRecovered) {
    Rng rng(41);
    const Image a = oracle::random_image(12, 12, 3, rng);
    const Image b = shift(a, 0, 2);  // b(x) = a(x - 2)
    // flow from b's pixels into a: p -> p - 2
    const Image u(12, 12, 1, -2.0), v(12, 12, 1, 0.0), all(12, 12, 1, 1.0);
    const PairScore s = warped_rmse(a, b, u, v, all);
    EXPECT_LT(s.rmse, 1e-15);
    EXPECT_EQ(s.n_pixels, 12u * 10u);
}

TEST(WarpedRmse, SymmetricUnderInverseFlow) {
    // smooth field, subpixel translation: forward and inverse flows agree
    const std::size_t n = 32;
    Image a(n, n, 1), b(n, n, 1);
    auto f = [](double x, double y) { return 0.5 + 0.3 * std::sin(0.09 * x) * std::cos(0.07 * y); };
    auto g = [](double x, double y) { return 0.02 * std::sin(0.3 * x + 0.2 * y); };
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x) {
            a.at(y, x) = f(x, y);
            b.at(y, x) = f(x + 0.5, y) + g(x, y);
        }
    const Image all(n, n, 1, 1.0), zero(n, n, 1, 0.0);
    const Image fwd(n, n, 1, 0.5), bwd(n, n, 1, -0.5);
    // (a, b) with b sampled through +0.5 vs (b, a) with a sampled through -0.5
    const PairScore s1 = warped_rmse(b, a, bwd, zero, all);
    const PairScore s2 = warped_rmse(a, b, fwd, zero, all);
    EXPECT_NEAR(s1.rmse, s2.rmse, 1e-3);
}

TEST(Sharpness, CheckerboardClosedForm) {
    Image cb(16, 16, 1);
    for (std::size_t y = 0; y < 16; ++y)
        for (std::size_t x = 0; x < 16; ++x) cb.at(y, x) = static_cast<double>((x + y) % 2);
    // each Laplacian response is +-4 (0-1 scale): variance (4 * 255)^2
    EXPECT_NEAR(sharpness(cb), 4.0 * 255 * 4.0 * 255, 1e-6);
    EXPECT_EQ(sharpness(Image(8, 8, 3, 0.4)), 0.0);
}

TEST(Sharpness, SmoothingLowersAndShiftInvariant) {
    Rng rng(42);
    for (int t = 0; t < 5; ++t) {
        const Image img = oracle::random_image(20, 24, 3, rng);
        for (double sigma : {1.0, 2.0}) {
            const Image sm = gaussian_lowpass(img, {sigma, std::nullopt, 1, BoundaryMode::Reflect});
            EXPECT_LT(sharpness(sm), sharpness(img));
        }
        EXPECT_NEAR(sharpness(shift(img, 3, -5)), sharpness(img), 1e-9 * sharpness(img));
    }
}

TEST(Editing, DecomposedEditKeepsSharpnessSmoothedBaselineLoses) {
    Rng rng(43);
    const LowpassConfig cfg{2.0, std::nullopt, 4, BoundaryMode::Reflect};
    for (int t = 0; t < 10; ++t) {
        Image img = gaussian_lowpass(oracle::random_image(48, 48, 3, rng), {0.7, std::nullopt, 1, BoundaryMode::Reflect});
        AffineColor a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a.matrix[i][j] = i == j ? rng.uniform(0.6, 1.5) : rng.uniform(-0.15, 0.15);
        const EditorModel ed{a, 0.05, 7};
        const Image full = full_image_edit(img, ed, 0);
        const double s0 = sharpness(img);
        EXPECT_GE(sharpness(decomposed_edit(img, full, cfg)), 0.9 * s0);
        EXPECT_LT(sharpness(smoothed_full_edit(full, cfg)), s0);
    }
}

TEST(Editing, EditorNoiseIsPerViewAndSeeded) {
    Rng rng(44);
    const Image img = oracle::random_image(8, 8, 3, rng);
    const EditorModel ed{AffineColor{}, 0.05, 3};
    EXPECT_EQ(full_image_edit(img, ed, 1), full_image_edit(img, ed, 1));
    EXPECT_NE(full_image_edit(img, ed, 1), full_image_edit(img, ed, 2));
    const EditorModel clean{AffineColor{}, 0.0, 3};
    EXPECT_EQ(full_image_edit(img, clean, 5), img);
}
