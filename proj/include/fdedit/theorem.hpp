// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fdedit/consistency.hpp"
#include "fdedit/lowpass.hpp"
#include "fdedit/pair_generator.hpp"
#include "fdedit/style.hpp"

namespace fdedit {

/// Which pair the optimal flow is computed from when scoring styled pairs.
enum class FlowSource {
    Stylized,  ///< u* from the pair being scored (the score formula read literally)
    Original,  ///< u* from the unstyled pair, residual evaluated on the styled pair
};

enum class TheoremKind {
    Smoothing,        ///< c(S I1, S I2) < c(I1, I2)
    StyledSmoothing,  ///< c(A(S I1), A(S I2)) < c(A I1, A I2)
};

struct TheoremConfig {
    int trials = 200;
    std::uint64_t seed = 7;
    LowpassConfig lowpass{1.5, std::nullopt, 1, BoundaryMode::Circular};
    double mu = 1e-3;
    double tol = 1e-8;
    int max_iter = 0;
    /// Trials whose unsmoothed score is at or below this are degenerate.
    double degenerate_threshold = 1e-14;
    FlowSource flow_source = FlowSource::Stylized;
};

struct TrialResult {
    int index = 0;
    std::size_t size = 0;
    double raw_score = 0.0;
    double smoothed_score = 0.0;
    bool degenerate = false;
    bool strict = false;
    double ratio() const { return raw_score > 0.0 ? smoothed_score / raw_score : 0.0; }
};

struct TheoremReport {
    TheoremKind kind = TheoremKind::Smoothing;
    std::uint64_t seed = 0;
    double mu = 0.0;
    double sigma = 0.0;
    std::size_t size = 0;
    int trials = 0;
    int degenerate = 0;
    int strict = 0;
    /// strict / (trials - degenerate); 0 when every trial is degenerate.
    double strict_fraction = 0.0;
    std::vector<int> violating;
    std::vector<TrialResult> results;
};

using StyleSampler = std::function<StyleOp(Rng&)>;

/// Random AffineColor near a diagonal gain: gains in [0.6, 1.5], cross terms in
/// [-0.15, 0.15], offsets in [-0.1, 0.1].
StyleOp random_affine_style(Rng& rng);

/// Each trial draws its pair from Rng::derive(seed, trial); the pair is made
/// colour-consistent before scoring. Trials run on the OpenMP pool and are
/// reported in index order. Requires a Circular smoother.
TheoremReport verify_smoothing_theorem(const TheoremConfig& cfg, const PairGenerator& gen);

/// Same harness with a style drawn per trial (AffineColor by default, where
/// smoothing and styling commute exactly). `gen` should produce 3-channel pairs.
TheoremReport verify_style_theorem(const TheoremConfig& cfg, const PairGenerator& gen,
                                   const StyleSampler& styles = random_affine_style);

std::string to_string(TheoremKind kind);

}  // namespace fdedit
