// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "fdedit/freqpipe.hpp"
#include "fdedit/metrics.hpp"
#include "fdedit/style.hpp"

namespace fdedit {

/// Stand-in for a per-view 2D editor: applies a colour style and adds
/// independent white noise per view, the view-inconsistent artefacts a
/// generative editor leaves in fine detail. Noise streams are derived from
/// (seed, view index).
struct EditorModel {
    StyleOp style = AffineColor{};
    double artifact_std = 0.05;
    std::uint64_t seed = 0;
};

Image full_image_edit(const Image& view, const EditorModel& editor, std::uint64_t view_index);

/// Keeps the low band of the edited view and re-adds the original's detail.
Image decomposed_edit(const Image& view, const Image& edited, const LowpassConfig& cfg, double alpha = 1.0);

/// Baseline: the full edit smoothed at full resolution to hide artefacts.
Image smoothed_full_edit(const Image& edited, const LowpassConfig& cfg);

struct PairFlow {
    int src = 0;
    int dst = 0;
    const Image* u = nullptr;
    const Image* v = nullptr;
    const Image* valid = nullptr;
};

struct EditComparison {
    std::vector<double> sharp_original;
    std::vector<double> sharp_decomposed;
    std::vector<double> sharp_smoothed;
    std::vector<double> sharp_full;
    std::vector<PairScore> rmse_original;
    std::vector<PairScore> rmse_decomposed;
    std::vector<PairScore> rmse_full;
};

/// Edits every view both ways and scores sharpness per view and warped RMSE
/// per pair. Pair (src -> dst) compares view dst sampled through the flow
/// with view src.
EditComparison compare_edits(const std::vector<Image>& views, const std::vector<PairFlow>& pairs,
                             const EditorModel& editor, const LowpassConfig& cfg);

}  // namespace fdedit
