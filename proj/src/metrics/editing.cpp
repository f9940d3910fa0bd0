// SPDX-License-Identifier: Apache-2.0
#include "fdedit/editing.hpp"

#include "fdedit/error.hpp"
#include "fdedit/random.hpp"

namespace fdedit {

Image full_image_edit(const Image& view, const EditorModel& editor, std::uint64_t view_index) {
    if (!(editor.artifact_std >= 0.0)) throw ConfigError("editor: artifact_std must be >= 0");
    Image out = apply_style(editor.style, view);
    if (editor.artifact_std > 0.0) {
        Rng rng = Rng::derive(editor.seed, view_index);
        for (double& s : out.data()) s += editor.artifact_std * rng.normal();
    }
    return out;
}

Image decomposed_edit(const Image& view, const Image& edited, const LowpassConfig& cfg, double alpha) {
    require_same_shape(view, edited, "decomposed_edit");
    const Decomposition orig = decompose(view, cfg);
    const Decomposition ed = decompose(edited, cfg);
    return blend_detail(ed.low_ds, orig, alpha);
}

Image smoothed_full_edit(const Image& edited, const LowpassConfig& cfg) {
    LowpassConfig full = cfg;
    full.downscale = 1;
    return gaussian_lowpass(edited, full);
}

EditComparison compare_edits(const std::vector<Image>& views, const std::vector<PairFlow>& pairs,
                             const EditorModel& editor, const LowpassConfig& cfg) {
    EditComparison out;
    std::vector<Image> dec, full;
    for (std::size_t i = 0; i < views.size(); ++i) {
        Image f = full_image_edit(views[i], editor, i);
        dec.push_back(decomposed_edit(views[i], f, cfg));
        out.sharp_original.push_back(sharpness(views[i]));
        out.sharp_decomposed.push_back(sharpness(dec.back()));
        out.sharp_smoothed.push_back(sharpness(smoothed_full_edit(f, cfg)));
        out.sharp_full.push_back(sharpness(f));
        full.push_back(std::move(f));
    }
    for (const PairFlow& p : pairs) {
        if (p.src < 0 || p.dst < 0 || static_cast<std::size_t>(p.src) >= views.size() ||
            static_cast<std::size_t>(p.dst) >= views.size() || !p.u || !p.v || !p.valid)
            throw ConfigError("compare_edits: bad pair");
        const auto s = static_cast<std::size_t>(p.src), d = static_cast<std::size_t>(p.dst);
        out.rmse_original.push_back(warped_rmse(views[d], views[s], *p.u, *p.v, *p.valid));
        out.rmse_decomposed.push_back(warped_rmse(dec[d], dec[s], *p.u, *p.v, *p.valid));
        out.rmse_full.push_back(warped_rmse(full[d], full[s], *p.u, *p.v, *p.valid));
    }
    return out;
}

}  // namespace fdedit
