// SPDX-License-Identifier: Apache-2.0
#include "fdedit/theorem.hpp"

#include <exception>

#include "fdedit/error.hpp"

namespace fdedit {

std::string to_string(TheoremKind kind) {
    return kind == TheoremKind::Smoothing ? "smoothing" : "styled_smoothing";
}

StyleOp random_affine_style(Rng& rng) {
    AffineColor a;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) a.matrix[i][j] = i == j ? rng.uniform(0.6, 1.5) : rng.uniform(-0.15, 0.15);
        a.offset[i] = rng.uniform(-0.1, 0.1);
    }
    return a;
}

namespace {

void check(const TheoremConfig& cfg) {
    if (cfg.trials <= 0) throw ConfigError("theorem harness: trials must be > 0");
    if (cfg.lowpass.boundary != BoundaryMode::Circular) {
        throw ConfigError("theorem harness: the smoother must use the circular boundary");
    }
    cfg.lowpass.validate();
    if (!(cfg.mu > 0.0)) throw ConfigError("theorem harness: mu must be > 0");
}

LowpassConfig full_res(LowpassConfig c) {
    c.downscale = 1;
    return c;
}

double score(const Image& i1, const Image& i2, const TheoremConfig& cfg) {
    ConsistencyConfig cc{BoundaryMode::Circular, cfg.tol, cfg.max_iter};
    return consistency_score(i1, i2, cfg.mu, cc).score;
}

// Scores (s1, s2) with the flow solved on (f1, f2).
double score_with_flow_from(const Image& s1, const Image& s2, const Image& f1, const Image& f2,
                            const TheoremConfig& cfg) {
    const auto flow_prob = build_problem(luminance(f1), luminance(f2), cfg.mu, BoundaryMode::Circular);
    const auto flow = solve_flow(flow_prob, cfg.tol, cfg.max_iter);
    const auto prob = build_problem(luminance(s1), luminance(s2), cfg.mu, BoundaryMode::Circular);
    return residual_score(prob, flow);
}

template <class TrialFn>
TheoremReport run(const TheoremConfig& cfg, TheoremKind kind, TrialFn trial) {
    check(cfg);
    TheoremReport rep;
    rep.kind = kind;
    rep.seed = cfg.seed;
    rep.mu = cfg.mu;
    rep.sigma = cfg.lowpass.sigma;
    rep.trials = cfg.trials;
    rep.results.resize(static_cast<std::size_t>(cfg.trials));

    std::vector<std::exception_ptr> errors(rep.results.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < cfg.trials; ++i) {
        try {
            Rng rng = Rng::derive(cfg.seed, static_cast<std::uint64_t>(i));
            rep.results[i] = trial(i, rng);
            rep.results[i].index = i;
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (auto& r : rep.results) {
        r.degenerate = !(r.raw_score > cfg.degenerate_threshold);
        r.strict = !r.degenerate && r.smoothed_score < r.raw_score;
        if (r.degenerate) {
            ++rep.degenerate;
        } else if (r.strict) {
            ++rep.strict;
        } else {
            rep.violating.push_back(r.index);
        }
    }
    rep.size = rep.results.front().size;
    const int denom = rep.trials - rep.degenerate;
    rep.strict_fraction = denom > 0 ? static_cast<double>(rep.strict) / denom : 0.0;
    return rep;
}

}  // namespace

TheoremReport verify_smoothing_theorem(const TheoremConfig& cfg, const PairGenerator& gen) {
    const auto smooth = full_res(cfg.lowpass);
    return run(cfg, TheoremKind::Smoothing, [&](int, Rng& rng) {
        const auto pair = enforce_color_consistency(gen(rng));
        TrialResult r;
        r.size = pair.i1.height();
        r.raw_score = score(pair.i1, pair.i2, cfg);
        r.smoothed_score = score(gaussian_lowpass(pair.i1, smooth), gaussian_lowpass(pair.i2, smooth), cfg);
        return r;
    });
}

TheoremReport verify_style_theorem(const TheoremConfig& cfg, const PairGenerator& gen, const StyleSampler& styles) {
    const auto smooth = full_res(cfg.lowpass);
    return run(cfg, TheoremKind::StyledSmoothing, [&](int, Rng& rng) {
        const auto pair = enforce_color_consistency(gen(rng));
        const StyleOp style = styles(rng);
        const Image s1 = gaussian_lowpass(pair.i1, smooth);
        const Image s2 = gaussian_lowpass(pair.i2, smooth);
        const Image a1 = apply_style(style, pair.i1), a2 = apply_style(style, pair.i2);
        const Image as1 = apply_style(style, s1), as2 = apply_style(style, s2);
        TrialResult r;
        r.size = pair.i1.height();
        if (cfg.flow_source == FlowSource::Stylized) {
            r.raw_score = score(a1, a2, cfg);
            r.smoothed_score = score(as1, as2, cfg);
        } else {
            r.raw_score = score_with_flow_from(a1, a2, pair.i1, pair.i2, cfg);
            r.smoothed_score = score_with_flow_from(as1, as2, s1, s2, cfg);
        }
        return r;
    });
}

}  // namespace fdedit
