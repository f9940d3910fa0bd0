// SPDX-License-Identifier: Apache-2.0
#include "fdedit/render.hpp"

#include <cmath>

#include "fdedit/random.hpp"

namespace fdedit {

RayResult march_ray(const FieldScene& scene, const Vec3& origin, const Vec3& dir, double near, double far,
                    const RenderConfig& cfg, Rng* jitter, std::vector<double>* trace) {
    const std::size_t k = scene.feature_dim;
    RayResult out;
    out.feature.assign(k, 0.0);
    std::vector<double> feat(k);

    const int n = cfg.samples_per_ray;
    const double dt = (far - near) / n;
    const double dnorm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    const double step = dt * dnorm;

    double T = 1.0;
    double wsum = 0.0;
    double tsum = 0.0;
    if (trace) {
        trace->clear();
        trace->reserve(static_cast<std::size_t>(n) + 1);
    }
    for (int i = 0; i < n; ++i) {
        const double offset = jitter ? jitter->uniform() : 0.5;
        const double t = near + (i + offset) * dt;
        const Vec3 x{origin[0] + t * dir[0], origin[1] + t * dir[1], origin[2] + t * dir[2]};
        if (trace) trace->push_back(T);
        Vec3 c;
        const double sigma = scene.sample(x, c, feat.data());
        if (sigma <= 0.0) continue;
        const double alpha = -std::expm1(-sigma * step);
        const double w = T * alpha;
        for (int ch = 0; ch < 3; ++ch) out.color[ch] += w * c[ch];
        for (std::size_t q = 0; q < k; ++q) out.feature[q] += w * feat[q];
        wsum += w;
        tsum += w * t;
        T *= 1.0 - alpha;
    }
    if (trace) trace->push_back(T);
    for (int ch = 0; ch < 3; ++ch) out.color[ch] += T * scene.background[ch];
    out.transmittance = T;
    out.weight_sum = wsum;
    out.depth = wsum > cfg.depth_min_weight ? tsum / wsum : 0.0;
    return out;
}

RenderResult render(const FieldScene& scene, const Camera& cam, const RenderConfig& cfg) {
    scene.validate();
    cam.validate();
    cfg.validate();
    const std::size_t h = cam.height, w = cam.width, k = scene.feature_dim;
    RenderResult r{Image(h, w, 3), FeatureMap(h, w, k), Image(h, w, 1), Image(h, w, 1), Image(h, w, 1)};

    const auto hh = static_cast<std::ptrdiff_t>(h);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t yi = 0; yi < hh; ++yi) {
        const auto y = static_cast<std::size_t>(yi);
        for (std::size_t x = 0; x < w; ++x) {
            const Vec3 d = cam.ray_direction(static_cast<double>(x), static_cast<double>(y));
            RayResult ray;
            if (cfg.stratified_jitter) {
                Rng rng = Rng::derive(cfg.seed, y * w + x);
                ray = march_ray(scene, cam.position, d, cam.near, cam.far, cfg, &rng);
            } else {
                ray = march_ray(scene, cam.position, d, cam.near, cam.far, cfg);
            }
            for (int c = 0; c < 3; ++c) r.color.at(y, x, c) = ray.color[c];
            for (std::size_t q = 0; q < k; ++q) r.feature.at(y, x, q) = ray.feature[q];
            r.depth.at(y, x) = ray.depth;
            r.trans.at(y, x) = ray.transmittance;
            r.weight.at(y, x) = ray.weight_sum;
        }
    }
    return r;
}

}  // namespace fdedit
