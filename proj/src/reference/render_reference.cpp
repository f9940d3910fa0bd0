// SPDX-License-Identifier: Apache-2.0
#include "fdedit/random.hpp"
#include "fdedit/render_reference.hpp"
#include "../fieldrender/gt_flow_detail.hpp"

namespace fdedit::reference {

RenderResult render(const FieldScene& scene, const Camera& cam, const RenderConfig& cfg) {
    scene.validate();
    cam.validate();
    cfg.validate();
    const std::size_t h = cam.height, w = cam.width, k = scene.feature_dim;
    RenderResult r{Image(h, w, 3), FeatureMap(h, w, k), Image(h, w, 1), Image(h, w, 1), Image(h, w, 1)};
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            const Vec3 d = cam.ray_direction(static_cast<double>(x), static_cast<double>(y));
            Rng rng = Rng::derive(cfg.seed, y * w + x);
            const RayResult ray =
                march_ray(scene, cam.position, d, cam.near, cam.far, cfg, cfg.stratified_jitter ? &rng : nullptr);
            for (int c = 0; c < 3; ++c) r.color.at(y, x, c) = ray.color[c];
            for (std::size_t q = 0; q < k; ++q) r.feature.at(y, x, q) = ray.feature[q];
            r.depth.at(y, x) = ray.depth;
            r.trans.at(y, x) = ray.transmittance;
            r.weight.at(y, x) = ray.weight_sum;
        }
    return r;
}

GtFlow gt_flow(const Image& depth1, const Camera& cam1, const Camera& cam2, const GtFlowOptions& opts) {
    detail::check_gt_flow_inputs(depth1, cam1, cam2, opts);
    GtFlow out{Image(cam1.height, cam1.width, 1), Image(cam1.height, cam1.width, 1),
               Image(cam1.height, cam1.width, 1)};
    for (std::size_t y = 0; y < cam1.height; ++y)
        for (std::size_t x = 0; x < cam1.width; ++x)
            detail::gt_flow_pixel(depth1, cam1, cam2, opts, y, x, out.u.at(y, x), out.v.at(y, x),
                                  out.valid.at(y, x));
    return out;
}

}  // namespace fdedit::reference
