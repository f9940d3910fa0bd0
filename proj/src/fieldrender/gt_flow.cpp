// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "fdedit/error.hpp"
#include "fdedit/render.hpp"
#include "gt_flow_detail.hpp"

namespace fdedit {

namespace detail {

void check_gt_flow_inputs(const Image& depth1, const Camera& cam1, const Camera& cam2, const GtFlowOptions& opts) {
    cam1.validate();
    cam2.validate();
    if (depth1.channels() != 1 || depth1.height() != cam1.height || depth1.width() != cam1.width)
        throw ShapeError("gt_flow: depth1 is " + std::to_string(depth1.height()) + "x" +
                         std::to_string(depth1.width()) + "x" + std::to_string(depth1.channels()) +
                         ", camera 1 expects " + std::to_string(cam1.height) + "x" + std::to_string(cam1.width) +
                         "x1");
    if (opts.depth2 &&
        (opts.depth2->channels() != 1 || opts.depth2->height() != cam2.height || opts.depth2->width() != cam2.width))
        throw ShapeError("gt_flow: depth2 does not match camera 2");
    if (!(opts.depth_tolerance >= 0.0)) throw ConfigError("gt_flow: depth tolerance must be >= 0");
}

void gt_flow_pixel(const Image& depth1, const Camera& cam1, const Camera& cam2, const GtFlowOptions& opts,
                   std::size_t y, std::size_t x, double& u, double& v, double& valid) {
    u = 0.0;
    v = 0.0;
    valid = 0.0;
    const double z = depth1.at(y, x);
    const Vec3 d = cam1.ray_direction(static_cast<double>(x), static_cast<double>(y));
    const bool has_depth = std::isfinite(z) && z > 0.0;
    if (!has_depth && !opts.background_at_infinity) return;

    Camera::Projection p{};
    if (has_depth) {
        const Vec3 pt{cam1.position[0] + z * d[0], cam1.position[1] + z * d[1], cam1.position[2] + z * d[2]};
        p = cam2.project(pt);
    } else {
        p = cam2.project_direction(d);
    }
    if (!(p.z > 0.0) || !std::isfinite(p.px) || !std::isfinite(p.py)) return;
    u = p.px - static_cast<double>(x);
    v = p.py - static_cast<double>(y);
    // inside the pixel footprint of the frame
    const double wmax = static_cast<double>(cam2.width) - 0.5;
    const double hmax = static_cast<double>(cam2.height) - 0.5;
    if (p.px < -0.5 || p.py < -0.5 || p.px >= wmax || p.py >= hmax) return;

    if (opts.depth2) {
        const auto qx = std::min(static_cast<std::size_t>(std::max(0L, std::lround(p.px))), cam2.width - 1);
        const auto qy = std::min(static_cast<std::size_t>(std::max(0L, std::lround(p.py))), cam2.height - 1);
        const double z2 = opts.depth2->at(qy, qx);
        const bool z2_defined = std::isfinite(z2) && z2 > 0.0;
        if (has_depth) {
            if (!z2_defined || std::abs(z2 - p.z) > opts.depth_tolerance * p.z) return;
        } else if (z2_defined) {
            return;
        }
    } else if (!has_depth) {
        return;
    }
    valid = 1.0;
}

}  // namespace detail

GtFlow gt_flow(const Image& depth1, const Camera& cam1, const Camera& cam2, const GtFlowOptions& opts) {
    detail::check_gt_flow_inputs(depth1, cam1, cam2, opts);
    const std::size_t h = cam1.height, w = cam1.width;
    GtFlow out{Image(h, w, 1), Image(h, w, 1), Image(h, w, 1)};
    const auto hh = static_cast<std::ptrdiff_t>(h);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t yi = 0; yi < hh; ++yi) {
        const auto y = static_cast<std::size_t>(yi);
        for (std::size_t x = 0; x < w; ++x)
            detail::gt_flow_pixel(depth1, cam1, cam2, opts, y, x, out.u.at(y, x), out.v.at(y, x),
                                  out.valid.at(y, x));
    }
    return out;
}

}  // namespace fdedit
