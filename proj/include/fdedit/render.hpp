// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "fdedit/image.hpp"
#include "fdedit/scene.hpp"

namespace fdedit {

class Rng;

/// Result of compositing one ray.
struct RayResult {
    Vec3 color{0.0, 0.0, 0.0};
    std::vector<double> feature;
    double depth = 0.0;         ///< expected camera-space depth, 0 when undefined
    double transmittance = 1.0; ///< T after the last sample
    double weight_sum = 0.0;    ///< sum of T_i * alpha_i
};

/// Midpoint-rule compositing along o + t d, t in [near, far]. `dir` is the
/// camera direction scaled so its camera-space z is 1, which makes t the
/// camera depth; opacity uses the world-space step t * |d|. When `jitter` is
/// non-null each sample moves uniformly within its bin. If `trace` is
/// non-null it receives T_i before each sample plus the final T.
RayResult march_ray(const FieldScene& scene, const Vec3& origin, const Vec3& dir, double near, double far,
                    const RenderConfig& cfg, Rng* jitter = nullptr, std::vector<double>* trace = nullptr);

struct RenderResult {
    Image color;        ///< H x W x 3
    FeatureMap feature; ///< H x W x k
    Image depth;        ///< H x W, 0 marks undefined depth
    Image trans;        ///< H x W, final transmittance
    Image weight;       ///< H x W, accumulated opacity sum T_i alpha_i
};

/// Renders every pixel of `cam`. Rows are distributed over OpenMP threads;
/// per-pixel work is independent, so the output does not depend on the
/// thread count. Jitter streams are derived from (seed, pixel index).
RenderResult render(const FieldScene& scene, const Camera& cam, const RenderConfig& cfg);

/// Ground-truth correspondence between two views.
struct GtFlow {
    Image u;      ///< x displacement, pixels
    Image v;      ///< y displacement, pixels
    Image valid;  ///< 1 where the correspondence is trusted, else 0
};

struct GtFlowOptions {
    /// cam2's depth map; when given, points whose reprojected depth differs
    /// from it by more than `depth_tolerance` (relative) are masked out.
    const Image* depth2 = nullptr;
    double depth_tolerance = 0.02;
    /// Treat pixels with undefined depth as background at infinity and map
    /// them by rotation only. They stay valid only where cam2 also sees
    /// background (requires depth2).
    bool background_at_infinity = false;
};

/// Unprojects pixel centres of cam1 through depth1 and reprojects into cam2.
/// Flow is the cam2 pixel position minus the source pixel position. A pixel is
/// valid when its depth is defined, the reprojection lands in front of cam2
/// within the frame footprint [-0.5, W - 0.5) x [-0.5, H - 0.5), and (with
/// depth2) the nearest cam2 depth agrees within the tolerance. Throws
/// ShapeError when image sizes disagree with the cameras.
GtFlow gt_flow(const Image& depth1, const Camera& cam1, const Camera& cam2, const GtFlowOptions& opts = {});

}  // namespace fdedit
