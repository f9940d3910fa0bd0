// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "fdedit/render.hpp"

namespace fdedit::detail {

void check_gt_flow_inputs(const Image& depth1, const Camera& cam1, const Camera& cam2, const GtFlowOptions& opts);

// Flow and validity of one pixel; shared by the parallel and serial paths.
void gt_flow_pixel(const Image& depth1, const Camera& cam1, const Camera& cam2, const GtFlowOptions& opts,
                   std::size_t y, std::size_t x, double& u, double& v, double& valid);

}  // namespace fdedit::detail
