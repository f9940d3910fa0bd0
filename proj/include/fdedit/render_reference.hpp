// SPDX-License-Identifier: Apache-2.0
#pragma once

// Serial counterparts of the renderer kernels, for equivalence tests and the
// benchmark.

#include "fdedit/render.hpp"

namespace fdedit::reference {

RenderResult render(const FieldScene& scene, const Camera& cam, const RenderConfig& cfg);
GtFlow gt_flow(const Image& depth1, const Camera& cam1, const Camera& cam2, const GtFlowOptions& opts = {});

}  // namespace fdedit::reference
