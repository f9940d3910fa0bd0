// SPDX-License-Identifier: Apache-2.0
// OpenMP kernels against their serial reference versions.
#include <benchmark/benchmark.h>

#include "fdedit/lowpass.hpp"
#include "fdedit/random.hpp"
#include "fdedit/reference.hpp"
#include "fdedit/render.hpp"
#include "fdedit/render_reference.hpp"

namespace {

using namespace fdedit;

Image noise(std::size_t h, std::size_t w, std::size_t c) {
    Rng rng(7);
    Image img(h, w, c);
    for (double& v : img.data()) v = rng.uniform();
    return img;
}

template <bool Parallel>
void BM_Lowpass(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Image img = noise(n, n, 3);
    LowpassConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(Parallel ? gaussian_lowpass(img, cfg) : reference::gaussian_lowpass(img, cfg));
}

template <bool Parallel>
void BM_Resample(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Image img = noise(n, n, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(Parallel ? resample(img, n / 4, n / 4) : reference::resample(img, n / 4, n / 4));
}

template <bool Parallel>
void BM_Gradient(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Image img = noise(n, n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(Parallel ? gradient(img) : reference::gradient(img));
}

struct RenderSetup {
    FieldScene scene;
    std::vector<Camera> cams;
    RenderConfig cfg;
    explicit RenderSetup(std::size_t n) {
        RandomSceneConfig rc;
        rc.count = 30;
        scene = make_random_scene(rc);
        OrbitConfig oc;
        oc.count = 2;
        oc.width = oc.height = n;
        oc.focal = static_cast<double>(n);
        cams = orbit_cameras(oc);
        cfg.samples_per_ray = 64;
    }
};

template <bool Parallel>
void BM_Render(benchmark::State& state) {
    const RenderSetup s(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(Parallel ? render(s.scene, s.cams[0], s.cfg)
                                          : reference::render(s.scene, s.cams[0], s.cfg));
}

template <bool Parallel>
void BM_GtFlow(benchmark::State& state) {
    const RenderSetup s(static_cast<std::size_t>(state.range(0)));
    const Image d1 = render(s.scene, s.cams[0], s.cfg).depth;
    const Image d2 = render(s.scene, s.cams[1], s.cfg).depth;
    GtFlowOptions opts;
    opts.depth2 = &d2;
    for (auto _ : state)
        benchmark::DoNotOptimize(Parallel ? gt_flow(d1, s.cams[0], s.cams[1], opts)
                                          : reference::gt_flow(d1, s.cams[0], s.cams[1], opts));
}

}  // namespace

BENCHMARK(BM_Lowpass<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_Lowpass<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_Resample<true>)->Arg(1024);
BENCHMARK(BM_Resample<false>)->Arg(1024);
BENCHMARK(BM_Gradient<true>)->Arg(1024);
BENCHMARK(BM_Gradient<false>)->Arg(1024);
BENCHMARK(BM_Render<true>)->Arg(64)->Arg(128);
BENCHMARK(BM_Render<false>)->Arg(64)->Arg(128);
BENCHMARK(BM_GtFlow<true>)->Arg(256);
BENCHMARK(BM_GtFlow<false>)->Arg(256);

BENCHMARK_MAIN();
