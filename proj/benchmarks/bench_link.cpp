#include <benchmark/benchmark.h>

#include "irsqr/abep.hpp"

using namespace irsqr;

namespace {

ChannelPair make_channels(int l, int ntx, int nrx, uint64_t seed) {
    RandomStream s(seed);
    return draw_channel_pair(s, {l, ntx, nrx}, {.kappa = 0.1}, PathLossModel{});
}

void BM_DrawChannelPair(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    uint64_t seed = 1;
    for (auto _ : state) {
        RandomStream s(seed++);
        benchmark::DoNotOptimize(
            draw_channel_pair(s, {n, n, n}, {.kappa = 0.1}, PathLossModel{}));
    }
}
BENCHMARK(BM_DrawChannelPair)->Arg(16)->Arg(64)->Arg(256);

void BM_Beamformer(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ChannelPair ch = make_channels(n, n, n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(design_beamformer(ch));
}
BENCHMARK(BM_Beamformer)->Arg(16)->Arg(64);

void BM_BuildLink(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ChannelPair ch = make_channels(n * n, n, n * n, 3);
    const auto w = design_beamformer(ch);
    const NoiseModel noise{.mode = NoiseModel::Mode::target_snr, .gamma_db = 15.0};
    for (auto _ : state) benchmark::DoNotOptimize(build_link(ch, w, noise));
}
BENCHMARK(BM_BuildLink)->Arg(8)->Arg(16)->Arg(21)->Unit(benchmark::kMillisecond);

void BM_TransmitDetect(benchmark::State& state) {
    const int l = static_cast<int>(state.range(0));
    const ChannelPair ch = make_channels(l, l, l, 4);
    const auto w = design_beamformer(ch);
    const LinkState link =
        build_link(ch, w, NoiseModel{.mode = NoiseModel::Mode::target_snr, .gamma_db = 15.0});
    const Constellation c(2);
    ThetaFrame f;
    f.theta.assign(l, c.point(0));
    f.symbol_indices.assign(l, 0);
    RandomStream noise_stream(5);
    for (auto _ : state) {
        const RxObservation obs = transmit(link, f, {}, noise_stream);
        benchmark::DoNotOptimize(detect(link, obs, c));
    }
}
BENCHMARK(BM_TransmitDetect)->Arg(16)->Arg(64)->Arg(441);

void BM_SimulateAbepPoint(benchmark::State& state) {
    AbepSimulation sim;
    sim.dims = {16, 16, 16};
    sim.rician.kappa = 0.1;
    sim.noise.gamma_db = 15.0;
    sim.order = 2;
    sim.trials = 10;
    sim.min_bits = 100'000;
    sim.threads = 1;
    uint64_t seed = 6;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_abep(sim, RandomStream(seed++)));
}
BENCHMARK(BM_SimulateAbepPoint)->Unit(benchmark::kMillisecond);

}  // namespace
