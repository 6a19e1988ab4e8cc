// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/brhbc.hpp"

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

namespace {

using namespace brhbc;

BodyChannel reference_body()
{
    BodyChannel ch;
    BodySegment arm;
    arm.length_m = 0.75;
    arm.outer_radius_m = 0.06;
    arm.skin_thickness_m = 0.004;
    arm.height_above_ground_m = 1.3;
    BodySegment shoulder = arm;
    shoulder.length_m = 0.3;
    shoulder.outer_radius_m = 0.14;
    shoulder.height_above_ground_m = 1.35;
    ch.segments = {arm, shoulder, arm};
    ch.tx_device.ground_distance_m = 1.3;
    ch.rx_device.ground_distance_m = 1.3;
    ch.termination.c_l_f = 2.3e-12;
    ch.ground.c_b_f = 10e-12;
    return ch;
}

void bm_pul_params(benchmark::State& state)
{
    const auto tissues = TissueLibrary::with_builtins();
    BodySegment arm;
    arm.length_m = 0.75;
    arm.outer_radius_m = 0.06;
    arm.skin_thickness_m = 0.004;
    arm.height_above_ground_m = 1.3;
    double f = 1e6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pul_params(arm, f, tissues));
        f = f < 9e8 ? f * 1.01 : 1e6;
    }
}
BENCHMARK(bm_pul_params);

void bm_segment_cascade_512(benchmark::State& state)
{
    const PerUnitLengthParams pul{150.0, 250e-9, 1e-5, 50e-12};
    const double f = 8e7;
    const TwoPort section = segment_twoport(pul, 1.8 / 512.0, f);
    const std::vector<TwoPort> chain(512, section);
    for (auto _ : state)
        benchmark::DoNotOptimize(cascade(chain));
}
BENCHMARK(bm_segment_cascade_512);

void bm_transfer_single_frequency(benchmark::State& state)
{
    const BodyChannel channel = reference_body();
    for (auto _ : state)
        benchmark::DoNotOptimize(channel.transfer(8e7));
}
BENCHMARK(bm_transfer_single_frequency);

void bm_sweep_256(benchmark::State& state)
{
    const BodyChannel channel = reference_body();
    const FrequencySweep sweep{1e5, 1e9, 256, FrequencySweep::Spacing::log};
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep_gain(channel, sweep));
}
BENCHMARK(bm_sweep_256);

void bm_find_features(benchmark::State& state)
{
    const BodyChannel channel = reference_body();
    const FrequencySweep sweep{1e5, 1e9, 1024, FrequencySweep::Spacing::log};
    const ChannelResponse resp = sweep_gain(channel, sweep);
    for (auto _ : state)
        benchmark::DoNotOptimize(find_features(resp));
}
BENCHMARK(bm_find_features);

void bm_shannon_capacity(benchmark::State& state)
{
    const BodyChannel channel = reference_body();
    const FrequencySweep sweep{1e5, 1e9, 1024, FrequencySweep::Spacing::log};
    const ChannelResponse resp = sweep_gain(channel, sweep);
    const NoiseModel noise;
    for (auto _ : state)
        benchmark::DoNotOptimize(shannon_capacity(resp, noise, -5.0, {3e7, 3e8}));
}
BENCHMARK(bm_shannon_capacity);

} // namespace

BENCHMARK_MAIN();
