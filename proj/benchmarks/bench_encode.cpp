// Microbenchmarks for the pursuit engine and the direct/FFT correlation
// crossover that backs CorrelatePath::Auto.

#include <benchmark/benchmark.h>

#include "dictmon/dictionary.hpp"
#include "dictmon/encoder.hpp"
#include "dictmon/learner.hpp"
#include "dictmon/rng.hpp"
#include "dictmon/synth.hpp"

using namespace dictmon;

namespace {

Signal bench_window(double seconds = 5.0) {
    RigConfig rig = rig_preset("ir7", 29.5, 77);
    return gen_rig_signal(rig, seconds);
}

void BM_EncodeWindow12dB(benchmark::State& state) {
    const Signal window = bench_window();
    const Dictionary dict = init_dictionary(16, 50, 11);
    StopCondition stop;  // 0.1 events/sample, 12 dB
    for (auto _ : state) {
        auto res = encode(window, dict, stop);
        benchmark::DoNotOptimize(res.srr_db);
        state.counters["events"] = static_cast<double>(res.events.size());
    }
}
BENCHMARK(BM_EncodeWindow12dB)->Unit(benchmark::kMillisecond);

void BM_EncodeWindowSparse(benchmark::State& state) {
    const Signal window = bench_window();
    const Dictionary dict = init_dictionary(16, 50, 11);
    StopCondition stop;
    stop.max_events_per_sample = 0.02;
    for (auto _ : state) {
        auto res = encode(window, dict, stop);
        benchmark::DoNotOptimize(res.srr_db);
    }
}
BENCHMARK(BM_EncodeWindowSparse)->Unit(benchmark::kMillisecond);

void BM_LearnStep(benchmark::State& state) {
    const Signal window = bench_window();
    StopCondition stop;
    stop.max_events_per_sample = 0.02;
    for (auto _ : state) {
        state.PauseTiming();
        Dictionary dict = init_dictionary(16, 50, 11);
        state.ResumeTiming();
        auto res = learn_step(window, dict, stop, LearnConfig{});
        benchmark::DoNotOptimize(res.residual_var);
    }
}
BENCHMARK(BM_LearnStep)->Unit(benchmark::kMillisecond);

// Correlation crossover: direct wins for short atoms, FFT for long ones.
void BM_CorrelateDirect(benchmark::State& state) {
    const std::size_t len = static_cast<std::size_t>(state.range(0));
    const Signal window = bench_window();
    Atom atom;
    atom.id = 0;
    atom.waveform.resize(len);
    CounterRng rng(5, 1);
    for (auto& v : atom.waveform) v = rng.next_normal();
    for (auto _ : state) {
        auto c = correlate(window, atom, CorrelatePath::Direct);
        benchmark::DoNotOptimize(c.data());
    }
}
BENCHMARK(BM_CorrelateDirect)->Arg(16)->Arg(50)->Arg(96)->Arg(192)->Arg(512)
    ->Unit(benchmark::kMillisecond);

void BM_CorrelateFft(benchmark::State& state) {
    const std::size_t len = static_cast<std::size_t>(state.range(0));
    const Signal window = bench_window();
    Atom atom;
    atom.id = 0;
    atom.waveform.resize(len);
    CounterRng rng(5, 1);
    for (auto& v : atom.waveform) v = rng.next_normal();
    for (auto _ : state) {
        auto c = correlate(window, atom, CorrelatePath::Fft);
        benchmark::DoNotOptimize(c.data());
    }
}
BENCHMARK(BM_CorrelateFft)->Arg(16)->Arg(50)->Arg(96)->Arg(192)->Arg(512)
    ->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
