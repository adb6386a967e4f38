// Microbenchmarks for the hot paths: flow evaluation, integration,
// keystream generation, and the cipher stages. Long-running generator
// benchmarks reset the stream well inside the horizon the test suite has
// verified to stay on the attractor, so timing never mixes in divergence
// handling.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "memchaos/cipher.hpp"
#include "memchaos/image.hpp"
#include "memchaos/integrate.hpp"
#include "memchaos/keystream.hpp"
#include "memchaos/prng.hpp"
#include "memchaos/system.hpp"

namespace {

using namespace memchaos;

constexpr std::uint64_t kStreamResetSteps = 1200000;

Image noise_image(std::uint32_t side, std::uint64_t seed) {
    Image img;
    img.width = side;
    img.height = side;
    img.pixels.resize(3 * static_cast<std::size_t>(side) * side);
    SplitMix64 rng(seed);
    for (auto& b : img.pixels) b = static_cast<std::uint8_t>(rng.next() & 0xFF);
    return img;
}

void BM_VectorField(benchmark::State& state) {
    const Key key = canonical_key();
    State7 s{0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(s);
        State7 d = vector_field(s, key.params);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_VectorField);

void BM_IntegrationStep(benchmark::State& state) {
    const Key key = canonical_key();
    Rk4Stepper stepper(key.init, key.params, 1e-3);
    for (auto _ : state) {
        if (stepper.steps_taken() > kStreamResetSteps) {
            state.PauseTiming();
            stepper = Rk4Stepper(key.init, key.params, 1e-3);
            state.ResumeTiming();
        }
        stepper.step();
        benchmark::DoNotOptimize(stepper.state());
    }
}
BENCHMARK(BM_IntegrationStep);

void BM_KeystreamFill(benchmark::State& state) {
    KeystreamGenerator gen(canonical_key());
    std::vector<std::uint8_t> buf(4096);
    for (auto _ : state) {
        if (gen.steps_taken() > kStreamResetSteps) {
            state.PauseTiming();
            gen = KeystreamGenerator(canonical_key());
            state.ResumeTiming();
        }
        gen.fill(buf.data(), buf.size());
        benchmark::DoNotOptimize(buf.data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(buf.size()));
}
BENCHMARK(BM_KeystreamFill);

void BM_KeyedPermutation(benchmark::State& state) {
    KeystreamGenerator gen(canonical_key());
    const std::size_t n = 65536;
    for (auto _ : state) {
        if (gen.steps_taken() > kStreamResetSteps) {
            state.PauseTiming();
            gen = KeystreamGenerator(canonical_key());
            state.ResumeTiming();
        }
        auto perm = cipher::keyed_permutation(n, gen);
        benchmark::DoNotOptimize(perm.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_KeyedPermutation);

void BM_ArnoldForward(benchmark::State& state) {
    SplitMix64 rng(7);
    std::vector<std::uint8_t> plane(256 * 256);
    for (auto& b : plane) b = static_cast<std::uint8_t>(rng.next() & 0xFF);
    cipher::ArnoldParams ap;
    ap.side = 256;
    ap.a = 3;
    ap.b = 5;
    ap.rounds = 1;
    for (auto _ : state) {
        auto out = cipher::arnold_forward(plane, ap);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(plane.size()));
}
BENCHMARK(BM_ArnoldForward);

void BM_Diffuse(benchmark::State& state) {
    KeystreamGenerator gen(canonical_key());
    SplitMix64 rng(11);
    std::vector<std::uint8_t> buf(65536);
    for (auto& b : buf) b = static_cast<std::uint8_t>(rng.next() & 0xFF);
    for (auto _ : state) {
        if (gen.steps_taken() > kStreamResetSteps) {
            state.PauseTiming();
            gen = KeystreamGenerator(canonical_key());
            state.ResumeTiming();
        }
        auto out = cipher::diffuse(buf, gen);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(buf.size()));
}
BENCHMARK(BM_Diffuse);

void BM_EncryptImage256(benchmark::State& state) {
    const Key key = canonical_key();
    const Image img = noise_image(256, 3);
    for (auto _ : state) {
        auto env = cipher::encrypt_image(img, key);
        benchmark::DoNotOptimize(env.planes.data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(img.pixels.size()));
}
BENCHMARK(BM_EncryptImage256)->Unit(benchmark::kMillisecond);

void BM_DecryptImage256(benchmark::State& state) {
    const Key key = canonical_key();
    const Image img = noise_image(256, 4);
    const cipher::CipherEnvelope env = cipher::encrypt_image(img, key);
    for (auto _ : state) {
        Image back = cipher::decrypt_image(env, key);
        benchmark::DoNotOptimize(back.pixels.data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(img.pixels.size()));
}
BENCHMARK(BM_DecryptImage256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
