#include <benchmark/benchmark.h>

#include "mmbb84/bounds.hpp"
#include "mmbb84/css.hpp"
#include "mmbb84/gf2.hpp"
#include "mmbb84/linear_code.hpp"
#include "mmbb84/protocol.hpp"
#include "mmbb84/quantum.hpp"

using namespace mmbb84;

namespace {

void BM_Gf2Rank(benchmark::State& state) {
  RandomStream rng(1);
  const gf2::Matrix m = gf2::Matrix::random(state.range(0), 2 * state.range(0), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gf2::rank(m));
  }
}
BENCHMARK(BM_Gf2Rank)->Arg(64)->Arg(256);

void BM_SyndromeTableBuild(benchmark::State& state) {
  RandomStream rng(2);
  const auto code = gf2::LinearCode::random_code(state.range(0), state.range(0) / 2, rng);
  for (auto _ : state) {
    gf2::SyndromeTable table(code.parity_check());
    benchmark::DoNotOptimize(table.syndrome_bits());
  }
}
BENCHMARK(BM_SyndromeTableBuild)->Arg(16)->Arg(24)->Arg(32);

void BM_SyndromeDecode(benchmark::State& state) {
  RandomStream rng(3);
  const auto code = gf2::LinearCode::random_code(24, 12, rng);
  const gf2::SyndromeTable table(code.parity_check());
  const gf2::Vector syndrome = gf2::Vector::random(12, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(table.decode(syndrome));
  }
}
BENCHMARK(BM_SyndromeDecode);

void BM_CosetLabelTiled(benchmark::State& state) {
  RandomStream rng(4);
  const auto composite = gf2::LinearCode::tiled(gf2::LinearCode::hamming74(), state.range(0));
  const auto c2 = gf2::sample_subcode(composite, composite.dimension() / 2, rng);
  const gf2::Vector word = composite.encode(gf2::Vector::random(composite.dimension(), rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gf2::coset_label(word, composite, c2));
  }
}
BENCHMARK(BM_CosetLabelTiled)->Arg(32)->Arg(146)->Unit(benchmark::kMillisecond);

void BM_ApplyChannelKraus(benchmark::State& state) {
  RandomStream rng(5);
  const auto channel = quantum::random_channel(rng);
  const auto rho = quantum::DensityOperator::from_pure(quantum::basis_state(quantum::Basis::X, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum::apply_channel(channel, rho));
  }
}
BENCHMARK(BM_ApplyChannelKraus);

void BM_SampleMeasurement(benchmark::State& state) {
  RandomStream rng(6);
  const auto channel = quantum::Channel::gamma(0.05, 0.02, 0.01);
  const auto input = quantum::basis_state(quantum::Basis::Z, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        quantum::sample_measurement(channel, input, quantum::Basis::X, rng));
  }
}
BENCHMARK(BM_SampleMeasurement);

void BM_CssAverageOverZ(benchmark::State& state) {
  RandomStream rng(7);
  const auto c1 = gf2::LinearCode::random_code(state.range(0), state.range(0) - 1, rng);
  const auto c2 = gf2::sample_subcode(c1, 1, rng);
  const gf2::Vector v = c1.generator().row(0);
  const gf2::Vector x(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(css::average_over_z(c1, c2, v, x));
  }
}
BENCHMARK(BM_CssAverageOverZ)->Arg(4)->Arg(6);

void BM_RunSession(benchmark::State& state) {
  const auto channel = quantum::Channel::gamma(0.01, 0.0, 0.0);
  protocol::SessionConfig config;
  config.count = state.range(0);
  config.code = protocol::CodeSpec{protocol::CodeSpec::Kind::Hamming74, 7, std::nullopt, 0.05};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    config.seed = seed++;
    benchmark::DoNotOptimize(protocol::run_session(channel, config));
  }
}
BENCHMARK(BM_RunSession)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_VerifyTradeoff(benchmark::State& state) {
  RandomStream rng(8);
  const auto channel = quantum::random_channel(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds::verify_tradeoff(channel));
  }
}
BENCHMARK(BM_VerifyTradeoff);

}  // namespace

BENCHMARK_MAIN();
