// Acceptance suite: every release criterion as one pass/fail line.
// Exit code 0 only when every criterion holds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "mmbb84/bounds.hpp"
#include "mmbb84/css.hpp"
#include "mmbb84/io.hpp"
#include "mmbb84/protocol.hpp"
#include "mmbb84/quantum.hpp"
#include "subprocess.hpp"

using namespace mmbb84;
using nlohmann::json;
using testutil::cli_path;
using testutil::run_command;
using testutil::write_temp_file;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) {
    ++failures;
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Entropy coded independently of bounds::binary_entropy (natural logs).
double entropy_indep(double p) {
  if (p <= 0.0 || p >= 1.0) {
    return 0.0;
  }
  constexpr double ln2 = 0.69314718055994530942;
  return (-p * std::log(p) - (1.0 - p) * std::log(1.0 - p)) / ln2;
}

// 1. Pure-Hadamard channel: bounds are exactly +-1 and a noiseless session
//    extracts the full-length key, through the real CLI, in under 5 s.
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;

  const auto bounds_run = run_command(
      cli_path() + " bounds '{\"kind\":\"gamma\",\"r_x\":0,\"r_z\":0,\"r_xz\":0}' --format json");
  pass = pass && bounds_run.exit_code == 0;
  double mismatched = 0.0, matched = 0.0;
  if (pass) {
    const json parsed = json::parse(bounds_run.output);
    mismatched = parsed["mismatched_bound"].get<double>();
    matched = parsed["matched_bound"].get<double>();
    pass = pass && std::abs(mismatched - 1.0) <= 1e-9 && std::abs(matched + 1.0) <= 1e-9;
  }

  const std::string config = write_temp_file("acceptance_c1.json", R"({
    "channel": {"kind":"gamma","r_x":0,"r_z":0,"r_xz":0},
    "count": 4096,
    "sample_fraction": 0.5,
    "code": {"kind":"random","n":16,"rate":0.75},
    "seed": 7
  })");
  const auto run = run_command(cli_path() + " run " + config);
  pass = pass && run.exit_code == 0;
  if (run.exit_code == 0) {
    const json parsed = json::parse(run.output);
    pass = pass && parsed["q_hat_x"].get<double>() == 0.0;
    pass = pass && parsed["q_hat_z"].get<double>() == 0.0;
    pass = pass && parsed["abort_reason"].is_null();
    pass = pass && !parsed["alice_key"].is_null() &&
           parsed["alice_key"].get<std::string>() == parsed["bob_key"].get<std::string>();
    pass = pass && parsed["key_length"].get<std::size_t>() ==
                       parsed["dim_c1"].get<std::size_t>();
    detail = "mismatched_bound=" + io::format_csv_double(mismatched) +
             " matched_bound=" + io::format_csv_double(matched) +
             " key_length=" + std::to_string(parsed["key_length"].get<std::size_t>());
  }
  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 5.0;
  report(1, pass, detail + " elapsed=" + io::format_csv_double(elapsed) + "s (limit 5)");
}

// 2. Mismatched key-rate formula 1 - 2 h(0.05) for the 0.9H/0.1I mixture,
//    against an independent entropy evaluation and 200-session statistics.
void criterion_2() {
  const quantum::Channel ch = quantum::Channel::unitary_mixture(
      {{0.9, quantum::named_unitary(quantum::UnitaryName::H)},
       {0.1, quantum::named_unitary(quantum::UnitaryName::I)}});
  const bounds::ChannelRates rates = bounds::analytic_rates(ch);
  const double bound = bounds::mismatched_rate_bound(rates);
  const double expected = 1.0 - 2.0 * entropy_indep(0.05);
  bool pass = std::abs(bound - expected) <= 1e-3 && std::abs(bound - 0.4272) <= 1e-3;

  protocol::SessionConfig config;
  config.count = 8192;
  config.code = protocol::CodeSpec{protocol::CodeSpec::Kind::Hamming74, 7, std::nullopt, 0.05};
  const int sessions = 200;
  double sum_x = 0.0, sum_z = 0.0, mean_m = 0.0;
  for (int s = 0; s < sessions; ++s) {
    config.seed = derive_seed(2, 0, static_cast<std::uint64_t>(s));
    const protocol::SessionResult result = protocol::run_session(ch, config);
    sum_x += result.q_hat_x.value_or(-1.0);
    sum_z += result.q_hat_z.value_or(-1.0);
    mean_m += std::llround(0.5 * static_cast<double>(result.counts.mismatched_ab));
  }
  const double mean_x = sum_x / sessions;
  const double mean_z = sum_z / sessions;
  mean_m /= sessions;
  const double tolerance = 3.0 * std::sqrt(0.05 * 0.95 / mean_m) / std::sqrt(sessions);
  pass = pass && std::abs(mean_x - 0.05) <= tolerance && std::abs(mean_z - 0.05) <= tolerance;
  report(2, pass,
         "bound=" + io::format_csv_double(bound) + " expected=" + io::format_csv_double(expected) +
             " mean_q_hat_x=" + io::format_csv_double(mean_x) +
             " mean_q_hat_z=" + io::format_csv_double(mean_z) +
             " tolerance=" + io::format_csv_double(tolerance));
}

// 3. Gamma rates reproduce q_x = r_x + r_xz and q_z = r_z + r_xz on the simplex.
void criterion_3() {
  RandomStream rng(33);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    double e[4];
    for (double& v : e) {
      v = -std::log(1.0 - rng.next_unit());
    }
    const double total = e[0] + e[1] + e[2] + e[3];
    const double r_x = e[0] / total, r_z = e[1] / total, r_xz = e[2] / total;
    const bounds::ChannelRates rates =
        bounds::analytic_rates(quantum::Channel::gamma(r_x, r_z, r_xz));
    worst = std::max(worst, std::abs(rates.q_x - (r_x + r_xz)));
    worst = std::max(worst, std::abs(rates.q_z - (r_z + r_xz)));
  }
  report(3, worst <= 1e-12,
         "100 simplex triples, worst |q - (r + r_xz)| = " + io::format_csv_double(worst) +
             " (limit 1e-12)");
}

// 4. Entropic trade-off over 1000 random Kraus channels plus both equality
//    cases, in under 30 s.
void criterion_4() {
  const auto start = std::chrono::steady_clock::now();
  RandomStream rng(44);
  double worst_pairwise = 2.0;
  double worst_f11 = -2.0;
  bool pass = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const bounds::TradeoffReport r = bounds::verify_tradeoff(quantum::random_channel(rng));
    worst_pairwise =
        std::min({worst_pairwise, r.lhs_f1, r.lhs_f2, r.lhs_f3, r.lhs_f4});
    worst_f11 = std::max(worst_f11, r.f11_sum);
    pass = pass && r.lhs_f1 >= 1.0 - 1e-9 && r.lhs_f2 >= 1.0 - 1e-9 &&
           r.lhs_f3 >= 1.0 - 1e-9 && r.lhs_f4 >= 1.0 - 1e-9 && r.f11_sum <= 1e-9;
  }
  const double f11_identity = bounds::verify_tradeoff(quantum::Channel::identity()).f11_sum;
  const double f11_hadamard =
      bounds::verify_tradeoff(quantum::Channel::gamma(0, 0, 0)).f11_sum;
  pass = pass && std::abs(f11_identity) <= 1e-9 && std::abs(f11_hadamard) <= 1e-9;
  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 30.0;
  report(4, pass,
         "1000 channels, min pairwise sum=" + io::format_csv_double(worst_pairwise) +
             " max f11_sum=" + io::format_csv_double(worst_f11) +
             " equality cases=" + io::format_csv_double(f11_identity) + "," +
             io::format_csv_double(f11_hadamard) + " elapsed=" +
             io::format_csv_double(elapsed) + "s (limit 30)");
}

// 5. Uncertainty sum >= 1 on 10^4 random states; eigenstates sit at 1.
void criterion_5() {
  RandomStream rng(55);
  double min_sum = 2.0;
  for (int trial = 0; trial < 10000; ++trial) {
    // Mixture of up to three random pure states.
    const int parts = 1 + static_cast<int>(rng.next_below(3));
    quantum::Mat2 acc;
    double total = 0.0;
    std::vector<double> weights(parts);
    for (double& w : weights) {
      w = rng.next_unit() + 1e-9;
      total += w;
    }
    for (int i = 0; i < parts; ++i) {
      quantum::Complex a0(rng.next_gaussian(), rng.next_gaussian());
      quantum::Complex a1(rng.next_gaussian(), rng.next_gaussian());
      const double norm = std::sqrt(std::norm(a0) + std::norm(a1));
      if (norm < 1e-9) {
        a0 = 1.0;
        a1 = 0.0;
      } else {
        a0 /= norm;
        a1 /= norm;
      }
      acc = acc + quantum::Mat2{a0 * std::conj(a0), a0 * std::conj(a1), a1 * std::conj(a0),
                                a1 * std::conj(a1)}
                      .scaled(weights[i] / total);
    }
    min_sum = std::min(
        min_sum, bounds::uncertainty_sum(quantum::DensityOperator::from_matrix(acc)));
  }
  bool pass = min_sum >= 1.0 - 1e-9;
  double worst_eigenstate = 0.0;
  for (quantum::Basis basis : {quantum::Basis::Z, quantum::Basis::X}) {
    for (int outcome : {0, 1}) {
      const double sum = bounds::uncertainty_sum(
          quantum::DensityOperator::from_pure(quantum::basis_state(basis, outcome)));
      worst_eigenstate = std::max(worst_eigenstate, std::abs(sum - 1.0));
    }
  }
  pass = pass && worst_eigenstate <= 1e-6;
  report(5, pass,
         "10000 states, min uncertainty sum=" + io::format_csv_double(min_sum) +
             " eigenstate deviation=" + io::format_csv_double(worst_eigenstate));
}

// 6. CSS mixture identities through the CLI at n = 2, 3, 4, exhaustively
//    over every (x, v), in under 60 s.
void criterion_6() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  double worst = 0.0;
  const struct {
    int n, dim1, dim2;
  } cases[] = {{2, 2, 1}, {3, 2, 1}, {4, 3, 1}};
  for (const auto& c : cases) {
    const auto result = run_command(cli_path() + " css-verify --n " + std::to_string(c.n) +
                                    " --dim-c1 " + std::to_string(c.dim1) + " --dim-c2 " +
                                    std::to_string(c.dim2) +
                                    " --trials 3 --seed 6 --format json");
    pass = pass && result.exit_code == 0;
    if (result.exit_code == 0) {
      const json parsed = json::parse(result.output);
      const double mixture = parsed["max_mixture_distance"].get<double>();
      const double uniform = parsed["max_uniform_distance"].get<double>();
      worst = std::max({worst, mixture, uniform});
      pass = pass && mixture <= 1e-10 && uniform <= 1e-10;
    }
  }
  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 60.0;
  report(6, pass,
         "n=2,3,4 exhaustive, worst trace distance=" + io::format_csv_double(worst) +
             " (limit 1e-10) elapsed=" + io::format_csv_double(elapsed) + "s (limit 60)");
}

// 7. Hamming(7,4) tiled reconciliation at 1% bit flips: at least 95% of
//    blocks decode exactly and matching keys on every decode success.
void criterion_7() {
  const quantum::Channel ch = quantum::Channel::gamma(0.01, 0.0, 0.0);
  protocol::SessionConfig config;
  config.count = 8192;  // leaves ~1024 undisclosed a/b bits: 146 blocks, 1022 bits
  config.code = protocol::CodeSpec{protocol::CodeSpec::Kind::Hamming74, 7, std::nullopt, 0.05};
  std::size_t blocks_total = 0, blocks_ok = 0, bits_used = 0;
  std::size_t successes = 0, key_matches = 0, sessions_run = 0;
  for (int s = 0; s < 100; ++s) {
    config.seed = derive_seed(7, 0, static_cast<std::uint64_t>(s));
    const protocol::SessionResult result = protocol::run_session(ch, config);
    ++sessions_run;
    blocks_total += result.primary.blocks_total;
    blocks_ok += result.primary.blocks_ok;
    bits_used += result.primary.blocks_total * result.primary.block_length;
    if (result.decode_success()) {
      ++successes;
      if (result.primary.alice_key && result.primary.bob_key &&
          *result.primary.alice_key == *result.primary.bob_key) {
        ++key_matches;
      }
    }
  }
  const double block_rate =
      blocks_total == 0 ? 0.0 : static_cast<double>(blocks_ok) / static_cast<double>(blocks_total);
  const bool pass = block_rate >= 0.95 && successes > 0 && key_matches == successes;
  report(7, pass,
         "block decode rate=" + io::format_csv_double(block_rate) + " (" +
             std::to_string(blocks_ok) + "/" + std::to_string(blocks_total) +
             ", mean bits/session=" +
             std::to_string(bits_used / sessions_run) + "), key match " +
             std::to_string(key_matches) + "/" + std::to_string(successes) + " successes");
}

// 8. All-HX channel: estimate pegged at one, flip applied, clean decode.
void criterion_8() {
  const quantum::Channel ch = quantum::Channel::unitary_mixture(
      {{1.0, quantum::named_unitary(quantum::UnitaryName::HX)}});
  protocol::SessionConfig config;
  config.count = 4096;
  config.code = protocol::CodeSpec{protocol::CodeSpec::Kind::Hamming74, 7, std::nullopt, 0.05};
  config.seed = 8;
  const protocol::SessionResult result = protocol::run_session(ch, config);
  bool pass = result.q_hat_x.has_value() && *result.q_hat_x == 1.0;
  pass = pass && result.flip_applied();
  pass = pass && result.decode_success() &&
         result.primary.blocks_ok == result.primary.blocks_total;
  pass = pass && result.primary.alice_key && result.primary.bob_key &&
         *result.primary.alice_key == *result.primary.bob_key;
  report(8, pass,
         "q_hat_x=" + io::format_csv_double(result.q_hat_x.value_or(-1.0)) + " flip=" +
             (result.flip_applied() ? "true" : "false") + " blocks=" +
             std::to_string(result.primary.blocks_ok) + "/" +
             std::to_string(result.primary.blocks_total) +
             " key_length=" + std::to_string(result.key_length()));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("acceptance: %d/8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
