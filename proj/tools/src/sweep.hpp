#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mmbb84/io.hpp"
#include "mmbb84/protocol.hpp"
#include "mmbb84/quantum.hpp"

namespace mmbb84::cli {

/// One swept channel parameter: `steps` evenly spaced values from start to
/// stop (steps == 1 pins the value at start).
struct SweepParam {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 1;

  double value_at(std::size_t index) const;
};

/// Grid description for cmd_sweep: a channel template with one or two swept
/// parameters, a base session configuration, and seeding.
struct SweepSpec {
  quantum::Channel channel = quantum::Channel::identity();
  std::vector<SweepParam> params;  // one or two entries
  std::size_t sessions_per_point = 1;
  protocol::SessionConfig session;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
};

SweepSpec sweep_spec_from_json(std::string_view text);

/// The channel template with one parameter replaced. Gamma channels sweep
/// r_x / r_z / r_xz; two-term unitary mixtures sweep terms[i].p with the
/// other weight renormalized to keep the simplex constraint.
quantum::Channel patch_channel(const quantum::Channel& base, const std::string& param,
                               double value);

inline constexpr std::string_view kSweepCsvHeader =
    "param1,param2,p_x,p_z,q_x,q_z,matched_bound,mismatched_bound,"
    "q_hat_x,q_hat_z,flip_applied,decode_success,key_length,abort_reason,seed";

/// Runs the whole grid (points dispatched to worker threads, each session
/// seeded as derive_seed(seed, point, session)) and writes CSV rows in grid
/// order.
void run_sweep(const SweepSpec& spec, std::ostream& out);

}  // namespace mmbb84::cli
