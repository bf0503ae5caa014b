#include "sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "json.hpp"
#include "mmbb84/bounds.hpp"

namespace mmbb84::cli {

using io::ConfigError;
using nlohmann::json;
using quantum::Channel;

double SweepParam::value_at(std::size_t index) const {
  if (steps == 1) {
    return start;
  }
  return start + (stop - start) * static_cast<double>(index) / static_cast<double>(steps - 1);
}

SweepSpec sweep_spec_from_json(std::string_view text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("sweep: invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) {
    throw ConfigError("sweep: expected an object");
  }
  if (!obj.contains("channel")) {
    throw ConfigError("sweep.channel: missing");
  }

  SweepSpec spec;
  spec.channel = io::channel_from_json(obj["channel"].dump());

  if (!obj.contains("params") || !obj["params"].is_array() || obj["params"].empty() ||
      obj["params"].size() > 2) {
    throw ConfigError("sweep.params: expected an array of one or two parameters");
  }
  for (std::size_t i = 0; i < obj["params"].size(); ++i) {
    const json& p = obj["params"][i];
    const std::string where = "sweep.params[" + std::to_string(i) + "]";
    SweepParam param;
    if (!p.contains("name") || !p["name"].is_string()) {
      throw ConfigError(where + ".name: expected a string");
    }
    param.name = p["name"].get<std::string>();
    for (const char* field : {"start", "stop"}) {
      if (!p.contains(field) || !p[field].is_number()) {
        throw ConfigError(where + "." + field + ": expected a number");
      }
    }
    param.start = p["start"].get<double>();
    param.stop = p["stop"].get<double>();
    if (!p.contains("steps") || !p["steps"].is_number_unsigned() ||
        p["steps"].get<std::size_t>() < 1) {
      throw ConfigError(where + ".steps: expected a positive integer");
    }
    param.steps = p["steps"].get<std::size_t>();
    spec.params.push_back(std::move(param));
  }

  if (obj.contains("sessions_per_point")) {
    if (!obj["sessions_per_point"].is_number_unsigned() ||
        obj["sessions_per_point"].get<std::size_t>() < 1) {
      throw ConfigError("sweep.sessions_per_point: expected a positive integer");
    }
    spec.sessions_per_point = obj["sessions_per_point"].get<std::size_t>();
  }

  if (obj.contains("session")) {
    // Reuse the run-config parser; the channel lives at the sweep level.
    json wrapper = obj["session"];
    wrapper["channel"] = obj["channel"];
    spec.session = io::run_config_from_json(wrapper.dump()).session;
  }

  if (obj.contains("seed")) {
    if (!obj["seed"].is_number_unsigned()) {
      throw ConfigError("sweep.seed: expected an unsigned integer");
    }
    spec.seed = obj["seed"].get<std::uint64_t>();
  }
  if (obj.contains("out")) {
    if (!obj["out"].is_string()) {
      throw ConfigError("sweep.out: expected a string");
    }
    spec.out = obj["out"].get<std::string>();
  }

  // Every grid value must keep the channel valid; probe the extremes and all
  // grid points (cheap, and the diagnostic beats a mid-run failure).
  const std::size_t steps0 = spec.params[0].steps;
  const std::size_t steps1 = spec.params.size() > 1 ? spec.params[1].steps : 1;
  for (std::size_t i = 0; i < steps0; ++i) {
    for (std::size_t j = 0; j < steps1; ++j) {
      Channel probe = patch_channel(spec.channel, spec.params[0].name,
                                    spec.params[0].value_at(i));
      if (spec.params.size() > 1) {
        probe = patch_channel(probe, spec.params[1].name, spec.params[1].value_at(j));
      }
    }
  }
  return spec;
}

Channel patch_channel(const Channel& base, const std::string& param, double value) {
  try {
    if (base.kind() == Channel::Kind::Gamma) {
      double r_x = base.gamma_r_x();
      double r_z = base.gamma_r_z();
      double r_xz = base.gamma_r_xz();
      if (param == "r_x") {
        r_x = value;
      } else if (param == "r_z") {
        r_z = value;
      } else if (param == "r_xz") {
        r_xz = value;
      } else {
        throw ConfigError("sweep: gamma channels sweep r_x, r_z or r_xz, not '" + param + "'");
      }
      return Channel::gamma(r_x, r_z, r_xz);
    }
    if (base.kind() == Channel::Kind::UnitaryMixture) {
      std::size_t index = 0;
      if (param.rfind("terms[", 0) != 0 || param.back() != 'p' ||
          std::sscanf(param.c_str(), "terms[%zu].p", &index) != 1) {
        throw ConfigError("sweep: mixture channels sweep terms[i].p, not '" + param + "'");
      }
      auto terms = base.terms();
      if (terms.size() != 2) {
        throw ConfigError("sweep: weight sweeps need exactly two mixture terms");
      }
      if (index >= terms.size()) {
        throw ConfigError("sweep: term index out of range in '" + param + "'");
      }
      if (value < 0.0 || value > 1.0) {
        throw ConfigError("sweep: mixture weight outside [0, 1]");
      }
      terms[index].probability = value;
      terms[1 - index].probability = 1.0 - value;
      return Channel::unitary_mixture(std::move(terms));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sweep: swept channel left its validity range: ") + e.what());
  }
  throw ConfigError("sweep: kraus channels have no sweepable parameters");
}

namespace {

std::string csv_row(const std::optional<double>& param1, const std::optional<double>& param2,
                    const bounds::ChannelRates& rates, double matched, double mismatched,
                    const protocol::SessionResult& result) {
  const auto opt_double = [](const std::optional<double>& v) {
    return v ? io::format_csv_double(*v) : std::string();
  };
  std::string row;
  row += opt_double(param1);
  row += ',' + opt_double(param2);
  row += ',' + io::format_csv_double(rates.p_x);
  row += ',' + io::format_csv_double(rates.p_z);
  row += ',' + io::format_csv_double(rates.q_x);
  row += ',' + io::format_csv_double(rates.q_z);
  row += ',' + io::format_csv_double(matched);
  row += ',' + io::format_csv_double(mismatched);
  row += ',' + opt_double(result.q_hat_x);
  row += ',' + opt_double(result.q_hat_z);
  row += ',' + std::string(result.flip_applied() ? "true" : "false");
  row += ',' + std::string(result.decode_success() ? "true" : "false");
  row += ',' + std::to_string(result.key_length());
  row += ',' + std::string(result.abort_reason() ? protocol::to_string(*result.abort_reason())
                                                 : "");
  row += ',' + std::to_string(result.seed);
  return row;
}

}  // namespace

void run_sweep(const SweepSpec& spec, std::ostream& out) {
  const std::size_t steps0 = spec.params[0].steps;
  const std::size_t steps1 = spec.params.size() > 1 ? spec.params[1].steps : 1;
  const std::size_t points = steps0 * steps1;
  const std::size_t rows_per_point = spec.sessions_per_point;
  std::vector<std::string> rows(points * rows_per_point);

  std::atomic<std::size_t> next_point{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t point = next_point.fetch_add(1);
      if (point >= points) {
        return;
      }
      const std::size_t i = point / steps1;
      const std::size_t j = point % steps1;
      const double value1 = spec.params[0].value_at(i);
      std::optional<double> value2;
      Channel channel = patch_channel(spec.channel, spec.params[0].name, value1);
      if (spec.params.size() > 1) {
        value2 = spec.params[1].value_at(j);
        channel = patch_channel(channel, spec.params[1].name, *value2);
      }
      const bounds::ChannelRates rates = bounds::analytic_rates(channel);
      const double matched = bounds::matched_rate_bound(rates);
      const double mismatched = bounds::mismatched_rate_bound(rates);
      for (std::size_t s = 0; s < rows_per_point; ++s) {
        protocol::SessionConfig config = spec.session;
        config.seed = derive_seed(spec.seed, point, s);
        const protocol::SessionResult result = protocol::run_session(channel, config);
        rows[point * rows_per_point + s] = csv_row(value1, value2, rates, matched, mismatched, result);
      }
    }
  };

  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t thread_count = std::min(points, hw);
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(thread_count);
    for (std::size_t t = 0; t < thread_count; ++t) {
      threads.emplace_back(worker);
    }
    for (std::thread& t : threads) {
      t.join();
    }
  }

  out << kSweepCsvHeader << '\n';
  for (const std::string& row : rows) {
    out << row << '\n';
  }
}

}  // namespace mmbb84::cli
