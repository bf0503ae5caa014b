#include "mmbb84/io.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace mmbb84::io {

using nlohmann::json;
using quantum::Channel;
using quantum::Mat2;

namespace {

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
}

const json& require_field(const json& obj, const std::string& path, const char* field) {
  if (!obj.is_object()) {
    throw ConfigError(path + ": expected an object");
  }
  const auto it = obj.find(field);
  if (it == obj.end()) {
    throw ConfigError(path + "." + field + ": missing");
  }
  return *it;
}

double as_number(const json& value, const std::string& where) {
  if (!value.is_number()) {
    throw ConfigError(where + ": expected a number");
  }
  return value.get<double>();
}

Mat2 matrix_from_json(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_array() || !value[1].is_array() ||
      value[0].size() != 2 || value[1].size() != 2) {
    throw ConfigError(where + ": expected a 2x2 matrix of [re, im] pairs");
  }
  const auto entry = [&](int r, int c) -> quantum::Complex {
    const json& cell = value[r][c];
    if (!cell.is_array() || cell.size() != 2) {
      throw ConfigError(where + ": each entry must be [re, im]");
    }
    return {as_number(cell[0], where), as_number(cell[1], where)};
  };
  return {entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)};
}

Mat2 unitary_from_json(const json& value, const std::string& where) {
  if (value.is_string()) {
    const auto name = quantum::unitary_name_from_string(value.get<std::string>());
    if (!name) {
      throw ConfigError(where + ": unknown unitary name '" + value.get<std::string>() + "'");
    }
    return quantum::named_unitary(*name);
  }
  return matrix_from_json(value, where);
}

Channel channel_from_parsed(const json& obj, const std::string& path) {
  const json& kind = require_field(obj, path, "kind");
  if (!kind.is_string()) {
    throw ConfigError(path + ".kind: expected a string");
  }
  const std::string kind_name = kind.get<std::string>();
  try {
    if (kind_name == "gamma") {
      return Channel::gamma(as_number(require_field(obj, path, "r_x"), path + ".r_x"),
                            as_number(require_field(obj, path, "r_z"), path + ".r_z"),
                            as_number(require_field(obj, path, "r_xz"), path + ".r_xz"));
    }
    if (kind_name == "unitary_mixture") {
      const json& terms = require_field(obj, path, "terms");
      if (!terms.is_array() || terms.empty()) {
        throw ConfigError(path + ".terms: expected a non-empty array");
      }
      std::vector<Channel::Term> parsed;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string where = path + ".terms[" + std::to_string(i) + "]";
        parsed.push_back(
            {as_number(require_field(terms[i], where, "p"), where + ".p"),
             unitary_from_json(require_field(terms[i], where, "u"), where + ".u")});
      }
      return Channel::unitary_mixture(std::move(parsed));
    }
    if (kind_name == "kraus") {
      const json& ops = require_field(obj, path, "ops");
      if (!ops.is_array() || ops.empty()) {
        throw ConfigError(path + ".ops: expected a non-empty array");
      }
      std::vector<Mat2> parsed;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        parsed.push_back(matrix_from_json(ops[i], path + ".ops[" + std::to_string(i) + "]"));
      }
      return Channel::kraus(std::move(parsed));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
  throw ConfigError(path + ".kind: unknown channel kind '" + kind_name + "'");
}

std::string quote(std::string_view s) { return '"' + std::string(s) + '"'; }

std::string matrix_to_json(const Mat2& m) {
  const auto cell = [](const quantum::Complex& c) {
    return "[" + format_json_double(c.real()) + "," + format_json_double(c.imag()) + "]";
  };
  return "[[" + cell(m.m00) + "," + cell(m.m01) + "],[" + cell(m.m10) + "," + cell(m.m11) + "]]";
}

std::string unitary_to_json(const Mat2& m) {
  using quantum::UnitaryName;
  for (UnitaryName name : {UnitaryName::I, UnitaryName::X, UnitaryName::Z, UnitaryName::XZ,
                           UnitaryName::H, UnitaryName::HX, UnitaryName::HZ, UnitaryName::HXZ}) {
    if (quantum::named_unitary(name).distance(m) == 0.0) {
      return quote(quantum::to_string(name));
    }
  }
  return matrix_to_json(m);
}

protocol::CodeSpec code_spec_from_json(const json& obj, const std::string& path) {
  const json& kind = require_field(obj, path, "kind");
  if (!kind.is_string()) {
    throw ConfigError(path + ".kind: expected a string");
  }
  const std::string kind_name = kind.get<std::string>();
  protocol::CodeSpec spec;
  if (kind_name == "hamming74") {
    spec.kind = protocol::CodeSpec::Kind::Hamming74;
    spec.n = 7;
    return spec;
  }
  if (kind_name == "repetition" || kind_name == "random") {
    const double n = as_number(require_field(obj, path, "n"), path + ".n");
    if (n < 2 || n > 64 || n != static_cast<double>(static_cast<std::size_t>(n))) {
      throw ConfigError(path + ".n: expected an integer in [2, 64]");
    }
    spec.n = static_cast<std::size_t>(n);
    if (kind_name == "repetition") {
      spec.kind = protocol::CodeSpec::Kind::Repetition;
      return spec;
    }
    spec.kind = protocol::CodeSpec::Kind::Random;
    if (obj.contains("rate")) {
      const double rate = as_number(obj["rate"], path + ".rate");
      if (rate <= 0.0 || rate >= 1.0) {
        throw ConfigError(path + ".rate: expected a value in (0, 1)");
      }
      spec.rate = rate;
    }
    if (obj.contains("margin")) {
      const double margin = as_number(obj["margin"], path + ".margin");
      if (margin < 0.0 || margin >= 1.0) {
        throw ConfigError(path + ".margin: expected a value in [0, 1)");
      }
      spec.margin = margin;
    }
    return spec;
  }
  throw ConfigError(path + ".kind: unknown code kind '" + kind_name + "'");
}

std::string optional_double_to_json(const std::optional<double>& value) {
  return value ? format_json_double(*value) : "null";
}

std::string optional_key_to_json(const std::optional<gf2::Vector>& key) {
  return key ? quote(key->to_string()) : "null";
}

std::string abort_to_json(const std::optional<protocol::AbortReason>& abort) {
  return abort ? quote(protocol::to_string(*abort)) : "null";
}

std::string stream_to_json(const protocol::StreamResult& s) {
  std::string out = "{";
  out += quote("q_hat_bit") + ":" + format_json_double(s.q_hat_bit);
  out += "," + quote("q_hat_phase") + ":" + format_json_double(s.q_hat_phase);
  out += "," + quote("flip_applied") + ":" + (s.flip_applied ? "true" : "false");
  out += "," + quote("syndrome") + ":" + quote(s.syndrome.to_string());
  out += "," + quote("blocks_total") + ":" + std::to_string(s.blocks_total);
  out += "," + quote("blocks_ok") + ":" + std::to_string(s.blocks_ok);
  out += "," + quote("decode_success") + ":" + (s.decode_success ? "true" : "false");
  out += "," + quote("block_length") + ":" + std::to_string(s.block_length);
  out += "," + quote("dim_c1") + ":" + std::to_string(s.dim_c1);
  out += "," + quote("dim_c2") + ":" + std::to_string(s.dim_c2);
  out += "," + quote("key_length") + ":" + std::to_string(s.key_length());
  out += "," + quote("alice_key") + ":" + optional_key_to_json(s.alice_key);
  out += "," + quote("bob_key") + ":" + optional_key_to_json(s.bob_key);
  out += "," + quote("abort_reason") + ":" + abort_to_json(s.abort);
  out += "}";
  return out;
}

}  // namespace

std::string format_json_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string format_csv_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

Channel channel_from_json(std::string_view text) {
  return channel_from_parsed(parse_text(text), "channel");
}

std::string channel_to_json(const Channel& channel) {
  switch (channel.kind()) {
    case Channel::Kind::Gamma:
      return "{\"kind\":\"gamma\",\"r_x\":" + format_json_double(channel.gamma_r_x()) +
             ",\"r_z\":" + format_json_double(channel.gamma_r_z()) +
             ",\"r_xz\":" + format_json_double(channel.gamma_r_xz()) + "}";
    case Channel::Kind::UnitaryMixture: {
      std::string out = "{\"kind\":\"unitary_mixture\",\"terms\":[";
      const auto& terms = channel.terms();
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0) out += ",";
        out += "{\"p\":" + format_json_double(terms[i].probability) +
               ",\"u\":" + unitary_to_json(terms[i].unitary) + "}";
      }
      return out + "]}";
    }
    case Channel::Kind::Kraus: {
      std::string out = "{\"kind\":\"kraus\",\"ops\":[";
      const auto& ops = channel.kraus_operators();
      for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i > 0) out += ",";
        out += matrix_to_json(ops[i]);
      }
      return out + "]}";
    }
  }
  throw std::logic_error("channel_to_json: unknown kind");
}

RunConfig run_config_from_json(std::string_view text) {
  const json obj = parse_text(text);
  if (!obj.is_object()) {
    throw ConfigError("config: expected an object");
  }
  RunConfig config;
  config.channel = channel_from_parsed(require_field(obj, "config", "channel"), "channel");

  if (obj.contains("count")) {
    const double count = as_number(obj["count"], "config.count");
    if (count < 1 || count > 1e9 || count != std::floor(count)) {
      throw ConfigError("config.count: expected a positive integer");
    }
    config.session.count = static_cast<std::size_t>(count);
  }
  if (obj.contains("sample_fraction")) {
    const double f = as_number(obj["sample_fraction"], "config.sample_fraction");
    if (f <= 0.0 || f >= 1.0) {
      throw ConfigError("config.sample_fraction: expected a value in (0, 1)");
    }
    config.session.sample_fraction = f;
  }
  if (obj.contains("guard_band")) {
    const double g = as_number(obj["guard_band"], "config.guard_band");
    if (g >= 0.5) {
      throw ConfigError("config.guard_band: expected a value below 0.5");
    }
    config.session.guard_band = g;
  }
  if (obj.contains("code")) {
    config.session.code = code_spec_from_json(obj["code"], "config.code");
  }
  if (obj.contains("seed")) {
    const json& seed = obj["seed"];
    if (!seed.is_number_unsigned()) {
      throw ConfigError("config.seed: expected an unsigned integer");
    }
    config.session.seed = seed.get<std::uint64_t>();
  }
  if (obj.contains("process_matched")) {
    if (!obj["process_matched"].is_boolean()) {
      throw ConfigError("config.process_matched: expected a boolean");
    }
    config.session.process_matched = obj["process_matched"].get<bool>();
  }
  if (obj.contains("process_alphabeta")) {
    if (!obj["process_alphabeta"].is_boolean()) {
      throw ConfigError("config.process_alphabeta: expected a boolean");
    }
    config.session.process_alphabeta = obj["process_alphabeta"].get<bool>();
  }
  return config;
}

std::string session_result_to_json(const protocol::SessionResult& result) {
  const protocol::StreamResult& p = result.primary;
  std::string out = "{";
  out += quote("q_hat_x") + ":" + optional_double_to_json(result.q_hat_x);
  out += "," + quote("q_hat_z") + ":" + optional_double_to_json(result.q_hat_z);
  out += "," + quote("flip_applied") + ":" + (p.flip_applied ? "true" : "false");
  out += "," + quote("syndrome") + ":" + quote(p.syndrome.to_string());
  out += "," + quote("decode_success") + ":" + (p.decode_success ? "true" : "false");
  out += "," + quote("blocks_total") + ":" + std::to_string(p.blocks_total);
  out += "," + quote("blocks_ok") + ":" + std::to_string(p.blocks_ok);
  out += "," + quote("block_length") + ":" + std::to_string(p.block_length);
  out += "," + quote("dim_c1") + ":" + std::to_string(p.dim_c1);
  out += "," + quote("dim_c2") + ":" + std::to_string(p.dim_c2);
  out += "," + quote("key_length") + ":" + std::to_string(p.key_length());
  out += "," + quote("alice_key") + ":" + optional_key_to_json(p.alice_key);
  out += "," + quote("bob_key") + ":" + optional_key_to_json(p.bob_key);
  out += "," + quote("abort_reason") + ":" + abort_to_json(p.abort);
  out += "," + quote("seed") + ":" + std::to_string(result.seed);
  out += "," + quote("counts") + ":{";
  out += quote("total") + ":" + std::to_string(result.counts.total);
  out += "," + quote("matched_z") + ":" + std::to_string(result.counts.matched_z);
  out += "," + quote("matched_x") + ":" + std::to_string(result.counts.matched_x);
  out += "," + quote("mismatched_ab") + ":" + std::to_string(result.counts.mismatched_ab);
  out += "," + quote("mismatched_alphabeta") + ":" +
         std::to_string(result.counts.mismatched_alphabeta);
  out += "}";
  out += "," + quote("alphabeta") + ":" +
         (result.alphabeta ? stream_to_json(*result.alphabeta) : "null");
  out += "," + quote("matched_z") + ":" +
         (result.matched_z ? stream_to_json(*result.matched_z) : "null");
  out += "," + quote("matched_x") + ":" +
         (result.matched_x ? stream_to_json(*result.matched_x) : "null");
  out += "}";
  return out;
}

}  // namespace mmbb84::io
