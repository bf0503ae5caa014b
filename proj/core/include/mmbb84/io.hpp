#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "mmbb84/protocol.hpp"
#include "mmbb84/quantum.hpp"

namespace mmbb84::io {

/// Malformed or invalid configuration text; the message names the field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Channel wire schema (JSON):
///   {"kind":"gamma","r_x":R,"r_z":R,"r_xz":R}
///   {"kind":"unitary_mixture","terms":[{"p":R,"u":U},...]}
///   {"kind":"kraus","ops":[M,...]}
/// where U is a unitary name ("I","X","Z","XZ","H","HX","HZ","HXZ") or an
/// explicit matrix M = [[[re,im],[re,im]],[[re,im],[re,im]]].
quantum::Channel channel_from_json(std::string_view text);
std::string channel_to_json(const quantum::Channel& channel);

/// Session run configuration:
///   {"channel": <channel>, "count": N, "sample_fraction": F,
///    "guard_band": F?, "code": {"kind":"hamming74"} |
///    {"kind":"repetition","n":N} | {"kind":"random","n":N,"rate":F?,"margin":F?},
///    "seed": N?, "process_matched": B?, "process_alphabeta": B?}
struct RunConfig {
  quantum::Channel channel = quantum::Channel::identity();
  protocol::SessionConfig session;
};

RunConfig run_config_from_json(std::string_view text);

std::string session_result_to_json(const protocol::SessionResult& result);

/// Formats a double with 17 significant digits (JSON payloads) or 12 (CSV).
std::string format_json_double(double value);
std::string format_csv_double(double value);

}  // namespace mmbb84::io
