#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mmbb84/gf2.hpp"
#include "mmbb84/linear_code.hpp"
#include "mmbb84/quantum.hpp"
#include "mmbb84/random.hpp"

namespace mmbb84::protocol {

using quantum::Basis;

/// A bucket is too small to estimate from or to fill a single code block.
struct InsufficientBitsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One qubit transmission. Alice's state is the basis vector of
/// (alice_basis, alice_bit); bit 0 names |0> in Z and |+> in X.
struct TransmissionRecord {
  std::size_t index = 0;
  Basis alice_basis = Basis::Z;
  int alice_bit = 0;
  Basis bob_basis = Basis::Z;
  int bob_outcome = 0;
};

struct BitPair {
  int alice = 0;
  int bob = 0;
};

/// The four post-announcement buckets. mismatched_ab holds Z-sent qubits
/// measured in X (outcome 0 means |+>); mismatched_alphabeta holds X-sent
/// qubits measured in Z (outcome 0 means |0>). They partition the records.
struct SiftedBatches {
  std::vector<BitPair> matched_z;
  std::vector<BitPair> matched_x;
  std::vector<BitPair> mismatched_ab;
  std::vector<BitPair> mismatched_alphabeta;
};

struct EstimationResult {
  double q_hat = 0.0;
  std::vector<std::size_t> sample_indices;  // ascending positions in the bucket
  gf2::Vector remaining_alice;              // undisclosed bits, original order
  gf2::Vector remaining_bob;
};

enum class AbortReason { RateNonpositive, EstimateAtHalf, DecodeFailure, InsufficientBits };
const char* to_string(AbortReason reason);

/// Block code family used for reconciliation. Random codes pick their
/// dimension either from a fixed rate or adaptively as
/// 1 - h(q_hat) - margin, clamped so the syndrome table stays in capacity.
struct CodeSpec {
  enum class Kind { Hamming74, Repetition, Random };
  Kind kind = Kind::Hamming74;
  std::size_t n = 7;
  std::optional<double> rate;
  double margin = 0.05;
};

struct SessionConfig {
  std::size_t count = 4096;
  double sample_fraction = 0.5;
  /// Negative means the default band 1/sqrt(sample size).
  double guard_band = -1.0;
  CodeSpec code;
  std::uint64_t seed = 0;
  bool process_matched = false;
  bool process_alphabeta = false;
};

/// Postprocessing outcome of one bucket's undisclosed bits.
struct StreamResult {
  double q_hat_bit = 0.0;    // disagreement estimate driving reconciliation
  double q_hat_phase = 0.0;  // estimate driving privacy amplification
  bool flip_applied = false;
  gf2::Vector syndrome;      // concatenated per-block syndromes
  std::size_t blocks_total = 0;
  std::size_t blocks_ok = 0;
  bool decode_success = false;
  std::size_t block_length = 0;
  std::size_t dim_c1 = 0;  // dimension of the tiled code actually used
  std::size_t dim_c2 = 0;
  std::optional<gf2::Vector> alice_key;
  std::optional<gf2::Vector> bob_key;
  std::optional<AbortReason> abort;

  std::size_t key_length() const { return alice_key ? alice_key->size() : 0; }
};

/// Full session transcript. The spec-level flat fields (flip_applied,
/// syndrome, decode_success, keys, abort_reason) live in `primary`, the
/// mismatched a/b stream; the optional streams reuse the same machinery.
struct SessionResult {
  std::optional<double> q_hat_x;
  std::optional<double> q_hat_z;
  StreamResult primary;
  std::optional<StreamResult> alphabeta;
  std::optional<StreamResult> matched_z;
  std::optional<StreamResult> matched_x;

  struct Counts {
    std::size_t total = 0;
    std::size_t matched_z = 0;
    std::size_t matched_x = 0;
    std::size_t mismatched_ab = 0;
    std::size_t mismatched_alphabeta = 0;
  } counts;
  std::uint64_t seed = 0;

  bool flip_applied() const { return primary.flip_applied; }
  bool decode_success() const { return primary.decode_success; }
  std::optional<AbortReason> abort_reason() const { return primary.abort; }
  std::size_t key_length() const { return primary.key_length(); }
};

/// Uniform BB84 source into the channel: per record, three fair bits (alice
/// basis, alice bit, bob basis) then one measurement draw, in that order.
std::vector<TransmissionRecord> transmit(const quantum::Channel& channel, std::size_t count,
                                         RandomStream& rng);

SiftedBatches sift(const std::vector<TransmissionRecord>& records);

/// Discloses a uniform sample of round(fraction * size) pairs and reports the
/// exact disagreement fraction on it; the rest keep their relative order.
EstimationResult estimate(const std::vector<BitPair>& bucket, double sample_fraction,
                          RandomStream& rng);

struct ReconcileResult {
  gf2::Vector syndrome;       // H * alice
  gf2::Vector corrected_bob;  // bob - decoded error estimate
  bool decode_success = false;
  bool flip_applied = false;
};

/// One block: negate bob first when q_hat > 0.5, decode the syndrome
/// difference to a coset leader, and subtract it. decode_success records the
/// simulation-side comparison against alice's bits.
ReconcileResult reconcile(const gf2::Vector& alice, const gf2::Vector& bob, double q_hat,
                          const gf2::LinearCode& code,
                          const gf2::SyndromeTable* table = nullptr);

struct AmplifyResult {
  gf2::LinearCode c2;
  gf2::Vector key;  // empty when dim c2 == dim c1 (rate hit zero)
};

/// Compresses a c1 member to its coset label against a fresh random subcode
/// of dimension min(dim c1, ceil(n * h(q_hat_other))).
AmplifyResult privacy_amplify(const gf2::Vector& a_in_c1, const gf2::LinearCode& c1,
                              double q_hat_other, RandomStream& rng);

SessionResult run_session(const quantum::Channel& channel, const SessionConfig& config,
                          RandomStream& rng);
/// Convenience overload seeding the stream from config.seed.
SessionResult run_session(const quantum::Channel& channel, const SessionConfig& config);

}  // namespace mmbb84::protocol
