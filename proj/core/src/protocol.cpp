#include "mmbb84/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mmbb84/bounds.hpp"

namespace mmbb84::protocol {

using gf2::LinearCode;
using gf2::SyndromeTable;
using gf2::Vector;

const char* to_string(AbortReason reason) {
  switch (reason) {
    case AbortReason::RateNonpositive: return "RateNonpositive";
    case AbortReason::EstimateAtHalf: return "EstimateAtHalf";
    case AbortReason::DecodeFailure: return "DecodeFailure";
    case AbortReason::InsufficientBits: return "InsufficientBits";
  }
  return "?";
}

std::vector<TransmissionRecord> transmit(const quantum::Channel& channel, std::size_t count,
                                         RandomStream& rng) {
  if (count < 1) {
    throw std::invalid_argument("transmit: count must be positive");
  }
  std::vector<TransmissionRecord> records;
  records.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    TransmissionRecord rec;
    rec.index = i;
    rec.alice_basis = rng.next_bit() ? Basis::X : Basis::Z;
    rec.alice_bit = rng.next_bit() ? 1 : 0;
    rec.bob_basis = rng.next_bit() ? Basis::X : Basis::Z;
    rec.bob_outcome = quantum::sample_measurement(
        channel, quantum::basis_state(rec.alice_basis, rec.alice_bit), rec.bob_basis, rng);
    records.push_back(rec);
  }
  return records;
}

SiftedBatches sift(const std::vector<TransmissionRecord>& records) {
  SiftedBatches batches;
  for (const TransmissionRecord& rec : records) {
    const BitPair pair{rec.alice_bit, rec.bob_outcome};
    if (rec.alice_basis == Basis::Z && rec.bob_basis == Basis::Z) {
      batches.matched_z.push_back(pair);
    } else if (rec.alice_basis == Basis::X && rec.bob_basis == Basis::X) {
      batches.matched_x.push_back(pair);
    } else if (rec.alice_basis == Basis::Z && rec.bob_basis == Basis::X) {
      batches.mismatched_ab.push_back(pair);
    } else {
      batches.mismatched_alphabeta.push_back(pair);
    }
  }
  return batches;
}

EstimationResult estimate(const std::vector<BitPair>& bucket, double sample_fraction,
                          RandomStream& rng) {
  if (sample_fraction <= 0.0 || sample_fraction >= 1.0) {
    throw std::invalid_argument("estimate: sample_fraction must lie in (0, 1)");
  }
  const std::size_t size = bucket.size();
  if (size < 2) {
    throw InsufficientBitsError("estimate: bucket holds fewer than two pairs");
  }
  const auto sample_size = static_cast<std::size_t>(
      std::llround(sample_fraction * static_cast<double>(size)));
  if (sample_size < 1 || sample_size >= size) {
    throw InsufficientBitsError("estimate: sample would leave nothing to disclose or keep");
  }

  // Partial Fisher-Yates: the first sample_size slots end up a uniform draw
  // without replacement.
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < sample_size; ++i) {
    const std::size_t j = i + rng.next_below(size - i);
    std::swap(order[i], order[j]);
  }
  EstimationResult result;
  result.sample_indices.assign(order.begin(), order.begin() + sample_size);
  std::sort(result.sample_indices.begin(), result.sample_indices.end());

  std::size_t disagreements = 0;
  for (std::size_t idx : result.sample_indices) {
    disagreements += bucket[idx].alice != bucket[idx].bob ? 1 : 0;
  }
  result.q_hat = static_cast<double>(disagreements) / static_cast<double>(sample_size);

  std::vector<bool> sampled(size, false);
  for (std::size_t idx : result.sample_indices) {
    sampled[idx] = true;
  }
  result.remaining_alice = Vector(size - sample_size);
  result.remaining_bob = Vector(size - sample_size);
  std::size_t out = 0;
  for (std::size_t i = 0; i < size; ++i) {
    if (!sampled[i]) {
      result.remaining_alice.set(out, bucket[i].alice != 0);
      result.remaining_bob.set(out, bucket[i].bob != 0);
      ++out;
    }
  }
  return result;
}

ReconcileResult reconcile(const Vector& alice, const Vector& bob, double q_hat,
                          const LinearCode& code, const SyndromeTable* table) {
  if (alice.size() != code.length() || bob.size() != code.length()) {
    throw std::invalid_argument("reconcile: vectors must match the code block length");
  }
  ReconcileResult result;
  Vector bob_eff = bob;
  if (q_hat > 0.5) {
    bob_eff.flip_all();
    result.flip_applied = true;
  }
  result.syndrome = code.syndrome(alice);
  const Vector difference = code.syndrome(bob_eff) + result.syndrome;
  const Vector error =
      table != nullptr ? table->decode(difference) : gf2::coset_leader_decode(code.parity_check(), difference);
  result.corrected_bob = bob_eff + error;
  result.decode_success = result.corrected_bob == alice;
  return result;
}

AmplifyResult privacy_amplify(const Vector& a_in_c1, const LinearCode& c1, double q_hat_other,
                              RandomStream& rng) {
  if (a_in_c1.size() != c1.length()) {
    throw std::invalid_argument("privacy_amplify: vector length mismatch");
  }
  const double entropy = bounds::binary_entropy(q_hat_other);
  const auto raw = static_cast<std::size_t>(
      std::ceil(static_cast<double>(c1.length()) * entropy));
  const std::size_t dim2 = std::min(c1.dimension(), raw);
  LinearCode c2 = gf2::sample_subcode(c1, dim2, rng);
  Vector key = gf2::coset_label(a_in_c1, c1, c2);
  return {std::move(c2), std::move(key)};
}

namespace {

LinearCode build_code(const CodeSpec& spec, double q_hat, RandomStream& rng) {
  switch (spec.kind) {
    case CodeSpec::Kind::Hamming74:
      return LinearCode::hamming74();
    case CodeSpec::Kind::Repetition:
      return LinearCode::repetition(spec.n);
    case CodeSpec::Kind::Random: {
      const std::size_t n = spec.n;
      double target_rate;
      if (spec.rate) {
        target_rate = *spec.rate;
      } else {
        const double q_eff = std::min(q_hat, 1.0 - q_hat);
        target_rate = 1.0 - bounds::binary_entropy(q_eff) - spec.margin;
      }
      auto k = static_cast<std::size_t>(std::llround(
          std::clamp(target_rate, 0.0, 1.0) * static_cast<double>(n)));
      // Keep the syndrome table in capacity and the code nondegenerate.
      const std::size_t k_min =
          n > SyndromeTable::kMaxSyndromeBits ? n - SyndromeTable::kMaxSyndromeBits : 1;
      k = std::clamp(k, std::max<std::size_t>(1, k_min), n - 1);
      return LinearCode::random_code(n, k, rng);
    }
  }
  throw std::invalid_argument("build_code: unknown code kind");
}

StreamResult process_stream(const Vector& alice_bits, const Vector& bob_bits, double q_bit,
                            double q_phase, const CodeSpec& spec, RandomStream& rng) {
  StreamResult out;
  out.q_hat_bit = q_bit;
  out.q_hat_phase = q_phase;

  const LinearCode block = build_code(spec, q_bit, rng);
  const std::size_t len = block.length();
  out.block_length = len;
  const std::size_t blocks = alice_bits.size() / len;
  if (blocks == 0) {
    out.abort = AbortReason::InsufficientBits;
    return out;
  }
  out.blocks_total = blocks;
  out.flip_applied = q_bit > 0.5;

  const SyndromeTable table(block.parity_check());
  const std::size_t used = blocks * len;
  const Vector a_used = alice_bits.slice(0, used);
  Vector corrected(used);
  Vector leader_offset(used);  // coset representative of the announced syndrome
  out.syndrome = Vector(blocks * block.redundancy());

  for (std::size_t b = 0; b < blocks; ++b) {
    const Vector a_block = a_used.slice(b * len, len);
    const Vector b_block = bob_bits.slice(b * len, len);
    const ReconcileResult rr = reconcile(a_block, b_block, q_bit, block, &table);
    out.blocks_ok += rr.decode_success ? 1 : 0;
    for (std::size_t i = 0; i < block.redundancy(); ++i) {
      out.syndrome.set(b * block.redundancy() + i, rr.syndrome.get(i));
    }
    for (std::size_t i = 0; i < len; ++i) {
      corrected.set(b * len + i, rr.corrected_bob.get(i));
    }
    const Vector x_hat = table.decode(rr.syndrome);
    for (std::size_t i = 0; i < len; ++i) {
      leader_offset.set(b * len + i, x_hat.get(i));
    }
  }
  out.decode_success = out.blocks_ok == blocks;

  // Both parties shift by the public coset representative of the announced
  // syndrome, landing inside the tiled code where the label is defined.
  const LinearCode composite = LinearCode::tiled(block, blocks);
  out.dim_c1 = composite.dimension();
  const Vector alice_repr = a_used + leader_offset;
  const Vector bob_repr = corrected + leader_offset;

  AmplifyResult pa = privacy_amplify(alice_repr, composite, q_phase, rng);
  out.dim_c2 = pa.c2.dimension();
  if (pa.key.size() == 0) {
    out.abort = AbortReason::RateNonpositive;
    return out;
  }
  if (!out.decode_success) {
    out.abort = AbortReason::DecodeFailure;
    return out;
  }
  out.bob_key = gf2::coset_label(bob_repr, composite, pa.c2);
  out.alice_key = std::move(pa.key);
  return out;
}

double guard_for(const SessionConfig& config, std::size_t sample_size) {
  if (config.guard_band >= 0.0) {
    return config.guard_band;
  }
  return 1.0 / std::sqrt(static_cast<double>(sample_size));
}

// Shared abort logic for a stream driven by estimates (q_bit, q_phase).
std::optional<AbortReason> pre_checks(double q_bit, double q_phase, double guard_bit,
                                      double guard_phase) {
  if (std::abs(q_bit - 0.5) <= guard_bit || std::abs(q_phase - 0.5) <= guard_phase) {
    return AbortReason::EstimateAtHalf;
  }
  if (1.0 - bounds::binary_entropy(q_bit) - bounds::binary_entropy(q_phase) <= 0.0) {
    return AbortReason::RateNonpositive;
  }
  return std::nullopt;
}

StreamResult aborted_stream(double q_bit, double q_phase, AbortReason reason) {
  StreamResult out;
  out.q_hat_bit = q_bit;
  out.q_hat_phase = q_phase;
  out.abort = reason;
  return out;
}

}  // namespace

SessionResult run_session(const quantum::Channel& channel, const SessionConfig& config,
                          RandomStream& rng) {
  if (config.count < 1) {
    throw std::invalid_argument("run_session: count must be positive");
  }
  SessionResult result;
  result.seed = config.seed;

  const std::vector<TransmissionRecord> records = transmit(channel, config.count, rng);
  const SiftedBatches batches = sift(records);
  result.counts.total = records.size();
  result.counts.matched_z = batches.matched_z.size();
  result.counts.matched_x = batches.matched_x.size();
  result.counts.mismatched_ab = batches.mismatched_ab.size();
  result.counts.mismatched_alphabeta = batches.mismatched_alphabeta.size();

  try {
    const EstimationResult est_x = estimate(batches.mismatched_ab, config.sample_fraction, rng);
    const EstimationResult est_z =
        estimate(batches.mismatched_alphabeta, config.sample_fraction, rng);
    result.q_hat_x = est_x.q_hat;
    result.q_hat_z = est_z.q_hat;

    const double guard_x = guard_for(config, est_x.sample_indices.size());
    const double guard_z = guard_for(config, est_z.sample_indices.size());
    const auto abort = pre_checks(est_x.q_hat, est_z.q_hat, guard_x, guard_z);
    if (abort) {
      result.primary = aborted_stream(est_x.q_hat, est_z.q_hat, *abort);
      if (config.process_alphabeta) {
        result.alphabeta = aborted_stream(est_z.q_hat, est_x.q_hat, *abort);
      }
    } else {
      result.primary = process_stream(est_x.remaining_alice, est_x.remaining_bob, est_x.q_hat,
                                      est_z.q_hat, config.code, rng);
      if (config.process_alphabeta) {
        result.alphabeta = process_stream(est_z.remaining_alice, est_z.remaining_bob,
                                          est_z.q_hat, est_x.q_hat, config.code, rng);
      }
    }
  } catch (const InsufficientBitsError&) {
    result.primary = aborted_stream(0.0, 0.0, AbortReason::InsufficientBits);
    result.primary.q_hat_bit = result.q_hat_x.value_or(0.0);
    result.primary.q_hat_phase = result.q_hat_z.value_or(0.0);
    if (config.process_alphabeta) {
      result.alphabeta = aborted_stream(result.q_hat_z.value_or(0.0),
                                        result.q_hat_x.value_or(0.0),
                                        AbortReason::InsufficientBits);
    }
  }

  if (config.process_matched) {
    // Standard BB84 on the matched buckets: each stream reconciles with its
    // own bucket's error estimate and amplifies with the other's.
    try {
      const EstimationResult est_mz = estimate(batches.matched_z, config.sample_fraction, rng);
      const EstimationResult est_mx = estimate(batches.matched_x, config.sample_fraction, rng);
      const double guard_mz = guard_for(config, est_mz.sample_indices.size());
      const double guard_mx = guard_for(config, est_mx.sample_indices.size());
      const auto abort = pre_checks(est_mz.q_hat, est_mx.q_hat, guard_mz, guard_mx);
      if (abort) {
        result.matched_z = aborted_stream(est_mz.q_hat, est_mx.q_hat, *abort);
        result.matched_x = aborted_stream(est_mx.q_hat, est_mz.q_hat, *abort);
      } else {
        result.matched_z = process_stream(est_mz.remaining_alice, est_mz.remaining_bob,
                                          est_mz.q_hat, est_mx.q_hat, config.code, rng);
        result.matched_x = process_stream(est_mx.remaining_alice, est_mx.remaining_bob,
                                          est_mx.q_hat, est_mz.q_hat, config.code, rng);
      }
    } catch (const InsufficientBitsError&) {
      result.matched_z = aborted_stream(0.0, 0.0, AbortReason::InsufficientBits);
      result.matched_x = aborted_stream(0.0, 0.0, AbortReason::InsufficientBits);
    }
  }
  return result;
}

SessionResult run_session(const quantum::Channel& channel, const SessionConfig& config) {
  RandomStream rng(config.seed);
  return run_session(channel, config, rng);
}

}  // namespace mmbb84::protocol
