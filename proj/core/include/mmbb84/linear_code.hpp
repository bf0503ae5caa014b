#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mmbb84/gf2.hpp"
#include "mmbb84/random.hpp"

namespace mmbb84::gf2 {

/// Requested syndrome table would exceed the configured size cap.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A vector expected to lie in a code's row space does not.
struct NotInCodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Binary [n, k] linear block code held as a full-rank k x n generator
/// together with a full-rank (n-k) x n parity check with H * G^T = 0.
class LinearCode {
 public:
  LinearCode(Matrix generator, Matrix parity_check);

  static LinearCode from_generator(Matrix generator);
  static LinearCode from_parity_check(Matrix parity_check);
  static LinearCode hamming74();
  static LinearCode repetition(std::size_t n);
  /// Uniform full-rank k x n generator by rejection sampling.
  static LinearCode random_code(std::size_t n, std::size_t k, RandomStream& rng);
  /// Block code applied independently to `copies` consecutive blocks.
  static LinearCode tiled(const LinearCode& block, std::size_t copies);

  std::size_t length() const { return generator_.cols(); }
  std::size_t dimension() const { return generator_.rows(); }
  std::size_t redundancy() const { return parity_check_.rows(); }

  const Matrix& generator() const { return generator_; }
  const Matrix& parity_check() const { return parity_check_; }

  Vector encode(const Vector& message) const;
  Vector syndrome(const Vector& word) const { return parity_check_.multiply(word); }
  bool contains(const Vector& word) const { return syndrome(word).is_zero(); }

 private:
  Matrix generator_;
  Matrix parity_check_;
};

/// Exhaustive coset-leader table: for every syndrome the minimum-weight error
/// with that syndrome, ties broken by dictionary order on the bit sequence.
/// Capacity: block length <= 64 and at most 24 syndrome bits.
class SyndromeTable {
 public:
  static constexpr std::size_t kMaxSyndromeBits = 24;
  static constexpr std::size_t kMaxBlockLength = 64;

  explicit SyndromeTable(const Matrix& parity_check);

  Vector decode(const Vector& syndrome) const;

  std::size_t length() const { return length_; }
  std::size_t syndrome_bits() const { return bits_; }

 private:
  std::size_t length_ = 0;
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> leaders_;
};

/// One-shot minimum-weight decode; builds the table internally. Callers with
/// many syndromes for one code should hold a SyndromeTable instead.
Vector coset_leader_decode(const Matrix& parity_check, const Vector& syndrome);

/// Random dim2-dimensional subcode of c1: dim2 random combinations of c1's
/// generator rows, resampled until they are independent.
LinearCode sample_subcode(const LinearCode& c1, std::size_t dim2, RandomStream& rng);

/// (dim c1 - dim c2)-bit coset label of a in c1/c2, computed by extending
/// c2's basis with c1 generator rows in row order and reading off the
/// extension coordinates. Equal labels iff the difference lies in c2.
/// Throws NotInCodeError when a is outside c1's row space.
Vector coset_label(const Vector& a, const LinearCode& c1, const LinearCode& c2);

}  // namespace mmbb84::gf2
