#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmbb84/random.hpp"

namespace mmbb84::gf2 {

/// Fixed-length bit vector over GF(2), packed 64 bits per word (bit i lives
/// at word i/64, position i%64). Addition is bitwise XOR.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

  static Vector unit(std::size_t size, std::size_t index);
  static Vector from_bits(std::initializer_list<int> bits);
  /// Parses a string of '0'/'1' characters, index 0 first.
  static Vector from_string(std::string_view text);
  static Vector random(std::size_t size, RandomStream& rng);

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
  void set(std::size_t i, bool value) {
    const std::uint64_t mask = 1ULL << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  /// Bitwise negation of every position.
  void flip_all();

  Vector& operator+=(const Vector& other);
  Vector operator+(const Vector& other) const {
    Vector r = *this;
    r += other;
    return r;
  }

  std::size_t weight() const;
  bool is_zero() const;

  bool operator==(const Vector& other) const = default;

  /// Dictionary order on the bit sequence read from index 0: the first
  /// differing position decides, 0 before 1.
  bool lex_less(const Vector& other) const;

  Vector slice(std::size_t begin, std::size_t length) const;
  void append(const Vector& tail);

  /// Bits 0..size-1 as a machine word; size must be <= 64.
  std::uint64_t as_mask() const;
  static Vector from_mask(std::uint64_t mask, std::size_t size);

  std::string to_string() const;

  std::span<const std::uint64_t> words() const { return words_; }

 private:
  static std::size_t word_count(std::size_t size) { return (size + 63) / 64; }
  void clear_tail();

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense binary matrix stored as packed rows.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows, Vector(cols)) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::vector<Vector> rows);
  static Matrix random(std::size_t rows, std::size_t cols, RandomStream& rng);
  /// Block-diagonal matrix made of `copies` copies of `block`.
  static Matrix block_diagonal(const Matrix& block, std::size_t copies);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value) { data_[r].set(c, value); }

  const Vector& row(std::size_t r) const { return data_[r]; }
  void set_row(std::size_t r, Vector v);

  /// m (r x c) times x (c) -> r bits; entry r is the parity of row_r AND x.
  Vector multiply(const Vector& x) const;
  Matrix multiply(const Matrix& other) const;
  Matrix transposed() const;

  /// Rows of `other` appended below this matrix.
  Matrix vstack(const Matrix& other) const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Vector> data_;
};

/// Dimension of the row space.
std::size_t rank(const Matrix& m);

/// Some x with m*x = y, or nullopt when the system is inconsistent.
/// Free coordinates are set to zero, so the result is deterministic.
std::optional<Vector> solve(const Matrix& m, const Vector& y);

/// Rows form a basis of the kernel {x : m*x = 0}; (cols - rank) rows.
Matrix nullspace_basis(const Matrix& m);

/// All 2^k row-space elements of a k x n generator; k must be <= 20.
std::vector<Vector> span_of(const Matrix& generator);

/// Incremental row-space membership tracker (Gaussian elimination state).
class SpanTracker {
 public:
  explicit SpanTracker(std::size_t cols) : cols_(cols) {}

  /// Reduces v against the rows absorbed so far; returns true (and absorbs
  /// the residual) when v was independent.
  bool absorb(const Vector& v);
  bool contains(const Vector& v) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  Vector reduce(Vector v) const;

  std::size_t cols_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector> rows_;
};

}  // namespace mmbb84::gf2
