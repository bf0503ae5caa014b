#include "mmbb84/linear_code.hpp"

#include <bit>
#include <string>

namespace mmbb84::gf2 {

LinearCode::LinearCode(Matrix generator, Matrix parity_check)
    : generator_(std::move(generator)), parity_check_(std::move(parity_check)) {
  const std::size_t n = generator_.cols();
  if (parity_check_.cols() != n) {
    throw std::invalid_argument("LinearCode: generator/parity check length mismatch");
  }
  if (generator_.rows() + parity_check_.rows() != n) {
    throw std::invalid_argument("LinearCode: dimensions do not sum to the block length");
  }
  if (rank(generator_) != generator_.rows()) {
    throw std::invalid_argument("LinearCode: generator is not full rank");
  }
  if (rank(parity_check_) != parity_check_.rows()) {
    throw std::invalid_argument("LinearCode: parity check is not full rank");
  }
  for (std::size_t r = 0; r < generator_.rows(); ++r) {
    if (!parity_check_.multiply(generator_.row(r)).is_zero()) {
      throw std::invalid_argument("LinearCode: parity check does not annihilate the generator");
    }
  }
}

LinearCode LinearCode::from_generator(Matrix generator) {
  Matrix h = nullspace_basis(generator);
  return LinearCode(std::move(generator), std::move(h));
}

LinearCode LinearCode::from_parity_check(Matrix parity_check) {
  Matrix g = nullspace_basis(parity_check);
  return LinearCode(std::move(g), std::move(parity_check));
}

LinearCode LinearCode::hamming74() {
  // Systematic [7,4] Hamming code, G = [I | P], H = [P^T | I].
  const Matrix g = Matrix::from_rows({
      Vector::from_bits({1, 0, 0, 0, 1, 1, 0}),
      Vector::from_bits({0, 1, 0, 0, 1, 0, 1}),
      Vector::from_bits({0, 0, 1, 0, 0, 1, 1}),
      Vector::from_bits({0, 0, 0, 1, 1, 1, 1}),
  });
  const Matrix h = Matrix::from_rows({
      Vector::from_bits({1, 1, 0, 1, 1, 0, 0}),
      Vector::from_bits({1, 0, 1, 1, 0, 1, 0}),
      Vector::from_bits({0, 1, 1, 1, 0, 0, 1}),
  });
  return LinearCode(g, h);
}

LinearCode LinearCode::repetition(std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("LinearCode::repetition: need n >= 2");
  }
  Vector ones(n);
  ones.flip_all();
  Matrix h(n - 1, n);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    h.set(r, r, true);
    h.set(r, r + 1, true);
  }
  return LinearCode(Matrix::from_rows({ones}), h);
}

LinearCode LinearCode::random_code(std::size_t n, std::size_t k, RandomStream& rng) {
  if (k == 0 || k >= n) {
    throw std::invalid_argument("LinearCode::random_code: need 0 < k < n");
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix g = Matrix::random(k, n, rng);
    if (rank(g) == k) {
      return from_generator(std::move(g));
    }
  }
  throw std::runtime_error("LinearCode::random_code: rejection sampling failed");
}

LinearCode LinearCode::tiled(const LinearCode& block, std::size_t copies) {
  if (copies == 0) {
    throw std::invalid_argument("LinearCode::tiled: need at least one copy");
  }
  return LinearCode(Matrix::block_diagonal(block.generator(), copies),
                    Matrix::block_diagonal(block.parity_check(), copies));
}

Vector LinearCode::encode(const Vector& message) const {
  if (message.size() != dimension()) {
    throw std::invalid_argument("LinearCode::encode: message length mismatch");
  }
  Vector word(length());
  for (std::size_t i = 0; i < message.size(); ++i) {
    if (message.get(i)) {
      word += generator_.row(i);
    }
  }
  return word;
}

namespace {

// Dictionary order on masks: first differing bit position decides, 0 before 1.
bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) {
    return false;
  }
  return ((a >> std::countr_zero(diff)) & 1ULL) == 0;
}

}  // namespace

SyndromeTable::SyndromeTable(const Matrix& parity_check)
    : length_(parity_check.cols()), bits_(parity_check.rows()) {
  if (length_ > kMaxBlockLength) {
    throw CapacityError("SyndromeTable: block length " + std::to_string(length_) +
                        " exceeds cap of " + std::to_string(kMaxBlockLength));
  }
  if (bits_ > kMaxSyndromeBits) {
    throw CapacityError("SyndromeTable: " + std::to_string(bits_) +
                        " syndrome bits exceed cap of " + std::to_string(kMaxSyndromeBits));
  }

  // Column j of H as a packed syndrome value.
  std::vector<std::uint64_t> column(length_, 0);
  for (std::size_t r = 0; r < bits_; ++r) {
    for (std::size_t c = 0; c < length_; ++c) {
      if (parity_check.get(r, c)) {
        column[c] |= 1ULL << r;
      }
    }
  }

  const std::size_t table_size = std::size_t(1) << bits_;
  leaders_.assign(table_size, ~0ULL);
  std::vector<std::uint8_t> filled(table_size, 0);
  std::vector<std::uint8_t> pending(table_size, 0);

  // Breadth-first over syndromes by error weight. Within a weight level every
  // candidate for a still-unfilled syndrome competes and the dictionary-least
  // error wins, so the table is a deterministic function of H.
  leaders_[0] = 0;
  filled[0] = 1;
  std::vector<std::uint64_t> frontier{0};
  std::size_t remaining = table_size - 1;
  while (remaining > 0 && !frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t s : frontier) {
      const std::uint64_t leader = leaders_[s];
      for (std::size_t j = 0; j < length_; ++j) {
        if ((leader >> j) & 1ULL) {
          continue;
        }
        const std::uint64_t t = s ^ column[j];
        if (filled[t]) {
          continue;
        }
        const std::uint64_t candidate = leader | (1ULL << j);
        if (!pending[t]) {
          pending[t] = 1;
          leaders_[t] = candidate;
          next.push_back(t);
        } else if (mask_lex_less(candidate, leaders_[t])) {
          leaders_[t] = candidate;
        }
      }
    }
    for (std::uint64_t t : next) {
      pending[t] = 0;
      filled[t] = 1;
    }
    remaining -= next.size();
    frontier = std::move(next);
  }
  if (remaining > 0) {
    // Unreachable for a full-rank parity check; kept as a hard failure.
    throw std::invalid_argument("SyndromeTable: syndrome space not covered (rank-deficient H)");
  }
}

Vector SyndromeTable::decode(const Vector& syndrome) const {
  if (syndrome.size() != bits_) {
    throw std::invalid_argument("SyndromeTable::decode: syndrome length mismatch");
  }
  return Vector::from_mask(leaders_[syndrome.as_mask()], length_);
}

Vector coset_leader_decode(const Matrix& parity_check, const Vector& syndrome) {
  return SyndromeTable(parity_check).decode(syndrome);
}

LinearCode sample_subcode(const LinearCode& c1, std::size_t dim2, RandomStream& rng) {
  const std::size_t k1 = c1.dimension();
  const std::size_t n = c1.length();
  if (dim2 > k1) {
    throw std::invalid_argument("sample_subcode: requested dimension exceeds dim(c1)");
  }
  if (dim2 == 0) {
    return LinearCode(Matrix(0, n), Matrix::identity(n));
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Vector> rows;
    rows.reserve(dim2);
    for (std::size_t i = 0; i < dim2; ++i) {
      const Vector coeffs = Vector::random(k1, rng);
      Vector row(n);
      for (std::size_t j = 0; j < k1; ++j) {
        if (coeffs.get(j)) {
          row += c1.generator().row(j);
        }
      }
      rows.push_back(std::move(row));
    }
    Matrix g = Matrix::from_rows(std::move(rows));
    if (rank(g) == dim2) {
      return LinearCode::from_generator(std::move(g));
    }
  }
  throw std::runtime_error("sample_subcode: rejection sampling failed");
}

Vector coset_label(const Vector& a, const LinearCode& c1, const LinearCode& c2) {
  const std::size_t n = c1.length();
  if (a.size() != n || c2.length() != n) {
    throw std::invalid_argument("coset_label: length mismatch");
  }
  const std::size_t k1 = c1.dimension();
  const std::size_t k2 = c2.dimension();
  if (k2 > k1) {
    throw std::invalid_argument("coset_label: dim(c2) exceeds dim(c1)");
  }

  // Extend c2's basis to a basis of c1, scanning c1's generator rows in order.
  SpanTracker span(n);
  std::vector<Vector> basis;
  basis.reserve(k1);
  for (std::size_t r = 0; r < k2; ++r) {
    if (!span.absorb(c2.generator().row(r))) {
      throw std::invalid_argument("coset_label: c2 generator is not full rank");
    }
    basis.push_back(c2.generator().row(r));
  }
  for (std::size_t r = 0; r < k1; ++r) {
    if (span.absorb(c1.generator().row(r))) {
      basis.push_back(c1.generator().row(r));
    }
  }
  // c2 inside c1 leaves exactly k1 - k2 independent extension rows; anything
  // else means c2 escapes c1's row space.
  if (basis.size() != k1) {
    throw std::invalid_argument("coset_label: c2 is not a subcode of c1");
  }

  const auto coeffs = solve(Matrix::from_rows(std::move(basis)).transposed(), a);
  if (!coeffs) {
    throw NotInCodeError("coset_label: vector is outside c1");
  }
  return coeffs->slice(k2, k1 - k2);
}

}  // namespace mmbb84::gf2
