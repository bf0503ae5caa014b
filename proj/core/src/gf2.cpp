#include "mmbb84/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace mmbb84::gf2 {

Vector Vector::unit(std::size_t size, std::size_t index) {
  if (index >= size) {
    throw std::invalid_argument("gf2::Vector::unit: index out of range");
  }
  Vector v(size);
  v.set(index, true);
  return v;
}

Vector Vector::from_bits(std::initializer_list<int> bits) {
  Vector v(bits.size());
  std::size_t i = 0;
  for (int b : bits) {
    v.set(i++, b != 0);
  }
  return v;
}

Vector Vector::from_string(std::string_view text) {
  Vector v(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      v.set(i, true);
    } else if (text[i] != '0') {
      throw std::invalid_argument("gf2::Vector::from_string: expected only '0'/'1'");
    }
  }
  return v;
}

Vector Vector::random(std::size_t size, RandomStream& rng) {
  Vector v(size);
  for (auto& w : v.words_) {
    w = rng.next_u64();
  }
  v.clear_tail();
  return v;
}

void Vector::flip_all() {
  for (auto& w : words_) {
    w = ~w;
  }
  clear_tail();
}

Vector& Vector::operator+=(const Vector& other) {
  if (other.size_ != size_) {
    throw std::invalid_argument("gf2::Vector: length mismatch in addition");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] ^= other.words_[i];
  }
  return *this;
}

std::size_t Vector::weight() const {
  std::size_t w = 0;
  for (std::uint64_t word : words_) {
    w += static_cast<std::size_t>(std::popcount(word));
  }
  return w;
}

bool Vector::is_zero() const {
  for (std::uint64_t word : words_) {
    if (word != 0) {
      return false;
    }
  }
  return true;
}

bool Vector::lex_less(const Vector& other) const {
  if (other.size_ != size_) {
    throw std::invalid_argument("gf2::Vector::lex_less: length mismatch");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t diff = words_[i] ^ other.words_[i];
    if (diff != 0) {
      const int bit = std::countr_zero(diff);
      return ((words_[i] >> bit) & 1ULL) == 0;
    }
  }
  return false;
}

Vector Vector::slice(std::size_t begin, std::size_t length) const {
  if (begin + length > size_) {
    throw std::invalid_argument("gf2::Vector::slice: range out of bounds");
  }
  Vector out(length);
  for (std::size_t i = 0; i < length; ++i) {
    out.set(i, get(begin + i));
  }
  return out;
}

void Vector::append(const Vector& tail) {
  Vector out(size_ + tail.size_);
  for (std::size_t i = 0; i < size_; ++i) {
    out.set(i, get(i));
  }
  for (std::size_t i = 0; i < tail.size_; ++i) {
    out.set(size_ + i, tail.get(i));
  }
  *this = std::move(out);
}

std::uint64_t Vector::as_mask() const {
  if (size_ > 64) {
    throw std::invalid_argument("gf2::Vector::as_mask: size exceeds 64");
  }
  return words_.empty() ? 0ULL : words_[0];
}

Vector Vector::from_mask(std::uint64_t mask, std::size_t size) {
  if (size > 64) {
    throw std::invalid_argument("gf2::Vector::from_mask: size exceeds 64");
  }
  Vector v(size);
  if (size > 0) {
    v.words_[0] = size == 64 ? mask : (mask & ((1ULL << size) - 1));
  }
  return v;
}

std::string Vector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) {
      s[i] = '1';
    }
  }
  return s;
}

void Vector::clear_tail() {
  const std::size_t used = size_ & 63;
  if (used != 0 && !words_.empty()) {
    words_.back() &= (1ULL << used) - 1;
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.set(i, i, true);
  }
  return m;
}

Matrix Matrix::from_rows(std::vector<Vector> rows) {
  Matrix m;
  m.rows_ = rows.size();
  m.cols_ = rows.empty() ? 0 : rows.front().size();
  for (const Vector& r : rows) {
    if (r.size() != m.cols_) {
      throw std::invalid_argument("gf2::Matrix::from_rows: ragged rows");
    }
  }
  m.data_ = std::move(rows);
  return m;
}

Matrix Matrix::random(std::size_t rows, std::size_t cols, RandomStream& rng) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    m.data_[r] = Vector::random(cols, rng);
  }
  return m;
}

Matrix Matrix::block_diagonal(const Matrix& block, std::size_t copies) {
  Matrix m(block.rows() * copies, block.cols() * copies);
  for (std::size_t b = 0; b < copies; ++b) {
    for (std::size_t r = 0; r < block.rows(); ++r) {
      for (std::size_t c = 0; c < block.cols(); ++c) {
        if (block.get(r, c)) {
          m.set(b * block.rows() + r, b * block.cols() + c, true);
        }
      }
    }
  }
  return m;
}

void Matrix::set_row(std::size_t r, Vector v) {
  if (v.size() != cols_) {
    throw std::invalid_argument("gf2::Matrix::set_row: length mismatch");
  }
  data_[r] = std::move(v);
}

Vector Matrix::multiply(const Vector& x) const {
  if (x.size() != cols_) {
    throw std::invalid_argument("gf2::Matrix::multiply: dimension mismatch");
  }
  Vector y(rows_);
  const auto xw = x.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto rw = data_[r].words();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < rw.size(); ++i) {
      acc ^= rw[i] & xw[i];
    }
    y.set(r, (std::popcount(acc) & 1) != 0);
  }
  return y;
}

Matrix Matrix::multiply(const Matrix& other) const {
  if (cols_ != other.rows_) {
    throw std::invalid_argument("gf2::Matrix::multiply: dimension mismatch");
  }
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Vector acc(other.cols_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (data_[r].get(c)) {
        acc += other.data_[c];
      }
    }
    out.data_[r] = std::move(acc);
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (data_[r].get(c)) {
        out.set(c, r, true);
      }
    }
  }
  return out;
}

Matrix Matrix::vstack(const Matrix& other) const {
  if (rows_ != 0 && other.rows_ != 0 && cols_ != other.cols_) {
    throw std::invalid_argument("gf2::Matrix::vstack: column mismatch");
  }
  std::vector<Vector> rows = data_;
  rows.insert(rows.end(), other.data_.begin(), other.data_.end());
  Matrix out;
  out.rows_ = rows.size();
  out.cols_ = rows_ != 0 ? cols_ : other.cols_;
  out.data_ = std::move(rows);
  return out;
}

namespace {

struct Echelon {
  std::vector<Vector> rows;          // reduced rows, one pivot each
  std::vector<std::size_t> pivots;   // pivot column per row
};

// Reduced row echelon form by forward elimination with full back-substitution.
Echelon rref(const Matrix& m) {
  Echelon e;
  std::vector<Vector> work;
  work.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    work.push_back(m.row(r));
  }
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < work.size(); ++c) {
    std::size_t pivot = next;
    while (pivot < work.size() && !work[pivot].get(c)) {
      ++pivot;
    }
    if (pivot == work.size()) {
      continue;
    }
    std::swap(work[next], work[pivot]);
    for (std::size_t r = 0; r < work.size(); ++r) {
      if (r != next && work[r].get(c)) {
        work[r] += work[next];
      }
    }
    e.pivots.push_back(c);
    ++next;
  }
  work.resize(next);
  e.rows = std::move(work);
  return e;
}

}  // namespace

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::optional<Vector> solve(const Matrix& m, const Vector& y) {
  if (y.size() != m.rows()) {
    throw std::invalid_argument("gf2::solve: right-hand side length mismatch");
  }
  // Eliminate on the augmented system [m | y].
  std::vector<Vector> work;
  std::vector<bool> aug(m.rows());
  work.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    work.push_back(m.row(r));
    aug[r] = y.get(r);
  }
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < work.size(); ++c) {
    std::size_t pivot = next;
    while (pivot < work.size() && !work[pivot].get(c)) {
      ++pivot;
    }
    if (pivot == work.size()) {
      continue;
    }
    std::swap(work[next], work[pivot]);
    std::swap(aug[next], aug[pivot]);
    for (std::size_t r = 0; r < work.size(); ++r) {
      if (r != next && work[r].get(c)) {
        work[r] += work[next];
        aug[r] = aug[r] != aug[next];
      }
    }
    pivots.push_back(c);
    ++next;
  }
  for (std::size_t r = next; r < work.size(); ++r) {
    if (aug[r]) {
      return std::nullopt;  // 0 = 1 row: inconsistent
    }
  }
  Vector x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    x.set(pivots[i], aug[i]);
  }
  return x;
}

Matrix nullspace_basis(const Matrix& m) {
  const Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) {
    is_pivot[c] = true;
  }
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) {
      continue;
    }
    Vector v(m.cols());
    v.set(f, true);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      if (e.rows[i].get(f)) {
        v.set(e.pivots[i], true);
      }
    }
    basis.push_back(std::move(v));
  }
  Matrix out = Matrix::from_rows(std::move(basis));
  if (out.rows() == 0) {
    return Matrix(0, m.cols());
  }
  return out;
}

std::vector<Vector> span_of(const Matrix& generator) {
  if (generator.rows() > 20) {
    throw std::invalid_argument("gf2::span_of: generator dimension too large to enumerate");
  }
  const std::size_t k = generator.rows();
  std::vector<Vector> out;
  out.reserve(std::size_t(1) << k);
  for (std::uint64_t bits = 0; bits < (1ULL << k); ++bits) {
    Vector v(generator.cols());
    for (std::size_t i = 0; i < k; ++i) {
      if ((bits >> i) & 1ULL) {
        v += generator.row(i);
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

bool SpanTracker::absorb(const Vector& v) {
  Vector residual = reduce(v);
  if (residual.is_zero()) {
    return false;
  }
  std::size_t pivot = 0;
  while (!residual.get(pivot)) {
    ++pivot;
  }
  // Keep earlier rows reduced against the new pivot.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].get(pivot)) {
      rows_[i] += residual;
    }
  }
  pivots_.push_back(pivot);
  rows_.push_back(std::move(residual));
  return true;
}

bool SpanTracker::contains(const Vector& v) const { return reduce(v).is_zero(); }

Vector SpanTracker::reduce(Vector v) const {
  if (v.size() != cols_) {
    throw std::invalid_argument("gf2::SpanTracker: length mismatch");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (v.get(pivots_[i])) {
      v += rows_[i];
    }
  }
  return v;
}

}  // namespace mmbb84::gf2
