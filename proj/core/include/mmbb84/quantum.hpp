#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mmbb84/random.hpp"

namespace mmbb84::quantum {

using Complex = std::complex<double>;

/// Entrywise tolerance for the structural invariants (hermiticity, trace,
/// unitarity, Kraus completeness).
inline constexpr double kInvariantTol = 1e-12;
/// Eigenvalue floor for positive semidefiniteness checks.
inline constexpr double kPsdTol = 1e-12;

/// Dense 2x2 complex matrix, value semantics.
struct Mat2 {
  Complex m00{0.0}, m01{0.0}, m10{0.0}, m11{0.0};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  Mat2 operator+(const Mat2& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
  }
  Mat2 operator-(const Mat2& o) const {
    return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
  }
  Mat2 scaled(double s) const { return {s * m00, s * m01, s * m10, s * m11}; }
  Mat2 adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }
  Complex trace() const { return m00 + m11; }

  /// Largest entrywise absolute difference.
  double distance(const Mat2& o) const;
  bool is_unitary(double tol = kInvariantTol) const;
};

/// Single-qubit pure state; unit norm within 1e-12.
struct PureState {
  Complex a0{1.0}, a1{0.0};

  double norm_sq() const { return std::norm(a0) + std::norm(a1); }
  bool is_normalized(double tol = kInvariantTol) const;
};

enum class Basis { Z, X };

/// The four BB84 states: Z holds {|0>, |1>}, X holds {|+>, |->}.
PureState basis_state(Basis basis, int outcome);

/// 2x2 Hermitian, PSD, trace-one matrix; validated on construction.
class DensityOperator {
 public:
  static DensityOperator from_matrix(const Mat2& m);
  static DensityOperator from_pure(const PureState& psi);
  static DensityOperator maximally_mixed();

  const Mat2& matrix() const { return m_; }
  /// Eigenvalues in ascending order (closed form, exact for Hermitian input).
  std::pair<double, double> eigenvalues() const;

 private:
  explicit DensityOperator(const Mat2& m) : m_(m) {}
  Mat2 m_;
};

enum class UnitaryName { I, X, Z, XZ, H, HX, HZ, HXZ };

/// Exact matrix for a named unitary. Composite names multiply left to right,
/// so HX means H * X (X acts first on the state).
Mat2 named_unitary(UnitaryName name);
std::optional<UnitaryName> unitary_name_from_string(std::string_view text);
const char* to_string(UnitaryName name);

/// Single-qubit CPTP map in one of three forms: an explicit unitary mixture,
/// the Hadamard-branch parameterization Gamma(r_x, r_z, r_xz) that applies
/// HX, HZ, HXZ or plain H, or an explicit Kraus set.
class Channel {
 public:
  enum class Kind { UnitaryMixture, Gamma, Kraus };

  struct Term {
    double probability;
    Mat2 unitary;
  };

  static Channel unitary_mixture(std::vector<Term> terms);
  static Channel gamma(double r_x, double r_z, double r_xz);
  static Channel kraus(std::vector<Mat2> operators);
  static Channel identity();

  Kind kind() const { return kind_; }

  /// Mixture terms; for Gamma these are the four derived Hadamard branches.
  const std::vector<Term>& terms() const;
  const std::vector<Mat2>& kraus_operators() const;

  double gamma_r_x() const;
  double gamma_r_z() const;
  double gamma_r_xz() const;

 private:
  Channel() = default;
  Kind kind_ = Kind::UnitaryMixture;
  std::vector<Term> terms_;
  std::vector<Mat2> kraus_;
  double r_x_ = 0.0, r_z_ = 0.0, r_xz_ = 0.0;
};

/// Sum_i p_i U rho U^dag for mixtures, Sum_e K rho K^dag for Kraus sets.
DensityOperator apply_channel(const Channel& channel, const DensityOperator& rho);

/// <phi|rho|phi> for the requested basis vector, clamped into [0, 1].
double born_probability(const DensityOperator& rho, Basis basis, int outcome);

/// Sends `input` through the channel and measures in `basis`; draws exactly
/// one uniform variate against the exact Born distribution.
int sample_measurement(const Channel& channel, const PureState& input, Basis basis,
                       RandomStream& rng);

/// Random CPTP map: a Haar-ish random isometry into qubit x environment
/// (environment dimension 2..4) with the environment traced out.
Channel random_channel(RandomStream& rng);

}  // namespace mmbb84::quantum
