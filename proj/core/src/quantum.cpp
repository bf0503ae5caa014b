#include "mmbb84/quantum.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace mmbb84::quantum {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

double Mat2::distance(const Mat2& o) const {
  double d = std::abs(m00 - o.m00);
  d = std::max(d, std::abs(m01 - o.m01));
  d = std::max(d, std::abs(m10 - o.m10));
  d = std::max(d, std::abs(m11 - o.m11));
  return d;
}

bool Mat2::is_unitary(double tol) const {
  return (adjoint() * *this).distance(Mat2::identity()) <= tol;
}

bool PureState::is_normalized(double tol) const {
  return std::abs(norm_sq() - 1.0) <= tol;
}

PureState basis_state(Basis basis, int outcome) {
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("basis_state: outcome must be 0 or 1");
  }
  if (basis == Basis::Z) {
    return outcome == 0 ? PureState{1.0, 0.0} : PureState{0.0, 1.0};
  }
  return outcome == 0 ? PureState{kInvSqrt2, kInvSqrt2} : PureState{kInvSqrt2, -kInvSqrt2};
}

DensityOperator DensityOperator::from_matrix(const Mat2& m) {
  if (std::abs(m.m00.imag()) > kInvariantTol || std::abs(m.m11.imag()) > kInvariantTol ||
      std::abs(m.m01 - std::conj(m.m10)) > kInvariantTol) {
    throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
  }
  if (std::abs(m.trace().real() - 1.0) > kInvariantTol) {
    throw std::invalid_argument("DensityOperator: trace is not one");
  }
  DensityOperator rho(m);
  if (rho.eigenvalues().first < -kPsdTol) {
    throw std::invalid_argument("DensityOperator: matrix is not positive semidefinite");
  }
  return rho;
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  if (!psi.is_normalized()) {
    throw std::invalid_argument("DensityOperator::from_pure: state is not normalized");
  }
  return DensityOperator({psi.a0 * std::conj(psi.a0), psi.a0 * std::conj(psi.a1),
                          psi.a1 * std::conj(psi.a0), psi.a1 * std::conj(psi.a1)});
}

DensityOperator DensityOperator::maximally_mixed() {
  return DensityOperator(Mat2::identity().scaled(0.5));
}

std::pair<double, double> DensityOperator::eigenvalues() const {
  const double tr = m_.trace().real();
  const double det = (m_.m00 * m_.m11 - m_.m01 * m_.m10).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return {(tr - disc) / 2.0, (tr + disc) / 2.0};
}

Mat2 named_unitary(UnitaryName name) {
  static const Mat2 i = Mat2::identity();
  static const Mat2 x = {0.0, 1.0, 1.0, 0.0};
  static const Mat2 z = {1.0, 0.0, 0.0, -1.0};
  static const Mat2 h = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
  switch (name) {
    case UnitaryName::I: return i;
    case UnitaryName::X: return x;
    case UnitaryName::Z: return z;
    case UnitaryName::XZ: return x * z;
    case UnitaryName::H: return h;
    case UnitaryName::HX: return h * x;
    case UnitaryName::HZ: return h * z;
    case UnitaryName::HXZ: return h * x * z;
  }
  throw std::invalid_argument("named_unitary: unknown name");
}

std::optional<UnitaryName> unitary_name_from_string(std::string_view text) {
  if (text == "I") return UnitaryName::I;
  if (text == "X") return UnitaryName::X;
  if (text == "Z") return UnitaryName::Z;
  if (text == "XZ") return UnitaryName::XZ;
  if (text == "H") return UnitaryName::H;
  if (text == "HX") return UnitaryName::HX;
  if (text == "HZ") return UnitaryName::HZ;
  if (text == "HXZ") return UnitaryName::HXZ;
  return std::nullopt;
}

const char* to_string(UnitaryName name) {
  switch (name) {
    case UnitaryName::I: return "I";
    case UnitaryName::X: return "X";
    case UnitaryName::Z: return "Z";
    case UnitaryName::XZ: return "XZ";
    case UnitaryName::H: return "H";
    case UnitaryName::HX: return "HX";
    case UnitaryName::HZ: return "HZ";
    case UnitaryName::HXZ: return "HXZ";
  }
  return "?";
}

Channel Channel::unitary_mixture(std::vector<Term> terms) {
  double sum = 0.0;
  for (const Term& t : terms) {
    if (t.probability < 0.0) {
      throw std::invalid_argument("Channel: mixture probability is negative");
    }
    if (!t.unitary.is_unitary()) {
      throw std::invalid_argument("Channel: mixture matrix is not unitary");
    }
    sum += t.probability;
  }
  if (std::abs(sum - 1.0) > kInvariantTol) {
    throw std::invalid_argument("Channel: mixture probabilities do not sum to one");
  }
  Channel ch;
  ch.kind_ = Kind::UnitaryMixture;
  ch.terms_ = std::move(terms);
  return ch;
}

Channel Channel::gamma(double r_x, double r_z, double r_xz) {
  if (r_x < 0.0 || r_z < 0.0 || r_xz < 0.0) {
    throw std::invalid_argument("Channel::gamma: rates must be nonnegative");
  }
  const double sum = r_x + r_z + r_xz;
  if (sum > 1.0 + kInvariantTol) {
    throw std::invalid_argument("Channel::gamma: rates sum beyond one");
  }
  Channel ch;
  ch.kind_ = Kind::Gamma;
  ch.r_x_ = r_x;
  ch.r_z_ = r_z;
  ch.r_xz_ = r_xz;
  ch.terms_ = {{r_x, named_unitary(UnitaryName::HX)},
               {r_z, named_unitary(UnitaryName::HZ)},
               {r_xz, named_unitary(UnitaryName::HXZ)},
               {std::max(0.0, 1.0 - sum), named_unitary(UnitaryName::H)}};
  return ch;
}

Channel Channel::kraus(std::vector<Mat2> operators) {
  if (operators.empty()) {
    throw std::invalid_argument("Channel::kraus: empty operator set");
  }
  Mat2 acc;
  for (const Mat2& k : operators) {
    acc = acc + k.adjoint() * k;
  }
  if (acc.distance(Mat2::identity()) > kInvariantTol) {
    throw std::invalid_argument("Channel::kraus: completeness relation violated");
  }
  Channel ch;
  ch.kind_ = Kind::Kraus;
  ch.kraus_ = std::move(operators);
  return ch;
}

Channel Channel::identity() {
  return unitary_mixture({{1.0, Mat2::identity()}});
}

const std::vector<Channel::Term>& Channel::terms() const {
  if (kind_ == Kind::Kraus) {
    throw std::logic_error("Channel::terms: Kraus channel has no mixture form");
  }
  return terms_;
}

const std::vector<Mat2>& Channel::kraus_operators() const {
  if (kind_ != Kind::Kraus) {
    throw std::logic_error("Channel::kraus_operators: not a Kraus channel");
  }
  return kraus_;
}

double Channel::gamma_r_x() const {
  if (kind_ != Kind::Gamma) throw std::logic_error("Channel: not a Gamma channel");
  return r_x_;
}
double Channel::gamma_r_z() const {
  if (kind_ != Kind::Gamma) throw std::logic_error("Channel: not a Gamma channel");
  return r_z_;
}
double Channel::gamma_r_xz() const {
  if (kind_ != Kind::Gamma) throw std::logic_error("Channel: not a Gamma channel");
  return r_xz_;
}

DensityOperator apply_channel(const Channel& channel, const DensityOperator& rho) {
  Mat2 out;
  if (channel.kind() == Channel::Kind::Kraus) {
    for (const Mat2& k : channel.kraus_operators()) {
      out = out + k * rho.matrix() * k.adjoint();
    }
  } else {
    for (const Channel::Term& t : channel.terms()) {
      out = out + (t.unitary * rho.matrix() * t.unitary.adjoint()).scaled(t.probability);
    }
  }
  return DensityOperator::from_matrix(out);
}

double born_probability(const DensityOperator& rho, Basis basis, int outcome) {
  const PureState phi = basis_state(basis, outcome);
  const Mat2& m = rho.matrix();
  // <phi|rho|phi>
  const Complex value = std::conj(phi.a0) * (m.m00 * phi.a0 + m.m01 * phi.a1) +
                        std::conj(phi.a1) * (m.m10 * phi.a0 + m.m11 * phi.a1);
  return std::min(1.0, std::max(0.0, value.real()));
}

int sample_measurement(const Channel& channel, const PureState& input, Basis basis,
                       RandomStream& rng) {
  const DensityOperator rho = apply_channel(channel, DensityOperator::from_pure(input));
  const double p0 = born_probability(rho, basis, 0);
  return rng.next_unit() < p0 ? 0 : 1;
}

Channel random_channel(RandomStream& rng) {
  const std::size_t env_dim = 2 + rng.next_below(3);
  const std::size_t rows = 2 * env_dim;

  // Two random complex columns, orthonormalized (Gram-Schmidt), form an
  // isometry V: C^2 -> C^2 (x) C^env. Kraus operators are its row groups.
  std::vector<Complex> col0, col1;
  while (true) {
    col0.clear();
    col1.clear();
    for (std::size_t r = 0; r < rows; ++r) {
      col0.emplace_back(rng.next_gaussian(), rng.next_gaussian());
      col1.emplace_back(rng.next_gaussian(), rng.next_gaussian());
    }
    double n0 = 0.0;
    for (const Complex& c : col0) n0 += std::norm(c);
    n0 = std::sqrt(n0);
    if (n0 < 1e-6) continue;
    for (Complex& c : col0) c /= n0;

    Complex overlap = 0.0;
    for (std::size_t r = 0; r < rows; ++r) overlap += std::conj(col0[r]) * col1[r];
    for (std::size_t r = 0; r < rows; ++r) col1[r] -= overlap * col0[r];
    double n1 = 0.0;
    for (const Complex& c : col1) n1 += std::norm(c);
    n1 = std::sqrt(n1);
    if (n1 < 1e-6) continue;
    for (Complex& c : col1) c /= n1;
    break;
  }

  std::vector<Mat2> kraus(env_dim);
  for (std::size_t e = 0; e < env_dim; ++e) {
    kraus[e] = {col0[0 * env_dim + e], col1[0 * env_dim + e],
                col0[1 * env_dim + e], col1[1 * env_dim + e]};
  }
  return Channel::kraus(std::move(kraus));
}

}  // namespace mmbb84::quantum
