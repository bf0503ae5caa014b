#include "doctest.h"

#include <cmath>
#include <vector>

#include "mmbb84/quantum.hpp"

using namespace mmbb84;
using namespace mmbb84::quantum;

namespace {

bool states_equal(const PureState& a, const PureState& b, double tol = 1e-12) {
  return std::abs(a.a0 - b.a0) <= tol && std::abs(a.a1 - b.a1) <= tol;
}

PureState apply(const Mat2& u, const PureState& psi) {
  return {u.m00 * psi.a0 + u.m01 * psi.a1, u.m10 * psi.a0 + u.m11 * psi.a1};
}

}  // namespace

TEST_SUITE_BEGIN("quantum");

TEST_CASE("named unitaries act on the BB84 states as declared") {
  const PureState ket0 = basis_state(Basis::Z, 0);
  const PureState ket1 = basis_state(Basis::Z, 1);
  const PureState plus = basis_state(Basis::X, 0);
  const PureState minus = basis_state(Basis::X, 1);

  CHECK(states_equal(apply(named_unitary(UnitaryName::X), ket0), ket1));
  CHECK(states_equal(apply(named_unitary(UnitaryName::X), ket1), ket0));
  CHECK(states_equal(apply(named_unitary(UnitaryName::Z), plus), minus));
  CHECK(states_equal(apply(named_unitary(UnitaryName::Z), minus), plus));
  CHECK(states_equal(apply(named_unitary(UnitaryName::H), ket0), plus));
  CHECK(states_equal(apply(named_unitary(UnitaryName::H), ket1), minus));
}

TEST_CASE("all named unitaries are unitary and composites multiply left-to-right") {
  for (UnitaryName name : {UnitaryName::I, UnitaryName::X, UnitaryName::Z, UnitaryName::XZ,
                           UnitaryName::H, UnitaryName::HX, UnitaryName::HZ, UnitaryName::HXZ}) {
    CHECK(named_unitary(name).is_unitary());
    CHECK(unitary_name_from_string(to_string(name)) == name);
  }
  const Mat2 hx = named_unitary(UnitaryName::H) * named_unitary(UnitaryName::X);
  CHECK(named_unitary(UnitaryName::HX).distance(hx) == 0.0);
  CHECK_FALSE(unitary_name_from_string("Q").has_value());
}

TEST_CASE("identity channel leaves any state unchanged") {
  const Channel id = Channel::identity();
  const DensityOperator rho = DensityOperator::from_pure(basis_state(Basis::X, 1));
  CHECK(apply_channel(id, rho).matrix().distance(rho.matrix()) <= 1e-15);
}

TEST_CASE("pure-Hadamard gamma maps |0><0| to |+><+|") {
  const Channel ch = Channel::gamma(0.0, 0.0, 0.0);
  const DensityOperator out =
      apply_channel(ch, DensityOperator::from_pure(basis_state(Basis::Z, 0)));
  const DensityOperator plus = DensityOperator::from_pure(basis_state(Basis::X, 0));
  CHECK(out.matrix().distance(plus.matrix()) <= 1e-15);
}

TEST_CASE("even I/X mixture sends |0><0| to the maximally mixed state") {
  const Channel ch = Channel::unitary_mixture(
      {{0.5, named_unitary(UnitaryName::I)}, {0.5, named_unitary(UnitaryName::X)}});
  const DensityOperator out =
      apply_channel(ch, DensityOperator::from_pure(basis_state(Basis::Z, 0)));
  CHECK(out.matrix().distance(DensityOperator::maximally_mixed().matrix()) <= 1e-15);
}

TEST_CASE("born probabilities: eigenstate, unbiased overlap, Hadamard image") {
  const DensityOperator rho0 = DensityOperator::from_pure(basis_state(Basis::Z, 0));
  CHECK(born_probability(rho0, Basis::Z, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(born_probability(rho0, Basis::X, 0) == doctest::Approx(0.5).epsilon(1e-12));

  const DensityOperator image = apply_channel(
      Channel::gamma(0.0, 0.0, 0.0), DensityOperator::from_pure(basis_state(Basis::Z, 1)));
  CHECK(born_probability(image, Basis::X, 0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("born probabilities of a basis sum to one") {
  RandomStream rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const Channel ch = random_channel(rng);
    const DensityOperator rho =
        apply_channel(ch, DensityOperator::from_pure(basis_state(Basis::X, 0)));
    for (Basis basis : {Basis::Z, Basis::X}) {
      const double sum = born_probability(rho, basis, 0) + born_probability(rho, basis, 1);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("apply_channel preserves trace and positivity") {
  RandomStream rng(103);
  for (int trial = 0; trial < 300; ++trial) {
    const Channel ch = random_channel(rng);
    const PureState in = basis_state(trial % 2 == 0 ? Basis::Z : Basis::X, trial % 4 / 2);
    const DensityOperator out = apply_channel(ch, DensityOperator::from_pure(in));
    CHECK(std::abs(out.matrix().trace().real() - 1.0) <= 1e-12);
    CHECK(out.eigenvalues().first >= -1e-10);
  }
}

TEST_CASE("unitary mixture agrees with its Kraus form") {
  RandomStream rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    const double p = rng.next_unit();
    const Channel mixture = Channel::unitary_mixture(
        {{p, named_unitary(UnitaryName::H)}, {1.0 - p, named_unitary(UnitaryName::XZ)}});
    const Channel kraus = Channel::kraus({named_unitary(UnitaryName::H).scaled(std::sqrt(p)),
                                          named_unitary(UnitaryName::XZ).scaled(std::sqrt(1.0 - p))});
    const DensityOperator rho = DensityOperator::from_pure(basis_state(Basis::X, trial % 2));
    CHECK(apply_channel(mixture, rho).matrix().distance(apply_channel(kraus, rho).matrix()) <=
          1e-12);
  }
}

TEST_CASE("deterministic measurement outcomes") {
  RandomStream rng(109);
  for (int trial = 0; trial < 100; ++trial) {
    CHECK(sample_measurement(Channel::identity(), basis_state(Basis::Z, 0), Basis::Z, rng) == 0);
    CHECK(sample_measurement(Channel::gamma(0, 0, 0), basis_state(Basis::Z, 0), Basis::X, rng) ==
          0);
  }
}

TEST_CASE("measurement statistics track the Born probability") {
  // Gamma(0.1, 0, 0) on |0> measured in X flips to |-> with probability 0.1.
  const Channel ch = Channel::gamma(0.1, 0.0, 0.0);
  RandomStream rng(113);
  const int samples = 100000;
  int minus_count = 0;
  for (int i = 0; i < samples; ++i) {
    minus_count += sample_measurement(ch, basis_state(Basis::Z, 0), Basis::X, rng);
  }
  const double freq = static_cast<double>(minus_count) / samples;
  const double sigma = std::sqrt(0.1 * 0.9 / samples);
  CHECK(std::abs(freq - 0.1) <= 3.0 * sigma);
}

TEST_CASE("random channels satisfy completeness and are replayable") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    RandomStream rng(seed);
    const Channel ch = random_channel(rng);
    Mat2 acc;
    for (const Mat2& k : ch.kraus_operators()) {
      acc = acc + k.adjoint() * k;
    }
    CHECK(acc.distance(Mat2::identity()) <= 1e-10);

    RandomStream replay(seed);
    const Channel again = random_channel(replay);
    REQUIRE(again.kraus_operators().size() == ch.kraus_operators().size());
    for (std::size_t i = 0; i < ch.kraus_operators().size(); ++i) {
      CHECK(again.kraus_operators()[i].distance(ch.kraus_operators()[i]) == 0.0);
    }
  }
}

TEST_CASE("channel validation rejects malformed inputs") {
  CHECK_THROWS_AS(Channel::gamma(-0.1, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Channel::gamma(0.6, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(
      Channel::unitary_mixture({{0.5, named_unitary(UnitaryName::I)}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      Channel::unitary_mixture({{1.0, Mat2{1.0, 0.0, 0.0, 2.0}}}),
      std::invalid_argument);
  CHECK_THROWS_AS(Channel::kraus({Mat2::identity().scaled(0.9)}), std::invalid_argument);
  CHECK_THROWS_AS(DensityOperator::from_matrix(Mat2{0.9, 0.0, 0.0, 0.2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DensityOperator::from_pure(PureState{0.5, 0.5}), std::invalid_argument);
}

TEST_SUITE_END();
