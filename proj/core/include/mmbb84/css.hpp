#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "mmbb84/gf2.hpp"
#include "mmbb84/linear_code.hpp"

namespace mmbb84::css {

using Complex = std::complex<double>;

/// Statevectors are capped at 12 qubits and dense density matrices at 6:
/// large enough to average exhaustively over all 2^n phase and shift
/// parameters in seconds, which is all this module exists for.
inline constexpr std::size_t kMaxStateQubits = 12;
inline constexpr std::size_t kMaxDensityQubits = 6;

/// n-qubit pure state; amplitude index has bit 0 of the label as the most
/// significant position (first tensor factor).
struct StateVector {
  std::size_t qubits = 0;
  std::vector<Complex> amplitudes;

  double norm() const;
};

Complex inner_product(const StateVector& a, const StateVector& b);

/// Computational basis index of a bit string; bit 0 first.
std::size_t basis_index(const gf2::Vector& v);

/// n-qubit density matrix, row-major.
struct DensityMatrix {
  std::size_t qubits = 0;
  std::size_t dim = 0;
  std::vector<Complex> entries;

  static DensityMatrix zero(std::size_t qubits);
  static DensityMatrix maximally_mixed(std::size_t qubits);

  Complex& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
  const Complex& at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }

  void add_outer(const StateVector& psi, double weight);
  double trace() const;
};

/// Hermitian within tol, unit trace within tol, eigenvalues >= -tol.
bool is_valid_density(const DensityMatrix& rho, double tol = 1e-10);

/// Half the sum of the absolute eigenvalues of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Equal-superposition codeword over the coset v + c2; v must lie in c1 and
/// c2 inside c1.
StateVector css_codeword(const gf2::LinearCode& c1, const gf2::LinearCode& c2,
                         const gf2::Vector& v);

/// Codeword shifted by x with phases (-1)^(z,w) over the c2 sum.
StateVector parameterized_css_codeword(const gf2::LinearCode& c1, const gf2::LinearCode& c2,
                                       const gf2::Vector& v, const gf2::Vector& x,
                                       const gf2::Vector& z);

/// Uniform average of |psi_{x,v,z}><psi_{x,v,z}| over all 2^n phase
/// parameters z. Collapses to the diagonal coset mixture.
DensityMatrix average_over_z(const gf2::LinearCode& c1, const gf2::LinearCode& c2,
                             const gf2::Vector& v, const gf2::Vector& x);

/// The diagonal mixture (1/|c2|) sum_w |x+v+w><x+v+w| the z-average must
/// reproduce.
DensityMatrix coset_mixture(const gf2::LinearCode& c1, const gf2::LinearCode& c2,
                            const gf2::Vector& v, const gf2::Vector& x);

/// Average of the coset mixtures over every shift x and codeword v; equals
/// the maximally mixed state.
DensityMatrix average_over_x_v(const gf2::LinearCode& c1, const gf2::LinearCode& c2);

}  // namespace mmbb84::css
