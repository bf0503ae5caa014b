#include "mmbb84/css.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace mmbb84::css {

namespace {

void check_state_size(std::size_t qubits) {
  if (qubits == 0 || qubits > kMaxStateQubits) {
    throw std::invalid_argument("css: statevector qubit count outside 1..12");
  }
}

void check_density_size(std::size_t qubits) {
  if (qubits == 0 || qubits > kMaxDensityQubits) {
    throw std::invalid_argument("css: density matrix qubit count outside 1..6");
  }
}

void check_nested(const gf2::LinearCode& c1, const gf2::LinearCode& c2, const gf2::Vector& v) {
  if (c2.length() != c1.length() || v.size() != c1.length()) {
    throw std::invalid_argument("css: code/vector length mismatch");
  }
  if (!c1.contains(v)) {
    throw std::invalid_argument("css: v is not a codeword of c1");
  }
  for (std::size_t r = 0; r < c2.dimension(); ++r) {
    if (!c1.contains(c2.generator().row(r))) {
      throw std::invalid_argument("css: c2 is not a subcode of c1");
    }
  }
}

Eigen::MatrixXcd to_eigen(const DensityMatrix& rho) {
  Eigen::MatrixXcd m(rho.dim, rho.dim);
  for (std::size_t r = 0; r < rho.dim; ++r) {
    for (std::size_t c = 0; c < rho.dim; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rho.at(r, c);
    }
  }
  return m;
}

}  // namespace

double StateVector::norm() const {
  double acc = 0.0;
  for (const Complex& a : amplitudes) {
    acc += std::norm(a);
  }
  return std::sqrt(acc);
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.qubits != b.qubits) {
    throw std::invalid_argument("css::inner_product: qubit count mismatch");
  }
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  }
  return acc;
}

std::size_t basis_index(const gf2::Vector& v) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    index = (index << 1) | (v.get(i) ? 1 : 0);
  }
  return index;
}

DensityMatrix DensityMatrix::zero(std::size_t qubits) {
  check_density_size(qubits);
  DensityMatrix rho;
  rho.qubits = qubits;
  rho.dim = std::size_t(1) << qubits;
  rho.entries.assign(rho.dim * rho.dim, Complex(0.0));
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t qubits) {
  DensityMatrix rho = zero(qubits);
  const double p = 1.0 / static_cast<double>(rho.dim);
  for (std::size_t i = 0; i < rho.dim; ++i) {
    rho.at(i, i) = p;
  }
  return rho;
}

void DensityMatrix::add_outer(const StateVector& psi, double weight) {
  if (psi.qubits != qubits) {
    throw std::invalid_argument("DensityMatrix::add_outer: qubit count mismatch");
  }
  // Only the state's support contributes; codewords touch |c2| positions.
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) {
    if (psi.amplitudes[i] != Complex(0.0)) {
      support.push_back(i);
    }
  }
  for (std::size_t r : support) {
    const Complex wr = weight * psi.amplitudes[r];
    for (std::size_t c : support) {
      at(r, c) += wr * std::conj(psi.amplitudes[c]);
    }
  }
}

double DensityMatrix::trace() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    acc += at(i, i).real();
  }
  return acc;
}

bool is_valid_density(const DensityMatrix& rho, double tol) {
  for (std::size_t r = 0; r < rho.dim; ++r) {
    for (std::size_t c = 0; c < rho.dim; ++c) {
      if (std::abs(rho.at(r, c) - std::conj(rho.at(c, r))) > tol) {
        return false;
      }
    }
  }
  if (std::abs(rho.trace() - 1.0) > tol) {
    return false;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(rho),
                                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim != b.dim) {
    throw std::invalid_argument("css::trace_distance: dimension mismatch");
  }
  const Eigen::MatrixXcd diff = to_eigen(a) - to_eigen(b);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

StateVector css_codeword(const gf2::LinearCode& c1, const gf2::LinearCode& c2,
                         const gf2::Vector& v) {
  return parameterized_css_codeword(c1, c2, v, gf2::Vector(c1.length()),
                                    gf2::Vector(c1.length()));
}

StateVector parameterized_css_codeword(const gf2::LinearCode& c1, const gf2::LinearCode& c2,
                                       const gf2::Vector& v, const gf2::Vector& x,
                                       const gf2::Vector& z) {
  const std::size_t n = c1.length();
  check_state_size(n);
  check_nested(c1, c2, v);
  if (x.size() != n || z.size() != n) {
    throw std::invalid_argument("css: parameter length mismatch");
  }

  StateVector psi;
  psi.qubits = n;
  psi.amplitudes.assign(std::size_t(1) << n, Complex(0.0));
  const auto words = gf2::span_of(c2.generator());
  const double amp = 1.0 / std::sqrt(static_cast<double>(words.size()));
  for (const gf2::Vector& w : words) {
    // (-1)^(z, w)
    std::size_t dot = 0;
    for (std::size_t i = 0; i < n; ++i) {
      dot ^= static_cast<std::size_t>(z.get(i) && w.get(i));
    }
    psi.amplitudes[basis_index(x + v + w)] += (dot != 0 ? -amp : amp);
  }
  return psi;
}

DensityMatrix average_over_z(const gf2::LinearCode& c1, const gf2::LinearCode& c2,
                             const gf2::Vector& v, const gf2::Vector& x) {
  const std::size_t n = c1.length();
  check_density_size(n);
  DensityMatrix rho = DensityMatrix::zero(n);
  const std::size_t z_count = std::size_t(1) << n;
  const double weight = 1.0 / static_cast<double>(z_count);
  for (std::size_t zi = 0; zi < z_count; ++zi) {
    gf2::Vector z(n);
    for (std::size_t i = 0; i < n; ++i) {
      z.set(i, (zi >> i) & 1);
    }
    rho.add_outer(parameterized_css_codeword(c1, c2, v, x, z), weight);
  }
  return rho;
}

DensityMatrix coset_mixture(const gf2::LinearCode& c1, const gf2::LinearCode& c2,
                            const gf2::Vector& v, const gf2::Vector& x) {
  const std::size_t n = c1.length();
  check_density_size(n);
  check_nested(c1, c2, v);
  DensityMatrix rho = DensityMatrix::zero(n);
  const auto words = gf2::span_of(c2.generator());
  const double p = 1.0 / static_cast<double>(words.size());
  for (const gf2::Vector& w : words) {
    const std::size_t i = basis_index(x + v + w);
    rho.at(i, i) += p;
  }
  return rho;
}

DensityMatrix average_over_x_v(const gf2::LinearCode& c1, const gf2::LinearCode& c2) {
  const std::size_t n = c1.length();
  check_density_size(n);
  DensityMatrix rho = DensityMatrix::zero(n);
  const auto codewords = gf2::span_of(c1.generator());
  const auto shifts = gf2::span_of(c2.generator());
  const std::size_t x_count = std::size_t(1) << n;
  const double p =
      1.0 / (static_cast<double>(x_count) * static_cast<double>(codewords.size()) *
             static_cast<double>(shifts.size()));
  for (std::size_t xi = 0; xi < x_count; ++xi) {
    gf2::Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x.set(i, (xi >> i) & 1);
    }
    for (const gf2::Vector& v : codewords) {
      for (const gf2::Vector& w : shifts) {
        const std::size_t i = basis_index(x + v + w);
        rho.at(i, i) += p;
      }
    }
  }
  return rho;
}

}  // namespace mmbb84::css
