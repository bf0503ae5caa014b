#include "mmbb84/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace mmbb84::bounds {

using quantum::Basis;
using quantum::Channel;
using quantum::DensityOperator;

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("binary_entropy: probability outside [0, 1]");
  }
  // Arguments this close to the edge contribute less than 1e-13 bits.
  if (p < 1e-15 || 1.0 - p < 1e-15) {
    return 0.0;
  }
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

ChannelRates analytic_rates(const Channel& channel) {
  const auto transmit = [&](Basis in_basis, int in_outcome) {
    return quantum::apply_channel(
        channel, DensityOperator::from_pure(quantum::basis_state(in_basis, in_outcome)));
  };
  const DensityOperator out_0 = transmit(Basis::Z, 0);
  const DensityOperator out_1 = transmit(Basis::Z, 1);
  const DensityOperator out_plus = transmit(Basis::X, 0);
  const DensityOperator out_minus = transmit(Basis::X, 1);

  ChannelRates r;
  r.p_x_plus = quantum::born_probability(out_plus, Basis::X, 1);
  r.p_x_minus = quantum::born_probability(out_minus, Basis::X, 0);
  r.q_x0 = quantum::born_probability(out_0, Basis::X, 1);
  r.q_x1 = quantum::born_probability(out_1, Basis::X, 0);
  r.p_z0 = quantum::born_probability(out_0, Basis::Z, 1);
  r.p_z1 = quantum::born_probability(out_1, Basis::Z, 0);
  r.q_z_plus = quantum::born_probability(out_plus, Basis::Z, 1);
  r.q_z_minus = quantum::born_probability(out_minus, Basis::Z, 0);
  r.p_x = (r.p_x_plus + r.p_x_minus) / 2.0;
  r.p_z = (r.p_z0 + r.p_z1) / 2.0;
  r.q_x = (r.q_x0 + r.q_x1) / 2.0;
  r.q_z = (r.q_z_plus + r.q_z_minus) / 2.0;
  return r;
}

double matched_rate_bound(const ChannelRates& rates) {
  return 1.0 - binary_entropy(rates.p_x) - binary_entropy(rates.p_z);
}

double mismatched_rate_bound(const ChannelRates& rates) {
  return 1.0 - binary_entropy(rates.q_x) - binary_entropy(rates.q_z);
}

double uncertainty_sum(const DensityOperator& rho) {
  return binary_entropy(quantum::born_probability(rho, Basis::Z, 0)) +
         binary_entropy(quantum::born_probability(rho, Basis::X, 0));
}

TradeoffReport verify_tradeoff(const Channel& channel) {
  const ChannelRates r = analytic_rates(channel);
  TradeoffReport report;
  report.lhs_f1 = binary_entropy(r.p_x_plus) + binary_entropy(r.q_z_plus);
  report.lhs_f2 = binary_entropy(r.p_x_minus) + binary_entropy(r.q_z_minus);
  report.lhs_f3 = binary_entropy(r.p_z0) + binary_entropy(r.q_x0);
  report.lhs_f4 = binary_entropy(r.p_z1) + binary_entropy(r.q_x1);
  report.lhs_f9 = binary_entropy(r.p_x) + binary_entropy(r.q_z);
  report.lhs_f10 = binary_entropy(r.p_z) + binary_entropy(r.q_x);
  report.matched_bound = matched_rate_bound(r);
  report.mismatched_bound = mismatched_rate_bound(r);
  report.f11_sum = report.matched_bound + report.mismatched_bound;
  const double floor = 1.0 - kInequalitySlack;
  report.all_satisfied = report.lhs_f1 >= floor && report.lhs_f2 >= floor &&
                         report.lhs_f3 >= floor && report.lhs_f4 >= floor &&
                         report.lhs_f9 >= floor && report.lhs_f10 >= floor &&
                         report.f11_sum <= kInequalitySlack;
  return report;
}

}  // namespace mmbb84::bounds
