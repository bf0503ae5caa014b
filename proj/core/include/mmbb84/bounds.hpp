#pragma once

#include "mmbb84/quantum.hpp"

namespace mmbb84::bounds {

/// Slack applied to every entropic inequality; absorbs double-precision
/// entropy evaluation near p = 0 and p = 1.
inline constexpr double kInequalitySlack = 1e-9;

/// Binary entropy in bits, with h(0) = h(1) = 0 by continuity.
/// p outside [0, 1] is a contract violation.
double binary_entropy(double p);

/// The eight single-state error probabilities of a channel, plus their
/// pairwise averages. p_* are matched-basis error rates, q_* mismatched.
struct ChannelRates {
  double p_x_plus = 0.0;   // <-| G(|+><+|) |->
  double p_x_minus = 0.0;  // <+| G(|-><-|) |+>
  double q_x0 = 0.0;       // <-| G(|0><0|) |->
  double q_x1 = 0.0;       // <+| G(|1><1|) |+>
  double p_z0 = 0.0;       // <1| G(|0><0|) |1>
  double p_z1 = 0.0;       // <0| G(|1><1|) |0>
  double q_z_plus = 0.0;   // <1| G(|+><+|) |1>
  double q_z_minus = 0.0;  // <0| G(|-><-|) |0>
  double p_x = 0.0;        // (p_x_plus + p_x_minus) / 2
  double p_z = 0.0;        // (p_z0 + p_z1) / 2
  double q_x = 0.0;        // (q_x0 + q_x1) / 2
  double q_z = 0.0;        // (q_z_plus + q_z_minus) / 2
};

ChannelRates analytic_rates(const quantum::Channel& channel);

/// 1 - h(p_x) - h(p_z): key-rate lower bound from matched measurements.
double matched_rate_bound(const ChannelRates& rates);

/// 1 - h(q_x) - h(q_z): key-rate lower bound from mismatched measurements.
double mismatched_rate_bound(const ChannelRates& rates);

/// H(P_Z) + H(P_X) for one state: the Shannon entropies (bits) of the two
/// Born distributions. At least 1 for every qubit state.
double uncertainty_sum(const quantum::DensityOperator& rho);

/// Every inequality the uncertainty relation forces on a channel's rates.
/// The four pairwise sums each stay >= 1, so the two rate bounds can never
/// be positive together (their sum stays <= 0).
struct TradeoffReport {
  double lhs_f1 = 0.0;  // h(p_x_plus) + h(q_z_plus)
  double lhs_f2 = 0.0;  // h(p_x_minus) + h(q_z_minus)
  double lhs_f3 = 0.0;  // h(p_z0) + h(q_x0)
  double lhs_f4 = 0.0;  // h(p_z1) + h(q_x1)
  double lhs_f9 = 0.0;  // h(p_x) + h(q_z)
  double lhs_f10 = 0.0; // h(p_z) + h(q_x)
  double matched_bound = 0.0;
  double mismatched_bound = 0.0;
  double f11_sum = 0.0; // matched_bound + mismatched_bound
  bool all_satisfied = false;
};

TradeoffReport verify_tradeoff(const quantum::Channel& channel);

}  // namespace mmbb84::bounds
