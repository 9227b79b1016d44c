#pragma once

// Generated by tests/oracles/derive.py (mpmath, 40 digits).

namespace oracle {
inline constexpr double two_pi = 6.2831853071795864769;
inline constexpr double four_pi = 12.566370614359172954;
inline constexpr double polygon360_perimeter = 6.2831055588292331747;
inline constexpr double rbar = 0.91031488829410495836;
inline constexpr double bubble_constant = 18.4058956242538118;
inline constexpr double bubble_energy_at_rbar = 18.4058956242538118;
inline constexpr double rbar_inv_sq = 1.2067483357831720186;
inline constexpr double generalized_half_pi = 14.428414773455413446;
inline constexpr double generalized_half_pi_closed = 14.428414773455413446;
inline constexpr double generalized_two_thirds = 18.4058956242538118;
inline constexpr double el_residual_r2 = -0.375;
inline constexpr double injectivity_chain = 18.981330409572781969;
inline constexpr double half_circle_gap_bound = 4.442882938158366247;
inline constexpr double unit_polygon200_energy = 12.566370624985031244;
inline constexpr double radius2_polygon200_elastic = 3.1417218501283804712;
inline constexpr double radius2_polygon200_alpha1 = 15.707575699584921074;
}  // namespace oracle
