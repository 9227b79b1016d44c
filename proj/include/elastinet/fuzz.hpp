#pragma once

#include <cstddef>
#include <random>

#include "elastinet/bounds.hpp"
#include "elastinet/network.hpp"

namespace elastinet {

/// Seeded generators for property tests. Every result passes validate().
using Rng = std::mt19937_64;

/// Star-shaped closed curve with 0 to `max_corners` corners; arcs between
/// corners carry random smooth bumps. About `points_per_arc` points per arc.
PiecewiseClosedCurve random_piecewise_loop(Rng& rng, std::size_t max_corners = 6,
                                           std::size_t points_per_arc = 80);

Network random_closed(Rng& rng, std::size_t n = 120);
Network random_drop(Rng& rng, std::size_t n = 120);
/// Standard double bubble of random radius, bent away from its ends, then
/// rigidly moved.
Network random_theta(Rng& rng, std::size_t n = 60);
Network random_generalized_theta(Rng& rng, std::size_t n = 60);
Network random_degenerate_theta(Rng& rng, std::size_t n_half = 30);
Network random_double_drop(Rng& rng, std::size_t n = 120);
/// Any of the above, uniformly by kind.
Network random_network(Rng& rng);

/// Smooth normal displacement of points first..last (inclusive), vanishing at
/// both ends of the range.
void perturb_interior(DiscreteCurve& curve, Rng& rng, double amplitude, std::size_t first,
                      std::size_t last);

}  // namespace elastinet
