#pragma once

// Constructive witnesses for the chaotic behaviour of G on (X, d).
//
// Each witness builds the point the corresponding existence argument calls
// for, runs the orbit, and measures whether the claimed property holds at
// the configured tolerance. Nothing here searches; every construction is
// explicit and deterministic.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chaosmark/phase_space.hpp"

namespace chaosmark {

enum class Property { Sensitivity, StrongTransitivity, Regularity, NonExpansivity, Continuity };

std::string_view to_string(Property p);

struct WitnessReport {
    Property property = Property::Sensitivity;
    std::map<std::string, double> inputs;
    /// The constructed point(s): one point, or the (X, Y) pair for the expansivity counterexample.
    std::vector<PhasePoint> constructed;
    std::size_t iterations_used = 0;
    std::map<std::string, double> measured;
    /// Secondary checks reported alongside the verdict, e.g. whether a tighter published bound held.
    std::map<std::string, bool> flags;
    bool verdict = false;
    double tolerance = 1e-9;
};

struct OrbitRow {
    std::size_t step = 0;
    double distance = 0.0;
    double media_distance = 0.0;
    /// Continuity probe only: distance between the perturbed and reference inputs.
    std::optional<double> input_distance;
    bool skipped = false;
};

struct OrbitTrace {
    std::vector<OrbitRow> points;
};

/// Integer k with 10^-k <= r < 10^-k+1, clamped to k >= 0.
std::size_t radius_exponent(double r);

/// Perturbs the first component of strategy term k0+1 so that the orbits
/// separate by at least N/2 in media after k0+2 steps.
WitnessReport witness_sensitivity(const PhasePoint& x, double r, const SpaceConfig& space);

/// Builds a point in B(x_a, r_a) whose orbit lands exactly on x_b.
WitnessReport witness_strong_transitivity(const PhasePoint& x_a, double r_a, const PhasePoint& x_b,
                                          const SpaceConfig& space);

/// Keeps the first n0+1 strategy terms of x and appends the alternating
/// (+N...+N), (-N...-N) block.
WitnessReport witness_regularity(const PhasePoint& x, double eps, const SpaceConfig& space);

/// Two distinct points whose orbits stay within eps/2 + 5 eps/N of each other.
WitnessReport expansivity_counterexample(double eps, std::size_t n_max, const SpaceConfig& space);

OrbitTrace continuity_probe(const PhasePoint& x, std::span<const double> scales, const SpaceConfig& space);

/// d(G^n x, G^n y) for n = 0..n_max.
OrbitTrace divergence_trace(const PhasePoint& x, const PhasePoint& y, std::size_t n_max, const SpaceConfig& space);

/// max_{n <= n_max} d(G^n x, G^n y) over the given candidates y.
double max_orbit_separation(const PhasePoint& x, std::span<const PhasePoint> candidates, std::size_t n_max,
                            const SpaceConfig& space);

/// Monte-Carlo lower bound on the sensitivity constant from `trials` random
/// perturbations inside B(x, r). Trial t draws from a generator seeded by
/// (seed, t) only, so the result does not depend on evaluation order.
double empirical_sensitivity_scan(const PhasePoint& x, double r, std::size_t trials, std::size_t n_max,
                                  std::uint64_t seed, const SpaceConfig& space);

/// The perturbed point used by trial `trial` of empirical_sensitivity_scan.
PhasePoint sensitivity_trial_point(const PhasePoint& x, double r, std::uint64_t seed, std::size_t trial,
                                   const SpaceConfig& space);

}  // namespace chaosmark
