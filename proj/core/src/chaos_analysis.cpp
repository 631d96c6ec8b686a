#include "chaosmark/chaos_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

namespace chaosmark {

namespace {

void require_space(const PhasePoint& x, const SpaceConfig& space) {
    space.validate();
    if (x.nv() != space.nv) {
        throw DimensionError("phase point dimension " + std::to_string(x.nv()) + " does not match nv = " +
                             std::to_string(space.nv));
    }
    x.strategy().check_bounds(space.bound_n);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t z = seed ^ (trial * 0x9E3779B97F4A7C15ULL + 0x7F4A7C159E3779B9ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

// Upper bound of (9/N) * sum_{k >= start} 2N / 10^k, i.e. 20 * 10^-start.
double signed_tail_bound(std::size_t start) { return 20.0 * decimal_weight(start); }

}  // namespace

std::string_view to_string(Property p) {
    switch (p) {
        case Property::Sensitivity: return "sensitivity";
        case Property::StrongTransitivity: return "strong_transitivity";
        case Property::Regularity: return "regularity";
        case Property::NonExpansivity: return "non_expansivity";
        case Property::Continuity: return "continuity";
    }
    return "unknown";
}

std::size_t radius_exponent(double r) {
    if (!(r > 0.0)) {
        throw PreconditionError("radius must be positive");
    }
    std::size_t k = 0;
    while (decimal_weight(k) > r) {
        ++k;
    }
    return k;
}

WitnessReport witness_sensitivity(const PhasePoint& x, double r, const SpaceConfig& space) {
    if (!(r > 0.0)) throw PreconditionError("witness_sensitivity: r must be positive");
    require_space(x, space);
    const double n = space.bound_n;
    const std::size_t k0 = radius_exponent(r);
    const std::size_t index = k0 + 1;

    const double current = x.strategy().term(index)[0];
    double replacement = current < n / 2.0 ? n : 0.0;
    // A negative component jumping to N would move by more than N and could
    // leave the ball; shift it by exactly N instead.
    if (std::abs(replacement - current) > n) {
        replacement = current + n;
    }
    const VectorN changed = x.strategy().term(index).with_component(0, replacement);
    PhasePoint perturbed(x.strategy().with_term(index, changed), x.media());

    const std::size_t steps = k0 + 2;
    const double start_distance = d_phase(x, perturbed, space);
    const PhasePoint fx = iterate_g(x, steps);
    const PhasePoint fy = iterate_g(perturbed, steps);
    const double separation = d_phase(fx, fy, space);

    WitnessReport report;
    report.property = Property::Sensitivity;
    report.tolerance = space.tolerance;
    report.inputs = {{"r", r}, {"bound_n", n}, {"nv", static_cast<double>(space.nv)}};
    report.iterations_used = steps;
    report.measured = {
        {"k0", static_cast<double>(k0)},
        {"perturbation_distance", start_distance},
        {"separation", separation},
        {"media_separation", d_inf(fx.media(), fy.media())},
        {"sensitivity_constant", n / 2.0},
        {"original_component", current},
        {"replaced_component", replacement},
    };
    const bool inside = start_distance <= r;
    const bool separated = separation >= n / 2.0 - space.tolerance;
    report.flags = {{"inside_ball", inside}, {"separated", separated}};
    report.verdict = inside && separated;
    report.constructed.push_back(std::move(perturbed));
    return report;
}

WitnessReport witness_strong_transitivity(const PhasePoint& x_a, double r_a, const PhasePoint& x_b,
                                          const SpaceConfig& space) {
    if (!(r_a > 0.0)) throw PreconditionError("witness_strong_transitivity: r_a must be positive");
    require_space(x_a, space);
    require_space(x_b, space);
    const double n = space.bound_n;
    const std::size_t nv = space.nv;

    // Smallest prefix length whose worst-case tail distance stays inside the ball.
    std::size_t k0 = 0;
    while (signed_tail_bound(k0) >= r_a) {
        ++k0;
    }

    const VectorN reached = iterate_g(x_a, k0).media();
    std::vector<VectorN> corrections;
    corrections.reserve(nv);
    std::size_t split_terms = 0;
    for (std::size_t j = 0; j < nv; ++j) {
        const double delta = x_b.media()[j] - reached[j];
        const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(delta) / n)));
        split_terms += pieces - 1;
        const double piece = delta / static_cast<double>(pieces);
        for (std::size_t p = 0; p < pieces; ++p) {
            corrections.push_back(VectorN::basis(nv, j, piece));
        }
    }
    const std::size_t correction_terms = corrections.size();
    PhasePoint built(Strategy::splice(x_a.strategy(), k0, std::move(corrections), x_b.strategy()),
                     x_a.media());

    const std::size_t steps = k0 + correction_terms;
    const double ball_distance = d_phase(built, x_a, space);
    const double final_distance = d_phase(iterate_g(built, steps), x_b, space);

    WitnessReport report;
    report.property = Property::StrongTransitivity;
    report.tolerance = space.tolerance;
    report.inputs = {{"r_a", r_a}, {"bound_n", n}, {"nv", static_cast<double>(nv)}};
    report.iterations_used = steps;
    report.measured = {
        {"k0", static_cast<double>(k0)},
        {"k0_radius", static_cast<double>(radius_exponent(r_a))},
        {"ball_distance", ball_distance},
        {"final_distance", final_distance},
        {"correction_terms", static_cast<double>(correction_terms)},
        {"split_terms", static_cast<double>(split_terms)},
    };
    const bool inside = ball_distance < r_a;
    const bool hit = final_distance <= space.tolerance;
    report.flags = {{"inside_ball", inside}, {"exact_hit", hit}, {"split", split_terms > 0}};
    report.verdict = inside && hit;
    report.constructed.push_back(std::move(built));
    return report;
}

WitnessReport witness_regularity(const PhasePoint& x, double eps, const SpaceConfig& space) {
    if (!(eps > 0.0)) throw PreconditionError("witness_regularity: eps must be positive");
    require_space(x, space);
    const double n = space.bound_n;
    const std::size_t nv = space.nv;

    // Terms past n0 differ by at most 2N, so d_s <= 2 * 10^-n0.
    std::size_t n0 = 0;
    while (2.0 * decimal_weight(n0) >= eps) {
        ++n0;
    }

    std::vector<VectorN> kept;
    kept.reserve(n0 + 1);
    for (std::size_t k = 0; k <= n0; ++k) {
        kept.push_back(x.strategy().term(k));
    }
    const VectorN up(std::vector<double>(nv, n));
    const VectorN down(std::vector<double>(nv, -n));
    Strategy strategy = Strategy::with_periodic_tail(std::move(kept), {up, down});

    VectorN period_sum = VectorN::zeros(nv);
    for (const auto& t : strategy.period()) {
        period_sum += t;
    }
    PhasePoint built(std::move(strategy), x.media());
    const double distance = d_phase(built, x, space);
    const double sum_norm = period_sum.max_abs();

    WitnessReport report;
    report.property = Property::Regularity;
    report.tolerance = space.tolerance;
    report.inputs = {{"eps", eps}, {"bound_n", n}, {"nv", static_cast<double>(nv)}};
    report.iterations_used = n0 + 1;
    report.measured = {
        {"n0", static_cast<double>(n0)},
        {"distance", distance},
        {"period_length", 2.0},
        {"period_sum_norm", sum_norm},
    };
    const bool close = distance < eps;
    const bool zero_sum = sum_norm == 0.0;
    report.flags = {{"within_eps", close}, {"zero_period_sum", zero_sum}};
    report.verdict = close && zero_sum;
    report.constructed.push_back(std::move(built));
    return report;
}

WitnessReport expansivity_counterexample(double eps, std::size_t n_max, const SpaceConfig& space) {
    if (!(eps > 0.0)) throw PreconditionError("expansivity_counterexample: eps must be positive");
    space.validate();
    const double n = space.bound_n;
    if (eps / 2.0 > n) {
        throw BoundError("expansivity_counterexample: eps/2 exceeds the bound N");
    }
    const std::size_t nv = space.nv;
    PhasePoint x(Strategy::zero(nv), VectorN::zeros(nv));
    PhasePoint y(Strategy::with_periodic_tail({}, {VectorN::basis(nv, 0, eps / 2.0),
                                                   VectorN::basis(nv, 0, -eps / 2.0)}),
                 VectorN::zeros(nv));

    double sup = 0.0;
    std::size_t sup_step = 0;
    PhasePoint fx = x;
    PhasePoint fy = y;
    for (std::size_t step = 0;; ++step) {
        const double d = d_phase(fx, fy, space);
        if (d > sup) {
            sup = d;
            sup_step = step;
        }
        if (step == n_max) break;
        fx = apply_g(fx);
        fy = apply_g(fy);
    }

    const double derived_bound = eps / 2.0 + 5.0 * eps / n;
    WitnessReport report;
    report.property = Property::NonExpansivity;
    report.tolerance = space.tolerance;
    report.inputs = {{"eps", eps}, {"n_max", static_cast<double>(n_max)}, {"bound_n", n},
                     {"nv", static_cast<double>(nv)}};
    report.iterations_used = n_max;
    report.measured = {
        {"sup_distance", sup},
        {"sup_step", static_cast<double>(sup_step)},
        {"derived_bound", derived_bound},
        {"eps_bound", eps},
        {"initial_distance", d_phase(x, y, space)},
    };
    const bool eps_holds = sup <= eps + space.tolerance;
    report.flags = {{"eps_bound_holds", eps_holds}, {"bound_discrepancy", !eps_holds}};
    report.verdict = sup <= derived_bound + space.tolerance;
    report.constructed.push_back(std::move(x));
    report.constructed.push_back(std::move(y));
    return report;
}

OrbitTrace continuity_probe(const PhasePoint& x, std::span<const double> scales, const SpaceConfig& space) {
    require_space(x, space);
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] >= 0.0) || (i > 0 && !(scales[i] < scales[i - 1]))) {
            throw PreconditionError("continuity_probe: scales must be non-negative and strictly decreasing");
        }
    }
    const PhasePoint gx = apply_g(x);
    OrbitTrace trace;
    trace.points.reserve(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const double s = scales[i];
        OrbitRow row;
        row.step = i;
        const VectorN& first = x.strategy().term(0);
        if (std::abs(first[0] + s) > space.bound_n) {
            row.skipped = true;
            trace.points.push_back(row);
            continue;
        }
        PhasePoint xs(x.strategy().with_term(0, first.with_component(0, first[0] + s)),
                      x.media().with_component(0, x.media()[0] + s));
        const PhasePoint gxs = apply_g(xs);
        row.input_distance = d_phase(xs, x, space);
        row.distance = d_phase(gxs, gx, space);
        row.media_distance = d_inf(gxs.media(), gx.media());
        trace.points.push_back(row);
    }
    return trace;
}

OrbitTrace divergence_trace(const PhasePoint& x, const PhasePoint& y, std::size_t n_max, const SpaceConfig& space) {
    if (x.nv() != y.nv()) throw DimensionError("divergence_trace: dimension mismatch");
    OrbitTrace trace;
    trace.points.reserve(n_max + 1);
    PhasePoint fx = x;
    PhasePoint fy = y;
    for (std::size_t step = 0;; ++step) {
        OrbitRow row;
        row.step = step;
        row.distance = d_phase(fx, fy, space);
        row.media_distance = d_inf(fx.media(), fy.media());
        trace.points.push_back(row);
        if (step == n_max) break;
        fx = apply_g(fx);
        fy = apply_g(fy);
    }
    return trace;
}

double max_orbit_separation(const PhasePoint& x, std::span<const PhasePoint> candidates, std::size_t n_max,
                            const SpaceConfig& space) {
    double best = 0.0;
    for (const auto& y : candidates) {
        for (const auto& row : divergence_trace(x, y, n_max, space).points) {
            best = std::max(best, row.distance);
        }
    }
    return best;
}

PhasePoint sensitivity_trial_point(const PhasePoint& x, double r, std::uint64_t seed, std::size_t trial,
                                   const SpaceConfig& space) {
    const double n = space.bound_n;
    const std::size_t nv = x.nv();
    std::mt19937_64 gen(mix_seed(seed, trial));

    // Half the radius goes to the media, half to a single strategy component.
    std::vector<double> media(x.media().components().begin(), x.media().components().end());
    const double media_budget = 0.5 * r * (1.0 - 1e-12);
    for (double& c : media) {
        c += (2.0 * unit_uniform(gen) - 1.0) * media_budget;
    }

    const std::size_t k0 = radius_exponent(r);
    const std::size_t index = k0 + 1 + static_cast<std::size_t>(gen() % 3);
    const auto component = static_cast<std::size_t>(gen() % nv);
    const VectorN& term = x.strategy().term(index);
    const double target = (2.0 * unit_uniform(gen) - 1.0) * n;
    double delta = target - term[component];
    // (9/N) |delta| / 10^index <= r/2
    const double limit = 0.5 * r * (1.0 - 1e-12) * n / (9.0 * decimal_weight(index));
    if (std::abs(delta) > limit) {
        delta = delta > 0.0 ? limit : -limit;
    }
    const double value = std::clamp(term[component] + delta, -n, n);
    return PhasePoint(x.strategy().with_term(index, term.with_component(component, value)),
                      VectorN(std::move(media)));
}

double empirical_sensitivity_scan(const PhasePoint& x, double r, std::size_t trials, std::size_t n_max,
                                  std::uint64_t seed, const SpaceConfig& space) {
    if (trials < 1) throw PreconditionError("empirical_sensitivity_scan: trials must be >= 1");
    if (!(r > 0.0)) throw PreconditionError("empirical_sensitivity_scan: r must be positive");
    require_space(x, space);
    double best = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const PhasePoint y = sensitivity_trial_point(x, r, seed, t, space);
        best = std::max(best, max_orbit_separation(x, std::span(&y, 1), n_max, space));
    }
    return best;
}

}  // namespace chaosmark
