#pragma once

// Phase space of the spread-spectrum iteration.
//
// A point is a pair (S, E): an infinite sequence S of strategy terms in
// [-N, N]^Nv and a media vector E in R^Nv. The map
//
//     G(S, E) = (shift(S), S^0 + E)
//
// consumes one strategy term per step, and the metric
//
//     d((S,E), (T,F)) = d_inf(E, F) + (9/N) * sum_k d_inf(S^k, T^k) / 10^k
//
// makes nearby points those that agree on the media and on a long prefix of
// their strategies. Strategies are stored as a finite prefix followed by a
// Zero or Periodic tail, which is enough for every point the analysis builds
// and lets the series be summed in closed form.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "chaosmark/error.hpp"

namespace chaosmark {

/// A point of R^Nv. Always non-empty with finite components.
class VectorN {
public:
    explicit VectorN(std::vector<double> components);
    VectorN(std::initializer_list<double> components);

    static VectorN zeros(std::size_t nv);
    /// Standard basis vector e_index scaled by `scale`.
    static VectorN basis(std::size_t nv, std::size_t index, double scale = 1.0);

    std::size_t size() const noexcept { return components_.size(); }
    double operator[](std::size_t i) const { return components_[i]; }
    std::span<const double> components() const noexcept { return components_; }

    /// Copy with component `i` replaced.
    VectorN with_component(std::size_t i, double value) const;

    VectorN& operator+=(const VectorN& other);
    friend VectorN operator+(VectorN lhs, const VectorN& rhs) { return lhs += rhs; }
    friend VectorN operator-(const VectorN& lhs, const VectorN& rhs);
    friend VectorN operator*(double scale, const VectorN& v);
    friend bool operator==(const VectorN&, const VectorN&) = default;

    double max_abs() const noexcept;

private:
    std::vector<double> components_;
};

double dot(const VectorN& a, const VectorN& b);
double squared_norm(const VectorN& v);

struct SpaceConfig {
    std::size_t nv = 1;
    double bound_n = 1.0;
    std::size_t series_truncation = 64;
    /// Absolute tolerance used when comparing metric terms.
    double tolerance = 1e-9;

    void validate() const;
};

enum class TailKind { Zero, Periodic };

/// Infinite strategy: prefix terms, then either all-zero terms or a
/// repeating block.
class Strategy {
public:
    /// All-zero strategy on R^nv.
    static Strategy zero(std::size_t nv);
    static Strategy with_zero_tail(std::vector<VectorN> prefix);
    static Strategy with_periodic_tail(std::vector<VectorN> prefix, std::vector<VectorN> period);

    std::size_t nv() const noexcept { return nv_; }
    const std::vector<VectorN>& prefix() const noexcept { return prefix_; }
    TailKind tail_kind() const noexcept { return tail_kind_; }
    /// Repeating block; empty for a Zero tail.
    const std::vector<VectorN>& period() const noexcept { return period_; }
    /// Length of the repeating block, 1 for a Zero tail.
    std::size_t period_length() const noexcept { return tail_kind_ == TailKind::Zero ? 1 : period_.size(); }

    const VectorN& term(std::size_t k) const;

    /// The same sequence with the first `n` terms materialized in the prefix.
    Strategy unrolled(std::size_t n) const;
    /// The same sequence with term `k` replaced by `value`.
    Strategy with_term(std::size_t k, VectorN value) const;
    /// The sequence (term(n), term(n+1), ...).
    Strategy dropped(std::size_t n) const;
    /// First `count` terms followed by `rest`.
    static Strategy splice(const Strategy& head, std::size_t count, std::vector<VectorN> middle,
                           const Strategy& rest);

    /// Throws BoundError if any term component leaves [-bound_n, bound_n].
    void check_bounds(double bound_n) const;

private:
    Strategy(std::size_t nv, std::vector<VectorN> prefix, TailKind kind, std::vector<VectorN> period);

    std::size_t nv_;
    std::vector<VectorN> prefix_;
    TailKind tail_kind_;
    std::vector<VectorN> period_;
    VectorN zero_;
};

/// (strategy, media) pair; dimensions agree by construction.
class PhasePoint {
public:
    PhasePoint(Strategy strategy, VectorN media);

    const Strategy& strategy() const noexcept { return strategy_; }
    const VectorN& media() const noexcept { return media_; }
    std::size_t nv() const noexcept { return media_.size(); }

private:
    Strategy strategy_;
    VectorN media_;
};

Strategy shift(const Strategy& s);
const VectorN& initial(const Strategy& s);

PhasePoint apply_g(const PhasePoint& x);
/// n-fold composition of apply_g.
PhasePoint iterate_g(const PhasePoint& x, std::size_t n);

double d_inf(const VectorN& a, const VectorN& b);

struct StrategyDistance {
    double value = 0.0;
    /// Upper bound on the omitted series tail; 0 when summed in closed form.
    double tail_bound = 0.0;
    bool exact = true;
};

/// Distance between strategies with the truncation bookkeeping exposed.
StrategyDistance d_strategy_detailed(const Strategy& s, const Strategy& t, const SpaceConfig& space);
double d_strategy(const Strategy& s, const Strategy& t, const SpaceConfig& space);
double d_phase(const PhasePoint& x, const PhasePoint& y, const SpaceConfig& space);

/// 10^-k for k >= 0.
double decimal_weight(std::size_t k);

}  // namespace chaosmark
