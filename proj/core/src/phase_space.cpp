#include "chaosmark/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace chaosmark {

namespace {

// Closed-form summation needs 10^P - 1 to be representable with headroom.
constexpr std::size_t kMaxClosedFormPeriod = 128;

void require_same_dimension(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

VectorN::VectorN(std::vector<double> components) : components_(std::move(components)) {
    if (components_.empty()) {
        throw DimensionError("VectorN: dimension must be at least 1");
    }
    for (double c : components_) {
        if (!std::isfinite(c)) {
            throw PreconditionError("VectorN: components must be finite");
        }
    }
}

VectorN::VectorN(std::initializer_list<double> components)
    : VectorN(std::vector<double>(components)) {}

VectorN VectorN::zeros(std::size_t nv) { return VectorN(std::vector<double>(nv, 0.0)); }

VectorN VectorN::basis(std::size_t nv, std::size_t index, double scale) {
    if (index >= nv) {
        throw DimensionError("VectorN::basis: index out of range");
    }
    std::vector<double> c(nv, 0.0);
    c[index] = scale;
    return VectorN(std::move(c));
}

VectorN VectorN::with_component(std::size_t i, double value) const {
    if (i >= size()) {
        throw DimensionError("VectorN::with_component: index out of range");
    }
    std::vector<double> c = components_;
    c[i] = value;
    return VectorN(std::move(c));
}

VectorN& VectorN::operator+=(const VectorN& other) {
    require_same_dimension(size(), other.size(), "VectorN addition");
    for (std::size_t i = 0; i < components_.size(); ++i) {
        components_[i] += other.components_[i];
    }
    return *this;
}

VectorN operator-(const VectorN& lhs, const VectorN& rhs) {
    require_same_dimension(lhs.size(), rhs.size(), "VectorN subtraction");
    std::vector<double> c(lhs.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = lhs[i] - rhs[i];
    }
    return VectorN(std::move(c));
}

VectorN operator*(double scale, const VectorN& v) {
    std::vector<double> c(v.components().begin(), v.components().end());
    for (double& x : c) {
        x *= scale;
    }
    return VectorN(std::move(c));
}

double VectorN::max_abs() const noexcept {
    double m = 0.0;
    for (double c : components_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

double dot(const VectorN& a, const VectorN& b) {
    require_same_dimension(a.size(), b.size(), "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double squared_norm(const VectorN& v) { return dot(v, v); }

void SpaceConfig::validate() const {
    if (nv < 1) {
        throw PreconditionError("SpaceConfig: nv must be >= 1");
    }
    if (!(bound_n > 0.0) || !std::isfinite(bound_n)) {
        throw PreconditionError("SpaceConfig: bound_n must be a positive finite real");
    }
    if (series_truncation < 1) {
        throw PreconditionError("SpaceConfig: series_truncation must be >= 1");
    }
    if (!(tolerance >= 0.0)) {
        throw PreconditionError("SpaceConfig: tolerance must be non-negative");
    }
}

// --- Strategy ---------------------------------------------------------------

Strategy::Strategy(std::size_t nv, std::vector<VectorN> prefix, TailKind kind,
                   std::vector<VectorN> period)
    : nv_(nv),
      prefix_(std::move(prefix)),
      tail_kind_(kind),
      period_(std::move(period)),
      zero_(VectorN::zeros(nv)) {
    for (const auto& t : prefix_) {
        require_same_dimension(t.size(), nv_, "Strategy prefix term");
    }
    for (const auto& t : period_) {
        require_same_dimension(t.size(), nv_, "Strategy tail term");
    }
    if (tail_kind_ == TailKind::Periodic && period_.empty()) {
        throw PreconditionError("Strategy: periodic tail must be non-empty");
    }
}

Strategy Strategy::zero(std::size_t nv) { return Strategy(nv, {}, TailKind::Zero, {}); }

Strategy Strategy::with_zero_tail(std::vector<VectorN> prefix) {
    if (prefix.empty()) {
        throw PreconditionError("Strategy::with_zero_tail: use Strategy::zero for an empty prefix");
    }
    const std::size_t nv = prefix.front().size();
    return Strategy(nv, std::move(prefix), TailKind::Zero, {});
}

Strategy Strategy::with_periodic_tail(std::vector<VectorN> prefix, std::vector<VectorN> period) {
    if (period.empty()) {
        throw PreconditionError("Strategy: periodic tail must be non-empty");
    }
    const std::size_t nv = period.front().size();
    return Strategy(nv, std::move(prefix), TailKind::Periodic, std::move(period));
}

const VectorN& Strategy::term(std::size_t k) const {
    if (k < prefix_.size()) {
        return prefix_[k];
    }
    if (tail_kind_ == TailKind::Zero) {
        return zero_;
    }
    return period_[(k - prefix_.size()) % period_.size()];
}

Strategy Strategy::unrolled(std::size_t n) const {
    if (n <= prefix_.size()) {
        return *this;
    }
    std::vector<VectorN> prefix = prefix_;
    prefix.reserve(n);
    for (std::size_t k = prefix_.size(); k < n; ++k) {
        prefix.push_back(term(k));
    }
    // Rotate the block so that term(k) is unchanged past the new prefix.
    std::vector<VectorN> period;
    if (tail_kind_ == TailKind::Periodic) {
        period.reserve(period_.size());
        for (std::size_t j = 0; j < period_.size(); ++j) {
            period.push_back(term(n + j));
        }
    }
    return Strategy(nv_, std::move(prefix), tail_kind_, std::move(period));
}

Strategy Strategy::with_term(std::size_t k, VectorN value) const {
    require_same_dimension(value.size(), nv_, "Strategy::with_term");
    Strategy out = unrolled(k + 1);
    out.prefix_[k] = std::move(value);
    return out;
}

Strategy Strategy::dropped(std::size_t n) const {
    if (n <= prefix_.size()) {
        std::vector<VectorN> prefix(prefix_.begin() + static_cast<std::ptrdiff_t>(n), prefix_.end());
        return Strategy(nv_, std::move(prefix), tail_kind_, period_);
    }
    if (tail_kind_ == TailKind::Zero) {
        return Strategy::zero(nv_);
    }
    const std::size_t p = period_.size();
    const std::size_t offset = (n - prefix_.size()) % p;
    std::vector<VectorN> period;
    period.reserve(p);
    for (std::size_t j = 0; j < p; ++j) {
        period.push_back(period_[(offset + j) % p]);
    }
    return Strategy(nv_, {}, TailKind::Periodic, std::move(period));
}

Strategy Strategy::splice(const Strategy& head, std::size_t count, std::vector<VectorN> middle,
                          const Strategy& rest) {
    require_same_dimension(head.nv(), rest.nv(), "Strategy::splice");
    std::vector<VectorN> prefix;
    prefix.reserve(count + middle.size() + rest.prefix().size());
    for (std::size_t k = 0; k < count; ++k) {
        prefix.push_back(head.term(k));
    }
    for (auto& m : middle) {
        prefix.push_back(std::move(m));
    }
    prefix.insert(prefix.end(), rest.prefix().begin(), rest.prefix().end());
    return Strategy(head.nv(), std::move(prefix), rest.tail_kind(), rest.period());
}

void Strategy::check_bounds(double bound_n) const {
    auto check = [bound_n](const VectorN& v, const char* where, std::size_t index) {
        if (v.max_abs() > bound_n) {
            throw BoundError(std::string("Strategy ") + where + " term " + std::to_string(index) +
                             " has a component outside [-N, N] with N = " + std::to_string(bound_n));
        }
    };
    for (std::size_t k = 0; k < prefix_.size(); ++k) {
        check(prefix_[k], "prefix", k);
    }
    for (std::size_t k = 0; k < period_.size(); ++k) {
        check(period_[k], "tail", k);
    }
}

// --- PhasePoint and G -------------------------------------------------------

PhasePoint::PhasePoint(Strategy strategy, VectorN media)
    : strategy_(std::move(strategy)), media_(std::move(media)) {
    require_same_dimension(strategy_.nv(), media_.size(), "PhasePoint");
}

Strategy shift(const Strategy& s) { return s.dropped(1); }

const VectorN& initial(const Strategy& s) { return s.term(0); }

PhasePoint apply_g(const PhasePoint& x) {
    return PhasePoint(shift(x.strategy()), initial(x.strategy()) + x.media());
}

PhasePoint iterate_g(const PhasePoint& x, std::size_t n) {
    // Same summation order as n successive apply_g calls.
    VectorN media = x.media();
    for (std::size_t k = 0; k < n; ++k) {
        media += x.strategy().term(k);
    }
    return PhasePoint(x.strategy().dropped(n), std::move(media));
}

// --- Metric -----------------------------------------------------------------

double d_inf(const VectorN& a, const VectorN& b) {
    require_same_dimension(a.size(), b.size(), "d_inf");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

double decimal_weight(std::size_t k) { return std::pow(10.0, -static_cast<double>(k)); }

StrategyDistance d_strategy_detailed(const Strategy& s, const Strategy& t, const SpaceConfig& space) {
    require_same_dimension(s.nv(), t.nv(), "d_strategy");
    const double n = space.bound_n;
    const std::size_t head = std::max(s.prefix().size(), t.prefix().size());
    const std::size_t period = std::lcm(s.period_length(), t.period_length());

    if (period <= kMaxClosedFormPeriod) {
        // Past `head` both sequences repeat with period P, so
        //   sum_{k>=head} d_k 10^-k = 10^-head * sum_{j<P} d_{head+j} 10^(P-j) / (10^P - 1).
        // The result is assembled as a single quotient so that integral cases stay exact.
        double h = 0.0;
        for (std::size_t k = 0; k < head; ++k) {
            h += d_inf(s.term(k), t.term(k)) * decimal_weight(k);
        }
        double tail = 0.0;
        for (std::size_t j = 0; j < period; ++j) {
            tail += d_inf(s.term(head + j), t.term(head + j)) *
                    std::pow(10.0, static_cast<double>(period - j));
        }
        const double denom = std::pow(10.0, static_cast<double>(period)) - 1.0;
        const double value = 9.0 * (h * denom + decimal_weight(head) * tail) / (n * denom);
        return {value, 0.0, true};
    }

    const std::size_t k_max = std::max(space.series_truncation, head);
    double sum = 0.0;
    for (std::size_t k = 0; k < k_max; ++k) {
        sum += d_inf(s.term(k), t.term(k)) * decimal_weight(k);
    }
    // (9/N) * 2N * sum_{k>=K} 10^-k
    const double bound = 2.0 * std::pow(10.0, -static_cast<double>(k_max) + 1.0);
    return {9.0 * sum / n, bound, false};
}

double d_strategy(const Strategy& s, const Strategy& t, const SpaceConfig& space) {
    return d_strategy_detailed(s, t, space).value;
}

double d_phase(const PhasePoint& x, const PhasePoint& y, const SpaceConfig& space) {
    return d_inf(x.media(), y.media()) + d_strategy(x.strategy(), y.strategy(), space);
}

}  // namespace chaosmark
