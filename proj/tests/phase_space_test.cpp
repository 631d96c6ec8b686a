#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "chaosmark/phase_space.hpp"
#include "test_support.hpp"

using namespace chaosmark;
using chaosmark::testing::Rng;

namespace {

SpaceConfig space_for(std::size_t nv, double n) { return SpaceConfig{nv, n, 64, 1e-9}; }

}  // namespace

TEST(VectorN, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(VectorN(std::vector<double>{}), DimensionError);
    EXPECT_THROW(VectorN({1.0, std::numeric_limits<double>::quiet_NaN()}), PreconditionError);
    EXPECT_THROW(VectorN({std::numeric_limits<double>::infinity()}), PreconditionError);
    EXPECT_THROW(VectorN({1.0}) + VectorN({1.0, 2.0}), DimensionError);
}

TEST(Strategy, TermIsTotal) {
    const VectorN a{1.0, 2.0}, b{3.0, 4.0}, p{5.0, 6.0}, q{7.0, 8.0};
    const Strategy s = Strategy::with_periodic_tail({a, b}, {p, q});
    EXPECT_EQ(s.term(0), a);
    EXPECT_EQ(s.term(1), b);
    EXPECT_EQ(s.term(2), p);
    EXPECT_EQ(s.term(3), q);
    EXPECT_EQ(s.term(10), p);
    EXPECT_EQ(Strategy::with_zero_tail({a}).term(7), VectorN::zeros(2));
    EXPECT_THROW(Strategy::with_periodic_tail({a}, {}), PreconditionError);
    EXPECT_THROW(Strategy::with_periodic_tail({a}, {VectorN{1.0}}), DimensionError);
}

TEST(Strategy, CheckBounds) {
    const Strategy s = Strategy::with_periodic_tail({VectorN{1.0, -2.0}}, {VectorN{0.5, 3.0}});
    EXPECT_NO_THROW(s.check_bounds(3.0));
    EXPECT_THROW(s.check_bounds(2.5), BoundError);
}

TEST(Shift, DropsFirstPrefixTerm) {
    const VectorN a{1.0}, b{2.0};
    const Strategy s = shift(Strategy::with_zero_tail({a, b}));
    ASSERT_EQ(s.prefix().size(), 1U);
    EXPECT_EQ(s.prefix()[0], b);
    EXPECT_EQ(s.tail_kind(), TailKind::Zero);
}

TEST(Shift, RotatesPeriodicTail) {
    const VectorN p{1.0}, q{2.0};
    const Strategy s = shift(Strategy::with_periodic_tail({}, {p, q}));
    EXPECT_TRUE(s.prefix().empty());
    ASSERT_EQ(s.period().size(), 2U);
    EXPECT_EQ(s.period()[0], q);
    EXPECT_EQ(s.period()[1], p);
}

TEST(Shift, ExhaustedPrefixLeavesZeroSequence) {
    std::vector<VectorN> terms;
    for (int i = 0; i < 5; ++i) terms.push_back(VectorN{1.0 + i, -1.0});
    Strategy s = Strategy::with_zero_tail(terms);
    for (int i = 0; i < 5; ++i) s = shift(s);
    EXPECT_TRUE(s.prefix().empty());
    for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(s.term(k), VectorN::zeros(2));
}

TEST(Initial, FirstTerm) {
    const VectorN a{1.0}, b{2.0}, p{9.0};
    EXPECT_EQ(initial(Strategy::with_zero_tail({a, b})), a);
    EXPECT_EQ(initial(Strategy::with_periodic_tail({}, {p})), p);
    EXPECT_EQ(initial(Strategy::zero(3)), VectorN::zeros(3));
}

TEST(ApplyG, IdentityUnderZeroStrategy) {
    const VectorN x{1.5, -2.0, 3.0};
    const PhasePoint p(Strategy::zero(3), x);
    const PhasePoint g = apply_g(p);
    EXPECT_EQ(g.media(), x);
    EXPECT_EQ(g.strategy().term(0), VectorN::zeros(3));
}

TEST(ApplyG, SingleStepAddition) {
    const VectorN s0{1.0, 2.0}, e{10.0, 20.0};
    const PhasePoint g = apply_g(PhasePoint(Strategy::with_zero_tail({s0}), e));
    EXPECT_EQ(g.media(), (VectorN{11.0, 22.0}));
    EXPECT_TRUE(g.strategy().prefix().empty());
    EXPECT_EQ(g.strategy().tail_kind(), TailKind::Zero);
}

TEST(ApplyG, MalformedPointRejected) {
    EXPECT_THROW(PhasePoint(Strategy::zero(2), VectorN{1.0, 2.0, 3.0}), DimensionError);
}

TEST(IterateG, ZeroAndOneStep) {
    Rng rng(3);
    const PhasePoint x = rng.point(3, 5.0);
    const PhasePoint x0 = iterate_g(x, 0);
    EXPECT_EQ(x0.media(), x.media());
    EXPECT_EQ(d_phase(x0, x, space_for(3, 5.0)), 0.0);
    const PhasePoint a = iterate_g(x, 1);
    const PhasePoint b = apply_g(x);
    EXPECT_EQ(a.media(), b.media());
    EXPECT_EQ(d_strategy(a.strategy(), b.strategy(), space_for(3, 5.0)), 0.0);
}

TEST(IterateG, MatchesRepeatedApplyAndAccumulationOracle) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const PhasePoint x = rng.point(4, 7.0);
        const std::size_t n = rng.index(25);
        PhasePoint step = x;
        for (std::size_t i = 0; i < n; ++i) step = apply_g(step);
        const PhasePoint direct = iterate_g(x, n);
        EXPECT_EQ(step.media(), direct.media());
        const auto oracle = chaosmark::testing::accumulated_media(x, n);
        double scale = x.media().max_abs();
        for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, x.strategy().term(k).max_abs());
        const double tol = (n + 1) * 4 * std::numeric_limits<double>::epsilon() * scale;
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(direct.media()[i], oracle[i], tol);
    }
}

TEST(DInf, Examples) {
    const VectorN a{0.0, 0.0}, b{3.0, -4.0};
    EXPECT_EQ(d_inf(a, a), 0.0);
    EXPECT_EQ(d_inf(a, b), 4.0);
    EXPECT_THROW(d_inf(a, VectorN{1.0}), DimensionError);
}

TEST(DInf, SymmetricAgainstComponentLoop) {
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        const VectorN a = rng.vector(6, 100.0), b = rng.vector(6, 100.0);
        EXPECT_EQ(d_inf(a, b), d_inf(b, a));
        EXPECT_EQ(d_inf(a, b), chaosmark::testing::linf_oracle(a.components(), b.components()));
    }
}

TEST(DStrategy, SelfDistanceIsZero) {
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const Strategy s = rng.strategy(3, 4.0);
        EXPECT_EQ(d_strategy(s, s, space_for(3, 4.0)), 0.0);
    }
}

TEST(DStrategy, SingleTermDifferenceIsNine) {
    const double n = 10.0;
    const auto space = space_for(2, n);
    const Strategy s = Strategy::with_zero_tail({VectorN{n, 0.0}});
    const Strategy t = Strategy::with_zero_tail({VectorN{0.0, 0.0}});
    const auto detailed = d_strategy_detailed(s, t, space);
    EXPECT_TRUE(detailed.exact);
    EXPECT_EQ(detailed.value, 9.0);
    EXPECT_NEAR(chaosmark::testing::truncated_strategy_distance(s, t, n, 64), 9.0, 1e-12);
}

TEST(DStrategy, AlternatingTailAgainstZeroIsTen) {
    const double n = 10.0;
    const auto space = space_for(3, n);
    const Strategy s = Strategy::zero(3);
    const Strategy t = Strategy::with_periodic_tail(
        {}, {VectorN(std::vector<double>(3, n)), VectorN(std::vector<double>(3, -n))});
    const auto detailed = d_strategy_detailed(s, t, space);
    EXPECT_TRUE(detailed.exact);
    EXPECT_EQ(detailed.value, 10.0);
    EXPECT_EQ(d_strategy(t, s, space), 10.0);
    // Truncation oracle: the omitted tail is below 2e-63, so it agrees to rounding.
    EXPECT_NEAR(chaosmark::testing::truncated_strategy_distance(s, t, n, 64), 10.0, 1e-12);
}

TEST(DStrategy, ClosedFormAgreesWithTruncatedOracle) {
    Rng rng(21);
    for (int i = 0; i < 2000; ++i) {
        const double n = rng.uniform(0.5, 50.0);
        const Strategy s = rng.strategy(3, n), t = rng.strategy(3, n);
        const double exact = d_strategy(s, t, space_for(3, n));
        const double oracle = chaosmark::testing::truncated_strategy_distance(s, t, n, 80);
        EXPECT_NEAR(exact, oracle, 1e-12 * std::max(1.0, oracle));
    }
}

TEST(DStrategy, FallsBackToTruncationForLongPeriods) {
    const double n = 5.0;
    std::vector<VectorN> p1, p2;
    for (int i = 0; i < 127; ++i) p1.push_back(VectorN{std::fmod(i * 0.37, n)});
    for (int i = 0; i < 128; ++i) p2.push_back(VectorN{-std::fmod(i * 0.11, n)});
    const Strategy s = Strategy::with_periodic_tail({}, p1), t = Strategy::with_periodic_tail({}, p2);
    const SpaceConfig space{1, n, 40, 1e-9};
    const auto d = d_strategy_detailed(s, t, space);
    EXPECT_FALSE(d.exact);
    EXPECT_DOUBLE_EQ(d.tail_bound, 2e-39);
    EXPECT_NEAR(d.value, chaosmark::testing::truncated_strategy_distance(s, t, n, 40), 1e-13);
}

TEST(DPhase, Examples) {
    Rng rng(4);
    const auto space = space_for(3, 6.0);
    const PhasePoint x = rng.point(3, 6.0);
    EXPECT_EQ(d_phase(x, x, space), 0.0);
    const PhasePoint y(x.strategy(), x.media() + VectorN{1.0, 0.0, 0.0});
    EXPECT_NEAR(d_phase(x, y, space), 1.0, 1e-12);
}

TEST(DPhase, MetricAxiomsOnRandomTriples) {
    Rng rng(17);
    for (int i = 0; i < 3000; ++i) {
        const std::size_t nv = 1 + rng.index(4);
        const double n = rng.uniform(1.0, 20.0);
        const auto space = space_for(nv, n);
        const PhasePoint a = rng.point(nv, n), b = rng.point(nv, n), c = rng.point(nv, n);
        const double ab = d_phase(a, b, space), bc = d_phase(b, c, space), ac = d_phase(a, c, space);
        EXPECT_GE(ab, 0.0);
        EXPECT_EQ(ab, d_phase(b, a, space));
        EXPECT_LE(ac, ab + bc + 1e-12);
    }
}

TEST(Representation, UnrollingPreservesEverything) {
    Rng rng(33);
    for (int i = 0; i < 300; ++i) {
        const double n = 8.0;
        const auto space = space_for(3, n);
        const PhasePoint x = rng.point(3, n);
        const std::size_t extra = rng.index(7);
        const PhasePoint xu(x.strategy().unrolled(x.strategy().prefix().size() + extra), x.media());
        for (std::size_t k = 0; k < 20; ++k) EXPECT_EQ(x.strategy().term(k), xu.strategy().term(k));
        EXPECT_NEAR(d_phase(x, xu, space), 0.0, 1e-12);
        const PhasePoint other = rng.point(3, n);
        EXPECT_NEAR(d_phase(x, other, space), d_phase(xu, other, space), 1e-12);
        EXPECT_EQ(initial(x.strategy()), initial(xu.strategy()));
        const PhasePoint gx = apply_g(x), gxu = apply_g(xu);
        EXPECT_EQ(gx.media(), gxu.media());
        EXPECT_NEAR(d_strategy(gx.strategy(), gxu.strategy(), space), 0.0, 1e-12);
    }
}

TEST(Continuity, ImageDistanceBoundedByTwiceInputDistance) {
    // Perturbations of equal size on the media and on the first strategy term.
    Rng rng(41);
    for (int i = 0; i < 500; ++i) {
        const double n = rng.uniform(1.0, 20.0);
        const auto space = space_for(2, n);
        const PhasePoint x = rng.point(2, 0.5 * n);
        const double scale = rng.log_uniform(1e-9, 1e-1);
        const std::size_t j = rng.index(2);
        const double sign = rng.index(2) == 0 ? 1.0 : -1.0;
        const VectorN& t0 = x.strategy().term(0);
        const std::size_t jm = rng.index(2);
        const PhasePoint xn(x.strategy().with_term(0, t0.with_component(j, t0[j] + sign * scale)),
                            x.media().with_component(jm, x.media()[jm] + scale));
        const double in = d_phase(xn, x, space);
        const double out = d_phase(apply_g(xn), apply_g(x), space);
        EXPECT_LE(out, 2.0 * in + 1e-12);
    }
}

TEST(SpaceConfig, Validation) {
    EXPECT_THROW((SpaceConfig{0, 1.0, 64, 1e-9}.validate()), PreconditionError);
    EXPECT_THROW((SpaceConfig{1, 0.0, 64, 1e-9}.validate()), PreconditionError);
    EXPECT_THROW((SpaceConfig{1, 1.0, 0, 1e-9}.validate()), PreconditionError);
    EXPECT_NO_THROW((SpaceConfig{1, 1.0, 64, 1e-9}.validate()));
}
