#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "chaosmark/tm_encoding.hpp"
#include "test_support.hpp"

using namespace chaosmark;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(CHAOSMARK_SAMPLE_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TuringMachine right_mover() {
    return TuringMachine({"go"}, {'x', '#'}, '#', {{{"go", '#'}, {"go", 'x', Move::Right}}, {{"go", 'x'}, {"go", 'x', Move::Right}}},
                         "go", {});
}

}  // namespace

TEST(TmStep, UnaryIncrementHandSimulation) {
    const TuringMachine m = parse_machine(slurp("unary_increment.tm"));
    TmConfiguration c = initial_configuration(m, "11");
    StepOutcome s1 = tm_step(m, c);
    EXPECT_EQ(s1.status, StepStatus::Running);
    EXPECT_EQ(s1.config.head(), 1);
    StepOutcome s2 = tm_step(m, s1.config);
    EXPECT_EQ(s2.config.head(), 2);
    StepOutcome s3 = tm_step(m, s2.config);
    EXPECT_EQ(s3.status, StepStatus::Halted);
    EXPECT_EQ(s3.config.trimmed().first, "111");
    EXPECT_EQ(s3.config.state(), "done");
    EXPECT_EQ(s3.config.head(), 3);
}

TEST(TmStep, RightMoverAdvancesHead) {
    const TuringMachine m = right_mover();
    TmConfiguration c = initial_configuration(m, "");
    for (int i = 1; i <= 20; ++i) {
        c = tm_step(m, c).config;
        EXPECT_EQ(c.head(), i);
    }
    EXPECT_EQ(c.trimmed().first, std::string(20, 'x'));
}

TEST(TmStep, HaltingStateIsPrecondition) {
    const TuringMachine m = parse_machine(slurp("unary_increment.tm"));
    const TmConfiguration halted("11", 0, "done");
    EXPECT_THROW(tm_step(m, halted), PreconditionError);
}

TEST(TmStep, UndefinedTransitionIsDistinctHalt) {
    const TuringMachine m({"q", "h"}, {'0', '#'}, '#', {{{"q", '0'}, {"q", '0', Move::Left}}}, "q", {"h"});
    const TmConfiguration c = initial_configuration(m, "0", 0);
    const StepOutcome out = tm_step(m, c);
    EXPECT_EQ(out.status, StepStatus::Running);
    EXPECT_EQ(out.config.head(), -1);
    const StepOutcome stuck = tm_step(m, out.config);
    EXPECT_EQ(stuck.status, StepStatus::NoTransition);
    EXPECT_EQ(stuck.config, out.config);
    const RunResult r = tm_run(m, c, 10);
    EXPECT_TRUE(r.halted);
    EXPECT_EQ(r.status, StepStatus::NoTransition);
    EXPECT_EQ(r.steps, 1U);
}

TEST(TmStep, LeftMovesExtendTapeWithBlanks) {
    const TuringMachine m({"q"}, {'a', '#'}, '#', {{{"q", '#'}, {"q", 'a', Move::Left}}}, "q", {});
    TmConfiguration c = initial_configuration(m, "", 0);
    for (int i = 0; i < 4; ++i) c = tm_step(m, c).config;
    EXPECT_EQ(c.head(), -4);
    const auto [tape, origin] = c.trimmed();
    EXPECT_EQ(tape, "aaaa");
    EXPECT_EQ(origin, -3);
    EXPECT_EQ(c.read(5), '#');
}

TEST(TmRun, HaltingMachine) {
    const TuringMachine m = parse_machine(slurp("unary_increment.tm"));
    const RunResult r = tm_run(m, initial_configuration(m, "11"), 100);
    EXPECT_TRUE(r.halted);
    EXPECT_EQ(r.status, StepStatus::Halted);
    EXPECT_EQ(r.steps, 3U);
    EXPECT_EQ(r.config.trimmed().first, "111");
}

TEST(TmRun, BudgetExhausted) {
    const TuringMachine m = right_mover();
    const RunResult r = tm_run(m, initial_configuration(m, ""), 37);
    EXPECT_FALSE(r.halted);
    EXPECT_EQ(r.steps, 37U);
    EXPECT_EQ(r.config.head(), 37);
    EXPECT_THROW(tm_run(m, initial_configuration(m, ""), 0), PreconditionError);
}

TEST(TmRun, SingleStepBudgetEqualsStep) {
    const TuringMachine m = parse_machine(slurp("bouncer.tm"));
    const TmConfiguration c = initial_configuration(m, "ab");
    EXPECT_EQ(tm_run(m, c, 1).config, tm_step(m, c).config);
}

TEST(TmRun, OrbitComposition) {
    const TuringMachine m = parse_machine(slurp("bouncer.tm"));
    const TmConfiguration c = initial_configuration(m, "abba");
    chaosmark::testing::Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        const std::size_t a = 1 + rng.index(300), b = 1 + rng.index(300);
        const RunResult whole = tm_run(m, c, a + b);
        const RunResult first = tm_run(m, c, a);
        ASSERT_FALSE(first.halted);
        const RunResult second = tm_run(m, first.config, b);
        EXPECT_EQ(whole.config, second.config);
        EXPECT_EQ(whole.steps, first.steps + second.steps);
    }
}

TEST(TmRun, CellsAwayFromHeadAreUntouched) {
    const TuringMachine m = parse_machine(slurp("bouncer.tm"));
    TmConfiguration c = initial_configuration(m, "abbaab");
    for (int i = 0; i < 200; ++i) {
        const TmConfiguration next = tm_step(m, c).config;
        for (std::int64_t p = -50; p < 50; ++p) {
            if (p != c.head()) EXPECT_EQ(next.read(p), c.read(p));
        }
        c = next;
    }
}

TEST(ParseMachine, RejectsMalformedDescriptions) {
    EXPECT_THROW(parse_machine("states: a\nalphabet: 1 #\ninitial: a\na 1 -> a 1 X\n"), ParseError);
    EXPECT_THROW(parse_machine("states: a\nalphabet: 1 #\ninitial: a\na 1 a 1 R\n"), ParseError);
    EXPECT_THROW(parse_machine("states: a\nalphabet: 1 #\ninitial: b\n"), ParseError);
    EXPECT_THROW(parse_machine("states: a\nalphabet: 1 #\ninitial: a\na 1 -> z 1 R\n"), ParseError);
    EXPECT_THROW(parse_machine("states: a\nalphabet: 1 #\ninitial: a\na 2 -> a 1 R\n"), ParseError);
    EXPECT_THROW(parse_machine("states: a\nalphabet: 1 #\ninitial: a\na 1 -> a 1 R\na 1 -> a # L\n"), ParseError);
    EXPECT_THROW(parse_machine("alphabet: 1 #\ninitial: a\n"), ParseError);
    EXPECT_THROW(parse_machine("states: a\nalphabet: 1 #\ninitial: a\ncolour: red\n"), ParseError);
}

TEST(ParseMachine, SampleRoundsOut) {
    const TuringMachine m = parse_machine(slurp("unary_increment.tm"));
    EXPECT_EQ(m.states().size(), 2U);
    EXPECT_EQ(m.transitions().size(), 2U);
    EXPECT_EQ(m.blank(), '#');
    EXPECT_TRUE(m.is_halting("done"));
    EXPECT_THROW(initial_configuration(m, "12"), PreconditionError);
}
