#pragma once

// Turing machines as discrete dynamical systems.
//
// A configuration (tape, head, state) is a point and one transition is the
// map f, so a run is the orbit x^{n+1} = f(x^n) from the initial
// configuration. Any embedding algorithm expressible as a machine therefore
// has an iterate formulation.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chaosmark/error.hpp"

namespace chaosmark {

enum class Move { Left, Right };

struct Transition {
    std::string next_state;
    char write = '#';
    Move move = Move::Right;
};

class TuringMachine {
public:
    TuringMachine(std::set<std::string> states, std::set<char> alphabet, char blank,
                  std::map<std::pair<std::string, char>, Transition> transitions, std::string initial_state,
                  std::set<std::string> halting_states);

    const std::set<std::string>& states() const noexcept { return states_; }
    const std::set<char>& alphabet() const noexcept { return alphabet_; }
    char blank() const noexcept { return blank_; }
    const std::string& initial_state() const noexcept { return initial_state_; }
    const std::set<std::string>& halting_states() const noexcept { return halting_states_; }
    const std::map<std::pair<std::string, char>, Transition>& transitions() const noexcept { return transitions_; }

    bool is_halting(const std::string& state) const { return halting_states_.contains(state); }
    /// nullptr when δ(state, symbol) is undefined.
    const Transition* find(const std::string& state, char symbol) const;

private:
    std::set<std::string> states_;
    std::set<char> alphabet_;
    char blank_;
    std::map<std::pair<std::string, char>, Transition> transitions_;
    std::string initial_state_;
    std::set<std::string> halting_states_;
};

/// Tape window anchored at `origin` (absolute index of cells[0]); every
/// cell outside the window reads as blank.
class TmConfiguration {
public:
    TmConfiguration(std::string tape, std::int64_t head, std::string state, char blank = '#',
                    std::int64_t origin = 0);

    char read(std::int64_t position) const;
    TmConfiguration written(std::int64_t position, char symbol) const;

    std::int64_t head() const noexcept { return head_; }
    const std::string& state() const noexcept { return state_; }
    char blank() const noexcept { return blank_; }
    std::int64_t origin() const noexcept { return origin_; }
    const std::string& window() const noexcept { return cells_; }

    TmConfiguration moved_to(std::int64_t head, std::string state) const;

    /// Tape contents with leading/trailing blanks removed, and the absolute
    /// index of its first character.
    std::pair<std::string, std::int64_t> trimmed() const;

    /// Equal as points: same state, head and symbol in every cell.
    friend bool operator==(const TmConfiguration& a, const TmConfiguration& b);

private:
    std::string cells_;
    std::int64_t origin_;
    std::int64_t head_;
    std::string state_;
    char blank_;
};

enum class StepStatus {
    Running,
    /// Entered a halting state.
    Halted,
    /// δ undefined for (state, symbol); the machine stops without a halting state.
    NoTransition,
};

struct StepOutcome {
    TmConfiguration config;
    StepStatus status;
};

/// One application of f. Throws PreconditionError if `c` is already in a halting state.
StepOutcome tm_step(const TuringMachine& m, const TmConfiguration& c);

struct RunResult {
    TmConfiguration config;
    std::size_t steps = 0;
    bool halted = false;
    /// Running when the step budget was exhausted.
    StepStatus status = StepStatus::Running;
};

RunResult tm_run(const TuringMachine& m, const TmConfiguration& c0, std::size_t max_steps);

/// Parses the line-oriented machine format:
///
///     # comment
///     states: q0 q1 halt
///     alphabet: 1 #
///     blank: #
///     initial: q0
///     halting: halt
///     q0 1 -> q0 1 R
///     q0 # -> halt 1 R
///
/// Symbols are single characters; `blank` defaults to '#'.
TuringMachine parse_machine(std::string_view text);

/// Initial configuration for `m` with `tape` written from cell 0 and the head at `head`.
TmConfiguration initial_configuration(const TuringMachine& m, std::string tape, std::int64_t head = 0);

std::string_view to_string(StepStatus status);

}  // namespace chaosmark
