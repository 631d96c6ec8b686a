#include "chaosmark/tm_encoding.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace chaosmark {

TuringMachine::TuringMachine(std::set<std::string> states, std::set<char> alphabet, char blank,
                             std::map<std::pair<std::string, char>, Transition> transitions,
                             std::string initial_state, std::set<std::string> halting_states)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      blank_(blank),
      transitions_(std::move(transitions)),
      initial_state_(std::move(initial_state)),
      halting_states_(std::move(halting_states)) {
    if (!alphabet_.contains(blank_)) {
        throw PreconditionError(std::string("blank symbol '") + blank_ + "' is not in the alphabet");
    }
    if (!states_.contains(initial_state_)) {
        throw PreconditionError("initial state '" + initial_state_ + "' is not declared");
    }
    for (const auto& h : halting_states_) {
        if (!states_.contains(h)) {
            throw PreconditionError("halting state '" + h + "' is not declared");
        }
    }
    for (const auto& [key, t] : transitions_) {
        if (!states_.contains(key.first) || !states_.contains(t.next_state)) {
            throw PreconditionError("transition references an undeclared state");
        }
        if (!alphabet_.contains(key.second) || !alphabet_.contains(t.write)) {
            throw PreconditionError("transition references a symbol outside the alphabet");
        }
    }
}

const Transition* TuringMachine::find(const std::string& state, char symbol) const {
    auto it = transitions_.find({state, symbol});
    return it == transitions_.end() ? nullptr : &it->second;
}

TmConfiguration::TmConfiguration(std::string tape, std::int64_t head, std::string state, char blank,
                                 std::int64_t origin)
    : cells_(std::move(tape)), origin_(origin), head_(head), state_(std::move(state)), blank_(blank) {}

char TmConfiguration::read(std::int64_t position) const {
    const std::int64_t i = position - origin_;
    if (i < 0 || i >= static_cast<std::int64_t>(cells_.size())) {
        return blank_;
    }
    return cells_[static_cast<std::size_t>(i)];
}

TmConfiguration TmConfiguration::written(std::int64_t position, char symbol) const {
    TmConfiguration out = *this;
    if (out.cells_.empty()) {
        out.origin_ = position;
        out.cells_.assign(1, blank_);
    }
    if (position < out.origin_) {
        out.cells_.insert(0, static_cast<std::size_t>(out.origin_ - position), blank_);
        out.origin_ = position;
    }
    const auto i = static_cast<std::size_t>(position - out.origin_);
    if (i >= out.cells_.size()) {
        out.cells_.resize(i + 1, blank_);
    }
    out.cells_[i] = symbol;
    return out;
}

TmConfiguration TmConfiguration::moved_to(std::int64_t head, std::string state) const {
    TmConfiguration out = *this;
    out.head_ = head;
    out.state_ = std::move(state);
    return out;
}

std::pair<std::string, std::int64_t> TmConfiguration::trimmed() const {
    const auto first = cells_.find_first_not_of(blank_);
    if (first == std::string::npos) {
        return {std::string(), 0};
    }
    const auto last = cells_.find_last_not_of(blank_);
    return {cells_.substr(first, last - first + 1), origin_ + static_cast<std::int64_t>(first)};
}

bool operator==(const TmConfiguration& a, const TmConfiguration& b) {
    return a.head_ == b.head_ && a.state_ == b.state_ && a.blank_ == b.blank_ && a.trimmed() == b.trimmed();
}

StepOutcome tm_step(const TuringMachine& m, const TmConfiguration& c) {
    if (m.is_halting(c.state())) {
        throw PreconditionError("tm_step: configuration is already in halting state '" + c.state() + "'");
    }
    const Transition* t = m.find(c.state(), c.read(c.head()));
    if (t == nullptr) {
        return {c, StepStatus::NoTransition};
    }
    const std::int64_t head = c.head() + (t->move == Move::Right ? 1 : -1);
    TmConfiguration next = c.written(c.head(), t->write).moved_to(head, t->next_state);
    const StepStatus status = m.is_halting(t->next_state) ? StepStatus::Halted : StepStatus::Running;
    return {std::move(next), status};
}

RunResult tm_run(const TuringMachine& m, const TmConfiguration& c0, std::size_t max_steps) {
    if (max_steps < 1) {
        throw PreconditionError("tm_run: max_steps must be >= 1");
    }
    RunResult result{c0, 0, false, StepStatus::Running};
    if (m.is_halting(c0.state())) {
        result.halted = true;
        result.status = StepStatus::Halted;
        return result;
    }
    while (result.steps < max_steps) {
        StepOutcome out = tm_step(m, result.config);
        if (out.status == StepStatus::NoTransition) {
            result.halted = true;
            result.status = StepStatus::NoTransition;
            return result;
        }
        result.config = std::move(out.config);
        ++result.steps;
        if (out.status == StepStatus::Halted) {
            result.halted = true;
            result.status = StepStatus::Halted;
            return result;
        }
    }
    return result;
}

namespace {

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    std::istringstream in{std::string(text)};
    for (std::string w; in >> w;) {
        words.push_back(std::move(w));
    }
    return words;
}

char single_symbol(const std::string& token, std::size_t line) {
    if (token.size() != 1) {
        throw ParseError("line " + std::to_string(line) + ": symbol '" + token + "' must be a single character");
    }
    return token[0];
}

}  // namespace

TuringMachine parse_machine(std::string_view text) {
    std::set<std::string> states;
    std::set<char> alphabet;
    char blank = '#';
    std::string initial;
    std::set<std::string> halting;
    std::map<std::pair<std::string, char>, Transition> transitions;
    bool have_states = false;
    bool have_alphabet = false;

    std::istringstream in{std::string(text)};
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        const auto words = split_words(line);
        // Lines whose first token starts with '#' are comments; '#' elsewhere is a symbol.
        if (words.empty() || words[0].front() == '#') {
            continue;
        }
        if (auto colon = line.find(':'); colon != std::string::npos && line.find("->") == std::string::npos) {
            std::string key = line.substr(0, colon);
            key.erase(std::remove_if(key.begin(), key.end(), [](unsigned char ch) { return std::isspace(ch); }),
                      key.end());
            const auto values = split_words(std::string_view(line).substr(colon + 1));
            if (key == "states") {
                states.insert(values.begin(), values.end());
                have_states = true;
            } else if (key == "alphabet") {
                for (const auto& v : values) alphabet.insert(single_symbol(v, line_no));
                have_alphabet = true;
            } else if (key == "blank") {
                if (values.size() != 1) throw ParseError("line " + std::to_string(line_no) + ": blank takes one symbol");
                blank = single_symbol(values[0], line_no);
            } else if (key == "initial") {
                if (values.size() != 1) throw ParseError("line " + std::to_string(line_no) + ": initial takes one state");
                initial = values[0];
            } else if (key == "halting") {
                halting.insert(values.begin(), values.end());
            } else {
                throw ParseError("line " + std::to_string(line_no) + ": unknown directive '" + key + "'");
            }
            continue;
        }
        // state symbol -> state symbol move
        if (words.size() != 6 || words[2] != "->") {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected 'state symbol -> state symbol L|R', got '" + line + "'");
        }
        Transition t;
        t.next_state = words[3];
        t.write = single_symbol(words[4], line_no);
        if (words[5] == "R") {
            t.move = Move::Right;
        } else if (words[5] == "L") {
            t.move = Move::Left;
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": move must be L or R");
        }
        const auto key = std::make_pair(words[0], single_symbol(words[1], line_no));
        if (!transitions.emplace(key, std::move(t)).second) {
            throw ParseError("line " + std::to_string(line_no) + ": duplicate transition");
        }
    }
    if (!have_states) throw ParseError("machine description lacks a 'states:' line");
    if (!have_alphabet) throw ParseError("machine description lacks an 'alphabet:' line");
    if (initial.empty()) throw ParseError("machine description lacks an 'initial:' line");
    try {
        return TuringMachine(std::move(states), std::move(alphabet), blank, std::move(transitions),
                             std::move(initial), std::move(halting));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

TmConfiguration initial_configuration(const TuringMachine& m, std::string tape, std::int64_t head) {
    for (char ch : tape) {
        if (!m.alphabet().contains(ch)) {
            throw PreconditionError(std::string("tape symbol '") + ch + "' is not in the alphabet");
        }
    }
    return TmConfiguration(std::move(tape), head, m.initial_state(), m.blank());
}

std::string_view to_string(StepStatus status) {
    switch (status) {
        case StepStatus::Running: return "running";
        case StepStatus::Halted: return "halted";
        case StepStatus::NoTransition: return "no_transition";
    }
    return "running";
}

}  // namespace chaosmark
