#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stategram/derive.hpp"
#include "stategram/grammar.hpp"

namespace stategram {

using StackSym = std::uint32_t;

struct Pushdown {
    std::vector<std::string> alphabet;
    StackSym bottom = 0;
    /// Maximum number of switches between pushing and popping, if enforced.
    std::optional<std::uint32_t> reversal_bound;

    bool operator==(const Pushdown&) const = default;
};

/// One move. With `top` set the top symbol must match and is replaced by `push`; without it the
/// stack is not inspected and `push` goes on top. Push words are written top first.
struct MachineTransition {
    StateId from = 0;
    std::optional<TerminalId> input;
    std::vector<Guard> guard;
    std::optional<StackSym> top;
    StateId to = 0;
    std::vector<std::int64_t> update;
    std::vector<StackSym> push;

    bool operator==(const MachineTransition&) const = default;
};

/// Nondeterministic one-way machine with reversal-bounded counters and an optional stack.
/// Accepts by final state; constructions that need empty counters guard their last move.
struct CounterMachine {
    std::vector<std::string> states;
    std::vector<std::string> inputs;
    CounterSpec counters;
    std::optional<Pushdown> pushdown;
    std::vector<MachineTransition> transitions;
    StateId initial = 0;
    std::vector<StateId> accepting;

    bool is_accepting(StateId q) const;
    std::string spell(const Word& w) const;
    Word parse_word(std::string_view text) const;
    bool operator==(const CounterMachine&) const = default;
};

std::vector<std::string> validate(const CounterMachine& m);

struct MachineConfig {
    StateId state = 0;
    std::vector<std::int64_t> counters;
    std::vector<Phase> phases;
    std::vector<std::uint32_t> reversals_used;
    /// Stack contents with the top at the back.
    std::vector<StackSym> stack;
    /// Push/pop direction of the stack, with switches counted like counter reversals.
    Phase stack_phase = Phase::NotStarted;
    std::uint32_t stack_reversals = 0;

    bool operator==(const MachineConfig&) const = default;
};

MachineConfig initial_config(const CounterMachine& m);

struct MachineRun {
    MachineConfig start;
    std::vector<std::size_t> transitions;
    std::vector<MachineConfig> configs;
    Word word;

    const MachineConfig& last() const { return configs.empty() ? start : configs.back(); }
};

/// Exploration statistics shared by the searches below.
struct SearchStats {
    std::size_t visited = 0;
    /// Successors dropped because the stack would exceed its reversal bound.
    std::size_t stack_reversal_prunes = 0;
    /// Successors dropped by the counter cap or other budget limits.
    std::size_t budget_prunes = 0;
    std::uint32_t max_stack_reversals = 0;
};

/// Successor config after transition t, or nullopt when t is not enabled.
std::optional<MachineConfig> apply(const CounterMachine& m, const MachineConfig& c, std::size_t t,
                                   SearchStats* stats = nullptr);

std::optional<MachineRun> accepts(const CounterMachine& m, const Word& w, const ExplorationBudget& b,
                                  SearchStats* stats = nullptr);

/// Words read along accepting runs. max_form_len bounds both the word and the stack height.
std::set<Word> enumerate_machine(const CounterMachine& m, const ExplorationBudget& b,
                                 SearchStats* stats = nullptr);

/// True when the run is a valid sequence of moves from the initial config reading its word.
bool replay(const CounterMachine& m, const MachineRun& run);

struct EmptinessResult {
    bool nonempty = false;
    std::optional<MachineRun> witness;
    /// Some successor needed a counter above the cap.
    bool cap_reached = false;
    std::size_t explored = 0;
};

/// Reachability over (state, counters <= cap, phases); stackless machines only.
EmptinessResult ncm_empty_bounded(const CounterMachine& m, std::uint64_t cap);

/// Predict/match simulation of leftmost derivations.
CounterMachine cfgsc_lm_to_npcm(const StateGrammar& g);
/// Stackless simulation of a right-linear grammar.
CounterMachine rlgsc_to_ncm(const StateGrammar& g);
/// Linear grammar with a stack that only pushes while expanding and only pops while matching.
CounterMachine lgsc_to_npcm1(const StateGrammar& g);
/// Controlled grammar: V1 symbols on the stack, V2 symbols counted.
CounterMachine ccfgs_to_npcm(const StateGrammar& g);

std::string format_run(const CounterMachine& m, const MachineRun& run);

}  // namespace stategram
