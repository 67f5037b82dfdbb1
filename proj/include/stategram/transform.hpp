#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stategram/grammar.hpp"

namespace stategram {

/// Finite automaton over production labels; label i names production i of the companion grammar.
struct ControlAutomaton {
    struct Edge {
        StateId from = 0;
        std::size_t label = 0;
        StateId to = 0;
        bool operator==(const Edge&) const = default;
        auto operator<=>(const Edge&) const = default;
    };

    std::vector<std::string> states;
    StateId initial = 0;
    std::vector<StateId> finals;
    std::vector<Edge> edges;

    bool is_final(StateId q) const;
    bool is_deterministic() const;
    bool operator==(const ControlAutomaton&) const = default;
};

/// A plain CFG (one state, no counters) whose derivations count only when their label sequence
/// is accepted by the control automaton.
struct ControlledCfg {
    StateGrammar base;
    ControlAutomaton control;
    bool operator==(const ControlledCfg&) const = default;
};

/// Linear or right-linear state grammar to a one-state grammar over V x Q.
StateGrammar lgs_to_lg(const StateGrammar& g);

/// Subset construction, keeping only reachable subsets.
ControlAutomaton determinize(const ControlAutomaton& a);

StateGrammar regctrl_to_cfgs(const ControlledCfg& c);
ControlledCfg cfgs_to_regctrl(const StateGrammar& g);

/// Grammars after each per-counter pass, then after adding the unique accepting state.
std::vector<StateGrammar> normal_form_stages(const StateGrammar& g);
StateGrammar to_normal_form(const StateGrammar& g);
/// 1-reversal unit counters, a single accepting state, zero counters required on acceptance.
bool is_normal_form(const StateGrammar& g);

/// Keep words with as many c_i as d_i for every pair, then erase the pair symbols.
struct BalancedFilter {
    std::vector<std::pair<TerminalId, TerminalId>> pairs;

    bool balanced(const Word& w) const;
    Word erase(const Word& w) const;
    std::set<Word> apply(const std::set<Word>& words) const;
    bool operator==(const BalancedFilter&) const = default;
};

struct StrippedGrammar {
    StateGrammar grammar;
    BalancedFilter filter;
};

StrippedGrammar strip_counters(const StateGrammar& g);

StateGrammar cfgmc_to_cfgsc(const StateGrammar& g);
StateGrammar cfgmc_to_ccfgs(const StateGrammar& g);
StateGrammar expand_ccfgs_states(const StateGrammar& g);
StateGrammar degeneralize(const StateGrammar& g);

}  // namespace stategram
