#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stategram/grammar.hpp"

namespace stategram {

enum class Phase : std::uint8_t { NotStarted, Increasing, Decreasing };

struct DerivationConfig {
    StateId state = 0;
    std::vector<std::int64_t> counters;
    std::vector<Phase> phases;
    std::vector<std::uint32_t> reversals_used;
    /// Bit i set once a rule erasing C_i has been applied (controlled grammars only).
    std::uint64_t erased = 0;
    Word form;

    bool operator==(const DerivationConfig&) const = default;

    std::size_t nonterminal_count() const;
    bool is_terminal() const;
};

struct DerivationConfigHash {
    std::size_t operator()(const DerivationConfig& c) const;
};

enum class DerivationMode : std::uint8_t { Free, Leftmost, Leftish, Circular, Controlled };

std::string to_string(DerivationMode m);
std::optional<DerivationMode> parse_mode(std::string_view text);

/// Raised when a derivation mode is undefined for the grammar at hand.
class ModeError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

struct ExplorationBudget {
    std::size_t max_steps = 32;
    std::size_t max_form_len = 32;
    std::int64_t max_counter = 32;
    std::optional<std::size_t> max_words;
    /// Optional cap on nonterminal occurrences per form (derivation index).
    std::optional<std::size_t> max_index;
};

/// A successor together with the productions used (one, or a whole sweep in circular mode).
struct Successor {
    DerivationConfig config;
    std::vector<std::size_t> rules;
};

struct DerivationStep {
    std::vector<std::size_t> rules;
    DerivationConfig config;
};

struct Derivation {
    DerivationConfig start;
    std::vector<DerivationStep> steps;

    const DerivationConfig& last() const { return steps.empty() ? start : steps.back().config; }
    std::size_t index() const;
};

enum class ControlledEnforcement : std::uint8_t { ExpandStates, HistoryFlags };

struct EnumerateOptions {
    ControlledEnforcement controlled = ControlledEnforcement::ExpandStates;
};

void check_mode(const StateGrammar& g, DerivationMode mode);

DerivationConfig initial_config(const StateGrammar& g);
bool is_accepting(const StateGrammar& g, const DerivationConfig& c);

/// Exact one-step successors. In circular mode a step is a whole sweep.
std::vector<Successor> step(const StateGrammar& g, DerivationMode mode, const DerivationConfig& c);

/// All results of rewriting every nonterminal occurrence of c once, left to right.
std::vector<Successor> sweep_circular(const StateGrammar& g, const DerivationConfig& c);

std::set<Word> enumerate(const StateGrammar& g, DerivationMode mode, const ExplorationBudget& b,
                         const EnumerateOptions& opts = {});

/// Every reachable configuration with an all-terminal form, accepting or not.
std::vector<DerivationConfig> terminal_configs(const StateGrammar& g, DerivationMode mode,
                                               const ExplorationBudget& b);

/// Visits every configuration reachable within budget; returns how many were visited.
std::size_t for_each_reachable(const StateGrammar& g, DerivationMode mode, const ExplorationBudget& b,
                               const std::function<void(const DerivationConfig&)>& visit);

std::optional<Derivation> member(const StateGrammar& g, DerivationMode mode, const Word& w,
                                 const ExplorationBudget& b);

/// True when every step of d is a successor of the previous config under mode.
bool replay(const StateGrammar& g, DerivationMode mode, const Derivation& d);

std::string format_config(const StateGrammar& g, const DerivationConfig& c);
std::string format_derivation(const StateGrammar& g, const Derivation& d);

}  // namespace stategram
