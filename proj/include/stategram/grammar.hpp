#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stategram {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an operation is called on a grammar or machine outside its domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

using StateId = std::uint32_t;
using NonterminalId = std::uint32_t;
using TerminalId = std::uint32_t;

/// A terminal or nonterminal occurrence. States live in their own table.
class Sym {
public:
    constexpr Sym() = default;
    static constexpr Sym terminal(TerminalId i) { return Sym(i << 1); }
    static constexpr Sym nonterminal(NonterminalId i) { return Sym((i << 1) | 1U); }

    constexpr bool is_terminal() const { return (code_ & 1U) == 0; }
    constexpr bool is_nonterminal() const { return (code_ & 1U) != 0; }
    constexpr std::uint32_t index() const { return code_ >> 1; }
    constexpr std::uint32_t code() const { return code_; }

    constexpr auto operator<=>(const Sym&) const = default;

private:
    constexpr explicit Sym(std::uint32_t code) : code_(code) {}
    std::uint32_t code_ = 0;
};

using Word = std::vector<Sym>;

enum class Guard : std::uint8_t { Zero, Positive, Any };

enum class CounterDiscipline : std::uint8_t { None, ReversalBounded, Monotonic };

enum class UpdateStyle : std::uint8_t { Unit, Generalized };

struct CounterSpec {
    std::size_t count = 0;
    CounterDiscipline discipline = CounterDiscipline::None;
    /// Per-counter reversal bound; only meaningful for ReversalBounded.
    std::vector<std::uint32_t> reversal_bounds;
    UpdateStyle update_style = UpdateStyle::Unit;

    static CounterSpec none() { return {}; }
    static CounterSpec reversal_bounded(std::vector<std::uint32_t> bounds,
                                        UpdateStyle style = UpdateStyle::Unit);
    static CounterSpec monotonic(std::size_t k);

    /// Reversal bound of counter j, or nullopt when unbounded (monotonic counters never reverse).
    std::optional<std::uint32_t> bound(std::size_t j) const;

    bool operator==(const CounterSpec&) const = default;
};

struct Production {
    StateId from = 0;
    std::vector<Guard> guard;
    NonterminalId lhs = 0;
    StateId to = 0;
    std::vector<std::int64_t> update;
    Word rhs;

    bool operator==(const Production&) const = default;
};

enum class Acceptance : std::uint8_t { FinalState, FinalStateZeroCounters, AllCountersEqual };

enum class GrammarKind : std::uint8_t { Cfgs, Lgs, Rlgs, Cfgsc, Cfgmc, Ccfgs };

/// Which relaxation of the V2 right-hand-side restriction a controlled grammar uses.
enum class V2Relaxation : std::uint8_t { None, TerminalsInV2Rules, V1InV2Rules };

struct ControlPartition {
    std::vector<NonterminalId> v2;
    V2Relaxation variant = V2Relaxation::None;

    bool contains(NonterminalId a) const;
    /// Position of a within v2 (the counter index i of C_i), if present.
    std::optional<std::size_t> position(NonterminalId a) const;

    bool operator==(const ControlPartition&) const = default;
};

struct StateGrammar {
    GrammarKind kind = GrammarKind::Cfgs;
    std::vector<std::string> nonterminals;
    std::vector<std::string> terminals;
    std::vector<std::string> states;
    std::vector<Production> productions;
    NonterminalId axiom = 0;
    StateId initial = 0;
    std::vector<StateId> finals;
    CounterSpec counters;
    std::optional<ControlPartition> control;
    Acceptance acceptance = Acceptance::FinalState;

    bool operator==(const StateGrammar&) const = default;

    bool is_final(StateId q) const;
    bool counter_free() const { return counters.count == 0; }

    std::optional<NonterminalId> find_nonterminal(std::string_view name) const;
    std::optional<TerminalId> find_terminal(std::string_view name) const;
    std::optional<StateId> find_state(std::string_view name) const;

    const std::string& name(Sym s) const;
    /// Symbols joined by `sep`; the empty word prints as `<eps>`.
    std::string spell(const Word& w, std::string_view sep = "") const;
    /// Terminal word from concatenated or space-separated names. Throws on ambiguity.
    Word parse_word(std::string_view text) const;
};

enum class Shape : std::uint8_t { ContextFree, Linear, RightLinear };

struct GrammarClass {
    Shape shape = Shape::ContextFree;
    bool lambda_free = true;

    bool is_linear() const { return shape != Shape::ContextFree; }
    bool operator==(const GrammarClass&) const = default;
};

std::vector<std::string> validate(const StateGrammar& g);
GrammarClass classify(const StateGrammar& g);

std::string to_string(GrammarKind k);
std::string to_string(Shape s);
std::string to_string(Guard g);
std::string to_string(Acceptance a);

/// Returns `base` if unused according to `taken`, else `base` with a numeric suffix.
template <class Taken>
std::string fresh_name(const std::string& base, const Taken& taken) {
    if (!taken(base)) return base;
    for (std::size_t i = 1;; ++i) {
        std::string candidate = base + "~" + std::to_string(i);
        if (!taken(candidate)) return candidate;
    }
}

/// Convenience construction by name, used by the corpus and by transformations.
class GrammarBuilder {
public:
    GrammarBuilder(GrammarKind kind, CounterSpec counters);

    StateId state(std::string_view name);
    NonterminalId nonterminal(std::string_view name);
    TerminalId terminal(std::string_view name);

    GrammarBuilder& states(std::string_view space_separated);
    GrammarBuilder& nonterminals(std::string_view space_separated);
    GrammarBuilder& terminals(std::string_view space_separated);
    GrammarBuilder& initial(std::string_view name);
    GrammarBuilder& final_states(std::string_view space_separated);
    GrammarBuilder& axiom(std::string_view name);
    GrammarBuilder& acceptance(Acceptance a);
    GrammarBuilder& v2(std::string_view space_separated, V2Relaxation variant = V2Relaxation::None);

    /// Rule with guards/updates written as in files ("z,p", "+1,0"); rhs names are
    /// space separated and must already be declared ("eps" or "" for the empty word).
    GrammarBuilder& rule(std::string_view from, std::string_view guards, std::string_view lhs,
                         std::string_view to, std::string_view updates, std::string_view rhs);
    GrammarBuilder& rule(Production p);

    Word word(std::string_view space_separated) const;
    const StateGrammar& peek() const { return g_; }
    StateGrammar build() const;

private:
    StateGrammar g_;
};

std::vector<Guard> parse_guards(std::string_view text);
std::vector<std::int64_t> parse_updates(std::string_view text);
std::string format_guards(const std::vector<Guard>& gs);
std::string format_updates(const std::vector<std::int64_t>& us);

std::vector<std::string> split_ws(std::string_view text);

}  // namespace stategram
