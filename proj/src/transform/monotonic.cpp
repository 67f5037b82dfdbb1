#include <algorithm>

#include "stategram/transform.hpp"

namespace stategram {

namespace {

void require_monotonic(const StateGrammar& g) {
    if (g.acceptance != Acceptance::AllCountersEqual || g.counters.discipline == CounterDiscipline::ReversalBounded)
        throw PreconditionError("expected a monotonic-counter grammar");
}

auto symbol_taken(const StateGrammar& g) {
    return [&g](const std::string& s) {
        return std::find(g.nonterminals.begin(), g.nonterminals.end(), s) != g.nonterminals.end() ||
               std::find(g.terminals.begin(), g.terminals.end(), s) != g.terminals.end();
    };
}

}  // namespace

StateGrammar cfgmc_to_cfgsc(const StateGrammar& g) {
    require_monotonic(g);
    const std::size_t k = g.counters.count;
    StateGrammar out;
    out.kind = GrammarKind::Cfgsc;
    out.terminals = g.terminals;
    out.nonterminals = g.nonterminals;
    out.nonterminals.push_back(fresh_name(g.nonterminals[g.axiom] + "'", symbol_taken(g)));
    const NonterminalId start = static_cast<NonterminalId>(out.nonterminals.size() - 1);
    out.nonterminals.push_back(fresh_name("X", symbol_taken(out)));
    const NonterminalId drain = static_cast<NonterminalId>(out.nonterminals.size() - 1);
    for (const char* q : {"q0", "q1", "f"}) out.states.push_back(fresh_name(q, symbol_taken(out)));
    out.initial = 0;
    out.finals = {2};
    out.axiom = start;
    out.counters = CounterSpec::reversal_bounded(std::vector<std::uint32_t>(k, 1));
    out.acceptance = Acceptance::FinalStateZeroCounters;

    const std::vector<Guard> any(k, Guard::Any);
    const std::vector<std::int64_t> still(k, 0);
    out.productions.push_back({0, any, start, 1, still, {Sym::nonterminal(g.axiom), Sym::nonterminal(drain)}});
    for (const Production& p : g.productions) out.productions.push_back({1, any, p.lhs, 1, p.update, p.rhs});
    if (k > 0)
        out.productions.push_back({1, std::vector<Guard>(k, Guard::Positive), drain, 1,
                                   std::vector<std::int64_t>(k, -1), {Sym::nonterminal(drain)}});
    out.productions.push_back({1, std::vector<Guard>(k, Guard::Zero), drain, 2, still, {}});
    return out;
}

}  // namespace stategram
