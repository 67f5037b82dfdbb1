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

StateGrammar cfgmc_to_ccfgs(const StateGrammar& g) {
    require_monotonic(g);
    const std::size_t k = g.counters.count;
    if (k == 0) throw PreconditionError("cfgmc_to_ccfgs needs at least one counter");

    StateGrammar out;
    out.kind = GrammarKind::Ccfgs;
    out.terminals = g.terminals;
    out.nonterminals = g.nonterminals;
    out.nonterminals.push_back(fresh_name(g.nonterminals[g.axiom] + "'", symbol_taken(g)));
    const NonterminalId start = static_cast<NonterminalId>(out.nonterminals.size() - 1);
    ControlPartition part;
    for (std::size_t i = 1; i <= k; ++i) {
        out.nonterminals.push_back(fresh_name("C" + std::to_string(i), symbol_taken(out)));
        part.v2.push_back(static_cast<NonterminalId>(out.nonterminals.size() - 1));
    }
    out.control = part;
    out.states.push_back(fresh_name("q0", symbol_taken(out)));
    for (std::size_t i = 1; i <= k; ++i) out.states.push_back(fresh_name("q" + std::to_string(i), symbol_taken(out)));
    out.states.push_back(fresh_name("qf", symbol_taken(out)));
    const StateId q0 = 0, q1 = 1, qf = static_cast<StateId>(k + 1);
    out.initial = q0;
    out.finals = {qf};
    out.axiom = start;

    auto c = [&](std::size_t i) { return Sym::nonterminal(part.v2[i]); };
    Word first;
    for (std::size_t i = 0; i < k; ++i) first.push_back(c(i));
    first.push_back(Sym::nonterminal(g.axiom));
    out.productions.push_back({q0, {}, start, q0, {}, first});
    for (const Production& p : g.productions) {
        Word rhs;
        for (std::size_t i = 0; i < k; ++i)
            for (std::int64_t n = 0; n < p.update[i]; ++n) rhs.push_back(c(i));
        rhs.insert(rhs.end(), p.rhs.begin(), p.rhs.end());
        out.productions.push_back({q0, {}, p.lhs, q0, {}, rhs});
        out.productions.push_back({q0, {}, p.lhs, q1, {}, rhs});
    }
    // Erase one C_1..C_k per round; after a full round either loop or stop.
    for (std::size_t i = 0; i + 1 < k; ++i)
        out.productions.push_back({static_cast<StateId>(i + 1), {}, part.v2[i], static_cast<StateId>(i + 2), {}, {}});
    out.productions.push_back({static_cast<StateId>(k), {}, part.v2[k - 1], q1, {}, {}});
    out.productions.push_back({static_cast<StateId>(k), {}, part.v2[k - 1], qf, {}, {}});
    return out;
}

StateGrammar expand_ccfgs_states(const StateGrammar& g) {
    if (!g.control) throw PreconditionError("expand_ccfgs_states needs a control partition");
    const ControlPartition& part = *g.control;
    const std::size_t k = part.v2.size();
    if (k == 0) return g;
    if (k > 16) throw PreconditionError("too many V2 symbols to expand");

    StateGrammar out = g;
    const std::uint32_t signs = 1U << k;
    out.states.clear();
    for (const auto& q : g.states)
        for (std::uint32_t mask = 0; mask < signs; ++mask) {
            std::string tag;
            for (std::size_t i = 0; i < k; ++i) tag.push_back((mask >> i) & 1U ? '-' : '+');
            out.states.push_back(q + "@" + tag);
        }
    auto id = [&](StateId q, std::uint32_t mask) { return static_cast<StateId>(q * signs + mask); };
    out.initial = id(g.initial, 0);
    out.finals.clear();
    for (StateId f : g.finals)
        for (std::uint32_t mask = 0; mask < signs; ++mask) out.finals.push_back(id(f, mask));
    std::sort(out.finals.begin(), out.finals.end());

    out.productions.clear();
    for (const Production& p : g.productions) {
        std::uint32_t mentions = 0;
        for (Sym s : p.rhs)
            if (s.is_nonterminal())
                if (auto i = part.position(s.index())) mentions |= 1U << *i;
        const auto erased_here = part.position(p.lhs);
        for (std::uint32_t mask = 0; mask < signs; ++mask) {
            if (mask & mentions) continue;
            std::uint32_t next = mask;
            if (erased_here && !(mentions & (1U << *erased_here))) next |= 1U << *erased_here;
            out.productions.push_back({id(p.from, mask), p.guard, p.lhs, id(p.to, next), p.update, p.rhs});
        }
    }
    return out;
}

}  // namespace stategram
