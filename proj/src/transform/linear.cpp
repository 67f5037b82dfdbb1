#include "stategram/transform.hpp"

namespace stategram {

StateGrammar lgs_to_lg(const StateGrammar& g) {
    if (!g.counter_free()) throw PreconditionError("lgs_to_lg needs a grammar without counters");
    const GrammarClass cls = classify(g);
    if (!cls.is_linear()) throw PreconditionError("lgs_to_lg needs a linear or right-linear grammar");

    const std::size_t nq = g.states.size();
    StateGrammar out;
    out.kind = cls.shape == Shape::RightLinear ? GrammarKind::Rlgs : GrammarKind::Lgs;
    out.terminals = g.terminals;
    out.states = {g.states[g.initial]};
    out.initial = 0;
    out.finals = {0};
    auto paired = [&](NonterminalId a, StateId q) { return static_cast<NonterminalId>(a * nq + q); };
    for (const auto& a : g.nonterminals)
        for (const auto& q : g.states) out.nonterminals.push_back(a + "@" + q);
    out.axiom = paired(g.axiom, g.initial);

    for (const Production& p : g.productions) {
        Production r;
        r.lhs = paired(p.lhs, p.from);
        r.rhs = p.rhs;
        bool spine = false;
        for (Sym& s : r.rhs) {
            if (s.is_nonterminal()) {
                s = Sym::nonterminal(paired(s.index(), p.to));
                spine = true;
            }
        }
        if (spine || g.is_final(p.to)) out.productions.push_back(std::move(r));
    }
    return out;
}

}  // namespace stategram
