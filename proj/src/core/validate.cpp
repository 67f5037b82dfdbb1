#include <algorithm>
#include <set>

#include "stategram/grammar.hpp"

namespace stategram {

namespace {

void check_duplicates(const std::vector<std::string>& names, const std::string& what,
                      std::vector<std::string>& out) {
    std::set<std::string> seen;
    for (const auto& n : names)
        if (!seen.insert(n).second) out.push_back("duplicate " + what + " '" + n + "'");
}

}  // namespace

std::vector<std::string> validate(const StateGrammar& g) {
    std::vector<std::string> out;
    const CounterSpec& cs = g.counters;
    const std::size_t k = cs.count;

    check_duplicates(g.nonterminals, "nonterminal", out);
    check_duplicates(g.terminals, "terminal", out);
    check_duplicates(g.states, "state", out);
    {
        std::set<std::string> v(g.nonterminals.begin(), g.nonterminals.end());
        std::set<std::string> t(g.terminals.begin(), g.terminals.end());
        for (const auto& n : g.terminals)
            if (v.count(n)) out.push_back("symbol '" + n + "' is both terminal and nonterminal");
        for (const auto& n : g.states)
            if (v.count(n) || t.count(n)) out.push_back("state '" + n + "' clashes with a grammar symbol");
    }

    if (g.axiom >= g.nonterminals.size()) out.push_back("axiom undeclared");
    if (g.initial >= g.states.size()) out.push_back("initial state undeclared");
    for (StateId f : g.finals)
        if (f >= g.states.size()) out.push_back("final state undeclared");

    switch (cs.discipline) {
        case CounterDiscipline::None:
            if (k != 0) out.push_back("counters declared without a discipline");
            break;
        case CounterDiscipline::ReversalBounded:
            if (cs.reversal_bounds.size() != k) out.push_back("reversal bound count differs from counter count");
            for (auto r : cs.reversal_bounds)
                if (r == 0) out.push_back("reversal bound must be positive");
            break;
        case CounterDiscipline::Monotonic:
            if (g.states.size() != 1) out.push_back("monotonic grammar must have exactly one state");
            break;
    }
    if (cs.update_style == UpdateStyle::Generalized && cs.discipline != CounterDiscipline::ReversalBounded)
        out.push_back("generalized updates require reversal-bounded counters");
    if ((g.acceptance == Acceptance::AllCountersEqual) != (cs.discipline == CounterDiscipline::Monotonic))
        out.push_back("acceptance AllCountersEqual must coincide with monotonic counters");

    for (std::size_t i = 0; i < g.productions.size(); ++i) {
        const Production& p = g.productions[i];
        const std::string where = "rule " + std::to_string(i + 1) + ": ";
        if (p.from >= g.states.size() || p.to >= g.states.size()) out.push_back(where + "state undeclared");
        if (p.lhs >= g.nonterminals.size()) out.push_back(where + "lhs undeclared");
        for (Sym s : p.rhs) {
            if (s.is_terminal() ? s.index() >= g.terminals.size() : s.index() >= g.nonterminals.size()) {
                out.push_back(where + "rhs symbol undeclared");
                break;
            }
        }
        if (p.guard.size() != k) out.push_back(where + "guard arity differs from counter count");
        if (p.update.size() != k) out.push_back(where + "update arity differs from counter count");
        const std::size_t n = std::min({k, p.guard.size(), p.update.size()});
        for (std::size_t j = 0; j < n; ++j) {
            const std::int64_t u = p.update[j];
            if (p.guard[j] == Guard::Zero && u < 0) out.push_back(where + "decrement guarded by zero test");
            if (cs.discipline == CounterDiscipline::Monotonic) {
                if (u < 0) out.push_back(where + "negative update in monotonic grammar");
                else if (u > 1) out.push_back(where + "monotonic update exceeds +1");
                if (p.guard[j] != Guard::Any) out.push_back(where + "monotonic grammar with counter guard");
            } else if (cs.update_style == UpdateStyle::Generalized) {
                if (u < -1) out.push_back(where + "generalized decrement must be exactly 1");
            } else if (u < -1 || u > 1) {
                out.push_back(where + "unit update out of range");
            }
        }
    }

    if (g.control) {
        const ControlPartition& cp = *g.control;
        std::set<NonterminalId> seen;
        for (NonterminalId c : cp.v2) {
            if (c >= g.nonterminals.size()) out.push_back("v2 symbol undeclared");
            if (!seen.insert(c).second) out.push_back("duplicate v2 symbol");
        }
        if (cp.contains(g.axiom)) out.push_back("axiom must belong to V1");
        for (std::size_t i = 0; i < g.productions.size(); ++i) {
            const Production& p = g.productions[i];
            if (!cp.contains(p.lhs)) continue;
            for (Sym s : p.rhs) {
                bool ok = false;
                if (s.is_nonterminal() && cp.contains(s.index())) ok = true;
                else if (s.is_terminal()) ok = cp.variant == V2Relaxation::TerminalsInV2Rules;
                else ok = cp.variant == V2Relaxation::V1InV2Rules;
                if (!ok) {
                    out.push_back("rule " + std::to_string(i + 1) + ": V2 rule rhs outside the allowed alphabet");
                    break;
                }
            }
        }
    }
    return out;
}

GrammarClass classify(const StateGrammar& g) {
    GrammarClass c;
    c.shape = Shape::RightLinear;
    for (const Production& p : g.productions) {
        if (p.rhs.empty()) c.lambda_free = false;
        std::size_t count = 0;
        std::size_t last = 0;
        for (std::size_t i = 0; i < p.rhs.size(); ++i) {
            if (p.rhs[i].is_nonterminal()) {
                ++count;
                last = i;
            }
        }
        if (count > 1) c.shape = Shape::ContextFree;
        else if (count == 1 && last + 1 != p.rhs.size() && c.shape == Shape::RightLinear) c.shape = Shape::Linear;
    }
    return c;
}

}  // namespace stategram
