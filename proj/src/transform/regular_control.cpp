#include <algorithm>
#include <map>
#include <queue>

#include "stategram/transform.hpp"

namespace stategram {

bool ControlAutomaton::is_final(StateId q) const {
    return std::find(finals.begin(), finals.end(), q) != finals.end();
}

bool ControlAutomaton::is_deterministic() const {
    std::set<std::pair<StateId, std::size_t>> seen;
    for (const Edge& e : edges)
        if (!seen.insert({e.from, e.label}).second) return false;
    return true;
}

ControlAutomaton determinize(const ControlAutomaton& a) {
    std::map<std::pair<StateId, std::size_t>, std::set<StateId>> delta;
    std::set<std::size_t> labels;
    for (const auto& e : a.edges) {
        delta[{e.from, e.label}].insert(e.to);
        labels.insert(e.label);
    }
    ControlAutomaton d;
    std::map<std::set<StateId>, StateId> ids;
    std::queue<std::set<StateId>> work;
    auto intern = [&](const std::set<StateId>& s) {
        auto [it, fresh] = ids.emplace(s, static_cast<StateId>(d.states.size()));
        if (fresh) {
            std::string name = "{";
            for (StateId q : s) name += (name.size() > 1 ? "," : "") + a.states[q];
            d.states.push_back(name + "}");
            if (std::any_of(s.begin(), s.end(), [&](StateId q) { return a.is_final(q); }))
                d.finals.push_back(it->second);
            work.push(s);
        }
        return it->second;
    };
    d.initial = intern({a.initial});
    while (!work.empty()) {
        std::set<StateId> s = work.front();
        work.pop();
        const StateId from = ids.at(s);
        for (std::size_t label : labels) {
            std::set<StateId> t;
            for (StateId q : s) {
                auto it = delta.find({q, label});
                if (it != delta.end()) t.insert(it->second.begin(), it->second.end());
            }
            if (!t.empty()) d.edges.push_back({from, label, intern(t)});
        }
    }
    return d;
}

StateGrammar regctrl_to_cfgs(const ControlledCfg& c) {
    const ControlAutomaton a = c.control.is_deterministic() ? c.control : determinize(c.control);
    StateGrammar g;
    g.kind = GrammarKind::Cfgs;
    g.nonterminals = c.base.nonterminals;
    g.terminals = c.base.terminals;
    g.axiom = c.base.axiom;
    g.states = a.states;
    g.initial = a.initial;
    g.finals = a.finals;
    std::vector<ControlAutomaton::Edge> edges = a.edges;
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) {
        if (e.label >= c.base.productions.size()) throw PreconditionError("control label without a production");
        const Production& p = c.base.productions[e.label];
        g.productions.push_back({e.from, {}, p.lhs, e.to, {}, p.rhs});
    }
    return g;
}

ControlledCfg cfgs_to_regctrl(const StateGrammar& g) {
    if (!g.counter_free()) throw PreconditionError("cfgs_to_regctrl needs a grammar without counters");
    ControlledCfg c;
    StateGrammar& base = c.base;
    base.kind = GrammarKind::Cfgs;
    base.nonterminals = g.nonterminals;
    base.terminals = g.terminals;
    base.axiom = g.axiom;
    base.states = {g.states[g.initial]};
    base.initial = 0;
    base.finals = {0};

    ControlAutomaton& a = c.control;
    a.states = g.states;
    a.initial = g.initial;
    a.finals = g.finals;
    std::map<std::pair<NonterminalId, Word>, std::size_t> labels;
    std::set<ControlAutomaton::Edge> edges;
    for (const Production& p : g.productions) {
        auto [it, fresh] = labels.emplace(std::make_pair(p.lhs, p.rhs), base.productions.size());
        if (fresh) base.productions.push_back({0, {}, p.lhs, 0, {}, p.rhs});
        edges.insert({p.from, it->second, p.to});
    }
    a.edges.assign(edges.begin(), edges.end());
    return c;
}

}  // namespace stategram
