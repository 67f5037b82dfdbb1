#include "stategram/decide.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "stategram/transform.hpp"

namespace stategram {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::NonEmpty: return "NonEmpty";
        case Verdict::EmptyWithinBound: return "EmptyWithinBound";
        case Verdict::IndexInsufficientWarning: return "IndexInsufficientWarning";
    }
    return "?";
}

StateGrammar erase_terminals(const StateGrammar& g) {
    StateGrammar out = g;
    for (Production& p : out.productions)
        std::erase_if(p.rhs, [](Sym s) { return s.is_terminal(); });
    return out;
}

IndexMachine index_grammar_to_ncm(const StateGrammar& g, std::size_t m, IndexOrder order) {
    if (m == 0) throw PreconditionError("index must be at least 1");
    const CounterSpec& cs = g.counters;
    if (cs.count > 0 && (cs.discipline != CounterDiscipline::ReversalBounded || cs.update_style != UpdateStyle::Unit))
        throw PreconditionError("index machine needs reversal-bounded unit counters");
    for (const Production& p : g.productions)
        if (std::any_of(p.rhs.begin(), p.rhs.end(), [](Sym s) { return s.is_terminal(); }))
            throw PreconditionError("index machine needs a terminal-erased grammar");

    IndexMachine out;
    CounterMachine& mc = out.machine;
    mc.inputs = g.terminals;
    mc.counters = cs;
    const std::size_t k = cs.count;

    std::vector<std::vector<std::size_t>> rules(g.states.size() * g.nonterminals.size());
    for (std::size_t i = 0; i < g.productions.size(); ++i) {
        const Production& p = g.productions[i];
        rules[p.from * g.nonterminals.size() + p.lhs].push_back(i);
    }

    std::map<std::pair<StateId, Word>, StateId> ids;
    std::deque<StateId> work;
    auto intern = [&](StateId q, const Word& w) {
        auto [it, fresh] = ids.emplace(std::make_pair(q, w), static_cast<StateId>(mc.states.size()));
        if (fresh) {
            mc.states.push_back("[" + g.states[q] + "," + g.spell(w, ".") + "]");
            out.labels.emplace_back(q, w);
            work.push_back(it->second);
        }
        return it->second;
    };
    mc.initial = intern(g.initial, {Sym::nonterminal(g.axiom)});

    std::set<std::tuple<StateId, StateId, std::size_t>> made;
    std::size_t opening = 0, opening_cut = 0;
    while (!work.empty()) {
        const StateId id = work.front();
        work.pop_front();
        const auto [q, w] = out.labels[id];
        const std::size_t positions = order == IndexOrder::Leftmost ? std::min<std::size_t>(w.size(), 1) : w.size();
        for (std::size_t pos = 0; pos < positions; ++pos) {
            if (pos > 0 && w[pos] == w[pos - 1]) continue;
            for (std::size_t r : rules[q * g.nonterminals.size() + w[pos].index()]) {
                const Production& p = g.productions[r];
                if (id == mc.initial) ++opening;
                if (w.size() - 1 + p.rhs.size() > m) {
                    out.index_cut = true;
                    if (id == mc.initial) ++opening_cut;
                    continue;
                }
                Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
                next.insert(next.end(), p.rhs.begin(), p.rhs.end());
                next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(pos) + 1, w.end());
                if (order == IndexOrder::Free) std::sort(next.begin(), next.end());
                const StateId to = intern(p.to, next);
                if (!made.emplace(id, to, r).second) continue;
                mc.transitions.push_back({id, std::nullopt, p.guard, std::nullopt, to, p.update, {}});
            }
        }
    }

    out.initial_cut = opening > 0 && opening == opening_cut;
    const bool zero = g.acceptance == Acceptance::FinalStateZeroCounters && k > 0;
    if (g.acceptance == Acceptance::AllCountersEqual) throw PreconditionError("index machine needs counted acceptance");
    std::optional<StateId> acc;
    for (StateId f : g.finals) {
        auto it = ids.find({f, Word{}});
        if (it == ids.end()) continue;
        if (!zero) {
            mc.accepting.push_back(it->second);
            continue;
        }
        if (!acc) {
            mc.states.push_back("acc");
            acc = static_cast<StateId>(mc.states.size() - 1);
            mc.accepting.push_back(*acc);
        }
        mc.transitions.push_back({it->second, std::nullopt, std::vector<Guard>(k, Guard::Zero), std::nullopt, *acc,
                                  std::vector<std::int64_t>(k, 0), {}});
    }
    std::sort(mc.accepting.begin(), mc.accepting.end());
    return out;
}

EmptinessReport cfgsc_index_emptiness(const StateGrammar& input, std::size_t m, std::uint64_t cap,
                                      IndexOrder order) {
    if (m == 0) throw PreconditionError("index must be at least 1");
    StateGrammar g = input;
    std::size_t slack = 0;
    if (g.control) {
        g.control.reset();
        g.kind = GrammarKind::Cfgs;
    }
    if (g.acceptance == Acceptance::AllCountersEqual) {
        g = cfgmc_to_cfgsc(g);
        ++slack;
    }
    if (g.counters.update_style == UpdateStyle::Generalized) g = degeneralize(g);

    EmptinessReport report;
    const auto stages = normal_form_stages(erase_terminals(g));
    report.normalized = stages.back();
    // The end marker is present throughout, and the counter transfer symbol appears at most once at a time.
    ++slack;
    const auto& nts = report.normalized.nonterminals;
    if (nts.size() > g.nonterminals.size() + 2) ++slack;
    report.machine_index = m + slack;

    report.machine = index_grammar_to_ncm(report.normalized, report.machine_index, order);
    report.index_cut = report.machine.index_cut;
    EmptinessResult e = ncm_empty_bounded(report.machine.machine, cap);
    report.cap_cut = e.cap_reached;
    if (e.nonempty) {
        report.verdict = Verdict::NonEmpty;
        report.run = std::move(e.witness);
    } else {
        report.verdict = report.machine.initial_cut ? Verdict::IndexInsufficientWarning : Verdict::EmptyWithinBound;
    }
    return report;
}

}  // namespace stategram
