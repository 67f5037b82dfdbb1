#include <algorithm>
#include <deque>
#include <map>

#include "stategram/transform.hpp"

namespace stategram {

bool BalancedFilter::balanced(const Word& w) const {
    for (auto [c, d] : pairs) {
        const auto cc = std::count(w.begin(), w.end(), Sym::terminal(c));
        const auto dd = std::count(w.begin(), w.end(), Sym::terminal(d));
        if (cc != dd) return false;
    }
    return true;
}

Word BalancedFilter::erase(const Word& w) const {
    Word out;
    for (Sym s : w) {
        const bool marker = std::any_of(pairs.begin(), pairs.end(), [&](auto pr) {
            return s == Sym::terminal(pr.first) || s == Sym::terminal(pr.second);
        });
        if (!marker) out.push_back(s);
    }
    return out;
}

std::set<Word> BalancedFilter::apply(const std::set<Word>& words) const {
    std::set<Word> out;
    for (const Word& w : words)
        if (balanced(w)) out.insert(erase(w));
    return out;
}

namespace {

// Per-counter phase of a one-reversal counter while its value is hidden in the word.
enum class Tag : char { Fresh = 'N', Up = 'U', Down = 'D', Empty = 'E' };

using Tags = std::vector<Tag>;

// Phase successors of one counter under a guard and update; empty when the move is impossible.
std::vector<Tag> advance(Tag t, Guard g, std::int64_t u) {
    switch (t) {
    case Tag::Fresh:
        if (g == Guard::Positive) return {};
        if (u == 0) return {Tag::Fresh};
        if (u == 1) return {Tag::Up};
        return {};
    case Tag::Up:
        if (g == Guard::Zero) return {};
        if (u >= 0) return {Tag::Up};
        return {Tag::Down, Tag::Empty};
    case Tag::Down:
        if (g == Guard::Zero) return {};
        if (u == 0) return {Tag::Down};
        if (u == -1) return {Tag::Down, Tag::Empty};
        return {};
    case Tag::Empty:
        if (g == Guard::Positive || u != 0) return {};
        return {Tag::Empty};
    }
    return {};
}

std::string tag_name(const Tags& t) {
    std::string s;
    for (Tag x : t) s.push_back(static_cast<char>(x));
    return s;
}

}  // namespace

StrippedGrammar strip_counters(const StateGrammar& g) {
    const std::size_t k = g.counters.count;
    if (k == 0) return {g, {}};
    const CounterSpec& cs = g.counters;
    if (cs.discipline != CounterDiscipline::ReversalBounded || cs.update_style != UpdateStyle::Unit ||
        std::any_of(cs.reversal_bounds.begin(), cs.reversal_bounds.end(), [](auto r) { return r != 1; }))
        throw PreconditionError("strip_counters needs one-reversal unit counters");
    if (g.acceptance != Acceptance::FinalStateZeroCounters)
        throw PreconditionError("strip_counters needs zero-counter acceptance");

    StateGrammar out;
    out.kind = GrammarKind::Cfgs;
    out.nonterminals = g.nonterminals;
    out.terminals = g.terminals;
    out.axiom = g.axiom;
    out.acceptance = Acceptance::FinalState;

    auto taken = [&](const std::string& s) {
        return std::find(out.terminals.begin(), out.terminals.end(), s) != out.terminals.end() ||
               std::find(out.nonterminals.begin(), out.nonterminals.end(), s) != out.nonterminals.end();
    };
    BalancedFilter filter;
    for (std::size_t j = 0; j < k; ++j) {
        out.terminals.push_back(fresh_name("c" + std::to_string(j + 1), taken));
        const TerminalId c = static_cast<TerminalId>(out.terminals.size() - 1);
        out.terminals.push_back(fresh_name("d" + std::to_string(j + 1), taken));
        filter.pairs.push_back({c, static_cast<TerminalId>(out.terminals.size() - 1)});
    }

    std::map<std::pair<StateId, Tags>, StateId> ids;
    std::deque<std::pair<StateId, Tags>> work;
    auto intern = [&](StateId q, const Tags& t) {
        auto [it, inserted] = ids.emplace(std::make_pair(q, t), static_cast<StateId>(out.states.size()));
        if (inserted) {
            out.states.push_back(g.states[q] + "@" + tag_name(t));
            work.emplace_back(q, t);
        }
        return it->second;
    };
    out.initial = intern(g.initial, Tags(k, Tag::Fresh));

    while (!work.empty()) {
        auto [q, tags] = work.front();
        work.pop_front();
        const StateId from = ids.at({q, tags});
        for (const Production& p : g.productions) {
            if (p.from != q) continue;
            // Cartesian product of per-counter successor phases.
            std::vector<Tags> combos{Tags{}};
            for (std::size_t j = 0; j < k && !combos.empty(); ++j) {
                std::vector<Tags> next;
                for (Tag t : advance(tags[j], p.guard[j], p.update[j]))
                    for (const Tags& c : combos) {
                        Tags e = c;
                        e.push_back(t);
                        next.push_back(std::move(e));
                    }
                combos = std::move(next);
            }
            Word markers;
            for (std::size_t j = 0; j < k; ++j) {
                if (p.update[j] > 0) markers.push_back(Sym::terminal(filter.pairs[j].first));
                if (p.update[j] < 0) markers.push_back(Sym::terminal(filter.pairs[j].second));
            }
            Word rhs = markers;
            rhs.insert(rhs.end(), p.rhs.begin(), p.rhs.end());
            for (const Tags& t : combos) {
                const StateId to = intern(p.to, t);
                out.productions.push_back({from, {}, p.lhs, to, {}, rhs});
            }
        }
    }

    for (const auto& [key, id] : ids) {
        const auto& [q, tags] = key;
        if (!g.is_final(q)) continue;
        if (std::all_of(tags.begin(), tags.end(), [](Tag t) { return t != Tag::Down; })) out.finals.push_back(id);
    }
    std::sort(out.finals.begin(), out.finals.end());
    return {std::move(out), std::move(filter)};
}

}  // namespace stategram
