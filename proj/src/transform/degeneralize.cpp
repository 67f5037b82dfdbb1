#include <algorithm>
#include <bit>
#include <deque>

#include "stategram/transform.hpp"

namespace stategram {

namespace {

struct Builder {
    StateGrammar& g;
    std::size_t gadgets = 0;

    NonterminalId nonterminal(const std::string& base) {
        auto taken = [&](const std::string& s) {
            return std::find(g.nonterminals.begin(), g.nonterminals.end(), s) != g.nonterminals.end() ||
                   std::find(g.terminals.begin(), g.terminals.end(), s) != g.terminals.end();
        };
        g.nonterminals.push_back(fresh_name(base, taken));
        return static_cast<NonterminalId>(g.nonterminals.size() - 1);
    }
    StateId state(const std::string& base) {
        auto taken = [&](const std::string& s) {
            return std::find(g.states.begin(), g.states.end(), s) != g.states.end();
        };
        g.states.push_back(fresh_name(base, taken));
        return static_cast<StateId>(g.states.size() - 1);
    }
    std::size_t counter() {
        g.counters.reversal_bounds.push_back(1);
        return g.counters.count++;
    }
};

// Rule skeleton on `width` counters that tests nothing and changes nothing.
Production idle(std::size_t width, StateId from, NonterminalId lhs, StateId to, Word rhs) {
    return {from, std::vector<Guard>(width, Guard::Any), lhs, to, std::vector<std::int64_t>(width, 0),
            std::move(rhs)};
}

// Replaces the increment of counter j in t by a chain that adds it in unit steps through private
// auxiliary counters, doubling the running power of two at each level.
std::vector<Production> expand(Builder& b, const Production& t, std::size_t j) {
    const auto c = static_cast<std::uint64_t>(t.update[j]);
    const std::size_t top = static_cast<std::size_t>(std::bit_width(c) - 1);
    const std::string tag = "@g" + std::to_string(++b.gadgets);
    const std::string lhs_name = b.g.nonterminals[t.lhs];

    const StateId work = b.state(b.g.states[t.to] + tag);
    std::vector<std::size_t> aux;
    for (std::size_t i = 0; i < top; ++i) aux.push_back(b.counter());
    const NonterminalId y = b.nonterminal(lhs_name + tag);
    std::vector<NonterminalId> down, even;
    for (std::size_t i = 1; i <= top; ++i) {
        down.push_back(b.nonterminal("D" + std::to_string(i) + tag));
        if (i < top) even.push_back(b.nonterminal("E" + std::to_string(i) + tag));
    }
    auto bit = [&](std::size_t i) { return static_cast<std::int64_t>((c >> i) & 1U); };
    auto nt = [](NonterminalId a) { return Word{Sym::nonterminal(a)}; };

    const std::size_t width = b.g.counters.count;
    std::vector<Production> out;

    Production first = t;
    first.to = work;
    first.rhs = nt(y);
    first.guard.resize(width, Guard::Any);
    first.update.resize(width, 0);
    for (std::size_t a : aux) first.guard[a] = Guard::Zero;
    first.update[j] = bit(0);
    first.update[aux[0]] = 1;
    out.push_back(first);

    Production second = idle(width, work, y, work, nt(down[0]));
    second.update[aux[0]] = 1;
    out.push_back(second);

    for (std::size_t i = 1; i < top; ++i) {
        const std::size_t a = aux[i - 1], next = aux[i];
        Production take = idle(width, work, down[i - 1], work, nt(even[i - 1]));
        take.guard[a] = Guard::Positive;
        take.update[a] = -1;
        take.update[next] = 1;
        take.update[j] = bit(i);
        out.push_back(take);
        Production twice = idle(width, work, even[i - 1], work, nt(down[i - 1]));
        twice.update[next] = 1;
        out.push_back(twice);
        Production done = idle(width, work, down[i - 1], work, nt(down[i]));
        done.guard[a] = Guard::Zero;
        out.push_back(done);
    }

    const std::size_t last = aux[top - 1];
    Production pour = idle(width, work, down[top - 1], work, nt(down[top - 1]));
    pour.guard[last] = Guard::Positive;
    pour.update[last] = -1;
    pour.update[j] = 1;
    out.push_back(pour);
    Production finish = idle(width, work, down[top - 1], t.to, t.rhs);
    finish.guard[last] = Guard::Zero;
    out.push_back(finish);
    return out;
}

}  // namespace

StateGrammar degeneralize(const StateGrammar& g) {
    if (g.counters.update_style != UpdateStyle::Generalized) return g;
    for (const Production& p : g.productions)
        for (std::int64_t u : p.update)
            if (u < -1) throw PreconditionError("generalized decrements must be exactly 1");

    StateGrammar out = g;
    out.productions.clear();
    out.counters.update_style = UpdateStyle::Unit;
    Builder b{out};

    std::deque<Production> work(g.productions.begin(), g.productions.end());
    while (!work.empty()) {
        Production p = work.front();
        work.pop_front();
        p.guard.resize(out.counters.count, Guard::Any);
        p.update.resize(out.counters.count, 0);
        auto big = std::find_if(p.update.begin(), p.update.end(), [](std::int64_t u) { return u > 1; });
        if (big == p.update.end()) {
            out.productions.push_back(std::move(p));
            continue;
        }
        std::vector<Production> chain = expand(b, p, static_cast<std::size_t>(big - p.update.begin()));
        // The entry rule may still carry other large increments; split it again.
        work.push_front(std::move(chain.front()));
        for (std::size_t i = 1; i < chain.size(); ++i) out.productions.push_back(std::move(chain[i]));
    }
    for (Production& p : out.productions) {
        p.guard.resize(out.counters.count, Guard::Any);
        p.update.resize(out.counters.count, 0);
    }
    return out;
}

}  // namespace stategram
