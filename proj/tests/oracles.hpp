#pragma once

// Independent reference computations for the tests. Nothing here calls the derivation engine.

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stategram/grammar.hpp"
#include "stategram/transform.hpp"

namespace oracle {

using stategram::Sym;
using stategram::Word;

/// Every word over the given terminals with length at most n.
inline std::vector<Word> all_words(const std::vector<Sym>& alphabet, std::size_t n) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= n; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (Sym s : alphabet) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

inline std::vector<Sym> terminals(const stategram::StateGrammar& g) {
    std::vector<Sym> out;
    for (std::uint32_t i = 0; i < g.terminals.size(); ++i) out.push_back(Sym::terminal(i));
    return out;
}

inline std::set<Word> filter(const std::vector<Word>& words, const std::function<bool(const Word&)>& keep) {
    std::set<Word> out;
    for (const Word& w : words)
        if (keep(w)) out.insert(w);
    return out;
}

inline std::set<Word> shorter_than(const std::set<Word>& words, std::size_t n) {
    std::set<Word> out;
    for (const Word& w : words)
        if (w.size() <= n) out.insert(w);
    return out;
}

inline std::size_t count(const Word& w, Sym s) {
    std::size_t n = 0;
    for (Sym x : w) n += x == s;
    return n;
}

/// a1^n b1^n ... ak^n bk^n with n >= 1, where blocks[2i] = a_(i+1) and blocks[2i+1] = b_(i+1).
inline bool equal_blocks(const Word& w, const std::vector<Sym>& blocks) {
    std::size_t pos = 0, n = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::size_t run = 0;
        while (pos < w.size() && w[pos] == blocks[b]) ++pos, ++run;
        if (b == 0) n = run;
        if (run == 0 || run != n) return false;
    }
    return pos == w.size();
}

/// Words of the shape x1^n1 x2^n2 ... with n1 + n2 + ... <= limit; a superset of any
/// language whose words list the block letters in order.
inline std::vector<Word> block_words(const std::vector<Sym>& blocks, std::size_t limit) {
    std::vector<Word> out;
    std::function<void(std::size_t, Word)> go = [&](std::size_t b, Word w) {
        if (b == blocks.size()) {
            out.push_back(std::move(w));
            return;
        }
        for (std::size_t n = 0; w.size() + n <= limit; ++n) {
            Word next = w;
            next.insert(next.end(), n, blocks[b]);
            go(b + 1, std::move(next));
        }
    };
    go(0, {});
    return out;
}

/// w $ w with as many a as b in w.
inline bool dollar_copy(const Word& w, Sym a, Sym b, Sym dollar) {
    if (count(w, dollar) != 1 || w.size() % 2 == 0) return false;
    const std::size_t half = w.size() / 2;
    if (w[half] != dollar) return false;
    const Word left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(half));
    const Word right(w.begin() + static_cast<std::ptrdiff_t>(half) + 1, w.end());
    return left == right && count(left, a) == count(left, b);
}

/// Properly nested brackets, each opener paired with its own closer.
inline bool bracket_matched(const Word& w, const std::map<Sym, Sym>& closer_of) {
    std::vector<Sym> open;
    for (Sym s : w) {
        if (closer_of.count(s)) {
            open.push_back(closer_of.at(s));
        } else {
            if (open.empty() || open.back() != s) return false;
            open.pop_back();
        }
    }
    return open.empty();
}

inline bool square(const Word& w) {
    if (w.size() % 2) return false;
    const auto half = static_cast<std::ptrdiff_t>(w.size() / 2);
    return std::equal(w.begin(), w.begin() + half, w.begin() + half);
}

/// Exhaustive subset search; returns a subset (0-based positions) summing to target.
inline std::optional<std::vector<std::size_t>> subset_sum(const std::vector<std::uint64_t>& xs, std::uint64_t target) {
    for (std::uint64_t mask = 0; mask < (1ULL << xs.size()); ++mask) {
        std::uint64_t s = 0;
        std::vector<std::size_t> pick;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (mask >> i & 1U) s += xs[i], pick.push_back(i);
        if (s == target) return pick;
    }
    return std::nullopt;
}

/// Language of a CFG under regular control: free-position rewriting, where the label sequence
/// must be accepted by the automaton. Searches (automaton state, form) pairs; forms and label
/// sequences are bounded by max_form and max_steps.
inline std::set<Word> controlled_language(const stategram::ControlledCfg& c, std::size_t max_form, std::size_t max_steps) {
    const auto& g = c.base;
    const auto& a = c.control;
    using Node = std::pair<std::uint32_t, Word>;
    std::set<Node> seen;
    std::deque<std::pair<Node, std::size_t>> queue;
    std::set<Word> out;
    Node start{a.initial, Word{Sym::nonterminal(g.axiom)}};
    seen.insert(start);
    queue.push_back({start, 0});
    while (!queue.empty()) {
        auto [node, depth] = queue.front();
        queue.pop_front();
        const auto& [q, form] = node;
        bool terminal = std::none_of(form.begin(), form.end(), [](Sym s) { return s.is_nonterminal(); });
        if (terminal) {
            if (a.is_final(q)) out.insert(form);
            continue;
        }
        if (depth == max_steps) continue;
        for (const auto& e : a.edges) {
            if (e.from != q) continue;
            const auto& p = g.productions[e.label];
            for (std::size_t i = 0; i < form.size(); ++i) {
                if (form[i] != Sym::nonterminal(p.lhs)) continue;
                Word next(form.begin(), form.begin() + static_cast<std::ptrdiff_t>(i));
                next.insert(next.end(), p.rhs.begin(), p.rhs.end());
                next.insert(next.end(), form.begin() + static_cast<std::ptrdiff_t>(i) + 1, form.end());
                if (next.size() > max_form) continue;
                Node n{e.to, std::move(next)};
                if (seen.insert(n).second) queue.push_back({n, depth + 1});
            }
        }
    }
    return out;
}

}  // namespace oracle
