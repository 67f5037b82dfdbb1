#include "stategram/derive.hpp"

#include <algorithm>
#include <unordered_set>

#include "stategram/transform.hpp"

namespace stategram {

std::size_t DerivationConfig::nonterminal_count() const {
    return static_cast<std::size_t>(
        std::count_if(form.begin(), form.end(), [](Sym s) { return s.is_nonterminal(); }));
}

bool DerivationConfig::is_terminal() const {
    return std::all_of(form.begin(), form.end(), [](Sym s) { return s.is_terminal(); });
}

namespace {
inline void mix(std::size_t& h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}
}  // namespace

std::size_t DerivationConfigHash::operator()(const DerivationConfig& c) const {
    std::size_t h = c.state;
    for (auto v : c.counters) mix(h, static_cast<std::uint64_t>(v));
    for (auto p : c.phases) mix(h, static_cast<std::uint64_t>(p));
    for (auto r : c.reversals_used) mix(h, r);
    mix(h, c.erased);
    for (Sym s : c.form) mix(h, s.code());
    return h;
}

std::string to_string(DerivationMode m) {
    switch (m) {
        case DerivationMode::Free: return "free";
        case DerivationMode::Leftmost: return "leftmost";
        case DerivationMode::Leftish: return "leftish";
        case DerivationMode::Circular: return "circular";
        case DerivationMode::Controlled: return "controlled";
    }
    return "?";
}

std::optional<DerivationMode> parse_mode(std::string_view text) {
    for (auto m : {DerivationMode::Free, DerivationMode::Leftmost, DerivationMode::Leftish,
                   DerivationMode::Circular, DerivationMode::Controlled})
        if (to_string(m) == text) return m;
    return std::nullopt;
}

std::size_t Derivation::index() const {
    std::size_t m = start.nonterminal_count();
    for (const auto& s : steps) m = std::max(m, s.config.nonterminal_count());
    return m;
}

void check_mode(const StateGrammar& g, DerivationMode mode) {
    if ((mode == DerivationMode::Leftish || mode == DerivationMode::Circular) && !g.counter_free())
        throw ModeError(to_string(mode) + " derivations are only defined for grammars without counters");
    if (mode == DerivationMode::Controlled && !g.control)
        throw ModeError("controlled derivations need a V1/V2 partition");
}

DerivationConfig initial_config(const StateGrammar& g) {
    DerivationConfig c;
    c.state = g.initial;
    c.counters.assign(g.counters.count, 0);
    c.phases.assign(g.counters.count, Phase::NotStarted);
    c.reversals_used.assign(g.counters.count, 0);
    c.form = {Sym::nonterminal(g.axiom)};
    return c;
}

bool is_accepting(const StateGrammar& g, const DerivationConfig& c) {
    if (!g.is_final(c.state) || !c.is_terminal()) return false;
    switch (g.acceptance) {
        case Acceptance::FinalState: return true;
        case Acceptance::FinalStateZeroCounters:
            return std::all_of(c.counters.begin(), c.counters.end(), [](auto v) { return v == 0; });
        case Acceptance::AllCountersEqual:
            return std::adjacent_find(c.counters.begin(), c.counters.end(), std::not_equal_to<>()) ==
                   c.counters.end();
    }
    return false;
}

namespace {

class Engine {
public:
    explicit Engine(const StateGrammar& g) : g_(g), width_(g.nonterminals.size()) {
        table_.resize(g.states.size() * width_);
        for (std::size_t i = 0; i < g.productions.size(); ++i) {
            const Production& p = g.productions[i];
            if (p.from < g.states.size() && p.lhs < width_) table_[p.from * width_ + p.lhs].push_back(i);
        }
    }

    const std::vector<std::size_t>& rules(StateId q, NonterminalId a) const { return table_[q * width_ + a]; }

    std::optional<DerivationConfig> apply(const DerivationConfig& c, std::size_t r, std::size_t pos,
                                          bool track_erasure) const {
        const Production& p = g_.productions[r];
        if (p.from != c.state) return std::nullopt;
        DerivationConfig n;
        n.state = p.to;
        n.counters = c.counters;
        n.phases = c.phases;
        n.reversals_used = c.reversals_used;
        n.erased = c.erased;
        for (std::size_t j = 0; j < n.counters.size(); ++j) {
            const std::int64_t v = c.counters[j];
            if (p.guard[j] == Guard::Zero && v != 0) return std::nullopt;
            if (p.guard[j] == Guard::Positive && v == 0) return std::nullopt;
            const std::int64_t u = p.update[j];
            if (v + u < 0) return std::nullopt;
            n.counters[j] = v + u;
            if (u > 0) {
                if (n.phases[j] == Phase::Decreasing) ++n.reversals_used[j];
                n.phases[j] = Phase::Increasing;
            } else if (u < 0) {
                if (n.phases[j] == Phase::Increasing) ++n.reversals_used[j];
                n.phases[j] = Phase::Decreasing;
            }
            auto bound = g_.counters.bound(j);
            if (bound && n.reversals_used[j] > *bound) return std::nullopt;
        }
        if (track_erasure && g_.control) {
            const ControlPartition& cp = *g_.control;
            for (Sym s : p.rhs) {
                if (!s.is_nonterminal()) continue;
                if (auto i = cp.position(s.index()); i && (n.erased >> *i) & 1U) return std::nullopt;
            }
            if (auto i = cp.position(p.lhs)) {
                bool keeps = std::find(p.rhs.begin(), p.rhs.end(), Sym::nonterminal(p.lhs)) != p.rhs.end();
                if (!keeps) n.erased |= std::uint64_t{1} << *i;
            }
        }
        n.form.reserve(c.form.size() + p.rhs.size());
        n.form.insert(n.form.end(), c.form.begin(), c.form.begin() + static_cast<std::ptrdiff_t>(pos));
        n.form.insert(n.form.end(), p.rhs.begin(), p.rhs.end());
        n.form.insert(n.form.end(), c.form.begin() + static_cast<std::ptrdiff_t>(pos) + 1, c.form.end());
        return n;
    }

    void at(const DerivationConfig& c, std::size_t pos, bool track, std::vector<Successor>& out) const {
        for (std::size_t r : rules(c.state, c.form[pos].index()))
            if (auto n = apply(c, r, pos, track)) out.push_back({std::move(*n), {r}});
    }

    void successors(DerivationMode mode, const DerivationConfig& c, std::vector<Successor>& out) const {
        const Word& f = c.form;
        switch (mode) {
            case DerivationMode::Free:
                for (std::size_t i = 0; i < f.size(); ++i)
                    if (f[i].is_nonterminal()) at(c, i, false, out);
                break;
            case DerivationMode::Leftmost:
                for (std::size_t i = 0; i < f.size(); ++i) {
                    if (f[i].is_nonterminal()) {
                        at(c, i, false, out);
                        break;
                    }
                }
                break;
            case DerivationMode::Leftish:
                for (std::size_t i = 0; i < f.size(); ++i) {
                    if (f[i].is_nonterminal() && !rules(c.state, f[i].index()).empty()) {
                        at(c, i, false, out);
                        break;
                    }
                }
                break;
            case DerivationMode::Controlled: {
                const ControlPartition& cp = *g_.control;
                bool v1_seen = false;
                for (std::size_t i = 0; i < f.size(); ++i) {
                    if (!f[i].is_nonterminal()) continue;
                    if (cp.contains(f[i].index())) {
                        at(c, i, true, out);
                    } else if (!v1_seen) {
                        v1_seen = true;
                        at(c, i, true, out);
                    }
                }
                break;
            }
            case DerivationMode::Circular:
                if (!c.is_terminal()) sweep(c, out);
                break;
        }
    }

    void sweep(const DerivationConfig& c, std::vector<Successor>& out) const {
        std::vector<Successor> raw;
        Word built;
        std::vector<std::size_t> used;
        sweep_from(c, 0, c.state, built, used, raw);
        std::unordered_set<DerivationConfig, DerivationConfigHash> seen;
        for (auto& s : raw)
            if (seen.insert(s.config).second) out.push_back(std::move(s));
    }

private:
    void sweep_from(const DerivationConfig& c, std::size_t i, StateId st, Word& built, std::vector<std::size_t>& used,
                    std::vector<Successor>& out) const {
        if (i == c.form.size()) {
            DerivationConfig n = c;
            n.state = st;
            n.form = built;
            out.push_back({std::move(n), used});
            return;
        }
        const Sym s = c.form[i];
        if (s.is_terminal()) {
            built.push_back(s);
            sweep_from(c, i + 1, st, built, used, out);
            built.pop_back();
            return;
        }
        for (std::size_t r : rules(st, s.index())) {
            const Production& p = g_.productions[r];
            built.insert(built.end(), p.rhs.begin(), p.rhs.end());
            used.push_back(r);
            sweep_from(c, i + 1, p.to, built, used, out);
            used.pop_back();
            built.resize(built.size() - p.rhs.size());
        }
    }

    const StateGrammar& g_;
    std::size_t width_;
    std::vector<std::vector<std::size_t>> table_;
};

bool within(const DerivationConfig& c, const ExplorationBudget& b) {
    if (c.form.size() > b.max_form_len) return false;
    for (auto v : c.counters)
        if (v > b.max_counter) return false;
    if (b.max_index && c.nonterminal_count() > *b.max_index) return false;
    return true;
}

// Breadth-first search; the visitor returns false to stop early.
std::size_t bfs(const StateGrammar& g, DerivationMode mode, const ExplorationBudget& b,
                const std::function<bool(const DerivationConfig&)>& visit) {
    check_mode(g, mode);
    Engine engine(g);
    std::unordered_set<DerivationConfig, DerivationConfigHash> seen;
    std::vector<DerivationConfig> frontier{initial_config(g)};
    if (!within(frontier[0], b)) return 0;
    seen.insert(frontier[0]);
    if (!visit(frontier[0])) return 1;
    std::vector<Successor> succ;
    for (std::size_t depth = 0; depth < b.max_steps && !frontier.empty(); ++depth) {
        std::vector<DerivationConfig> next;
        for (const auto& c : frontier) {
            succ.clear();
            engine.successors(mode, c, succ);
            for (auto& s : succ) {
                if (!within(s.config, b) || !seen.insert(s.config).second) continue;
                if (!visit(s.config)) return seen.size();
                next.push_back(std::move(s.config));
            }
        }
        frontier = std::move(next);
    }
    return seen.size();
}

// Terminals are never rewritten, so the terminal segments of a form must occur in w in order,
// with the first segment a prefix and the last a suffix.
bool compatible(const Word& form, const Word& w) {
    std::vector<std::pair<std::size_t, std::size_t>> segs;
    std::size_t start = 0;
    bool has_nt = false;
    for (std::size_t i = 0; i <= form.size(); ++i) {
        if (i == form.size() || form[i].is_nonterminal()) {
            segs.emplace_back(start, i);
            start = i + 1;
            if (i < form.size()) has_nt = true;
        }
    }
    if (!has_nt) return form == w;
    auto seg_eq = [&](std::size_t fb, std::size_t fe, std::size_t wb) {
        return std::equal(form.begin() + static_cast<std::ptrdiff_t>(fb), form.begin() + static_cast<std::ptrdiff_t>(fe),
                          w.begin() + static_cast<std::ptrdiff_t>(wb));
    };
    const auto [fb0, fe0] = segs.front();
    const auto [fbn, fen] = segs.back();
    const std::size_t len0 = fe0 - fb0;
    const std::size_t lenn = fen - fbn;
    if (len0 + lenn > w.size()) return false;
    if (!seg_eq(fb0, fe0, 0) || !seg_eq(fbn, fen, w.size() - lenn)) return false;
    std::size_t pos = len0;
    const std::size_t limit = w.size() - lenn;
    for (std::size_t s = 1; s + 1 < segs.size(); ++s) {
        const auto [fb, fe] = segs[s];
        const std::size_t len = fe - fb;
        if (len == 0) continue;
        bool found = false;
        for (; pos + len <= limit; ++pos) {
            if (seg_eq(fb, fe, pos)) {
                found = true;
                pos += len;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

std::vector<Successor> step(const StateGrammar& g, DerivationMode mode, const DerivationConfig& c) {
    check_mode(g, mode);
    std::vector<Successor> out;
    Engine(g).successors(mode, c, out);
    return out;
}

std::vector<Successor> sweep_circular(const StateGrammar& g, const DerivationConfig& c) {
    check_mode(g, DerivationMode::Circular);
    if (c.is_terminal()) throw PreconditionError("circular sweep needs at least one nonterminal occurrence");
    std::vector<Successor> out;
    Engine(g).sweep(c, out);
    return out;
}

std::size_t for_each_reachable(const StateGrammar& g, DerivationMode mode, const ExplorationBudget& b,
                               const std::function<void(const DerivationConfig&)>& visit) {
    return bfs(g, mode, b, [&](const DerivationConfig& c) {
        visit(c);
        return true;
    });
}

std::set<Word> enumerate(const StateGrammar& g, DerivationMode mode, const ExplorationBudget& b,
                         const EnumerateOptions& opts) {
    check_mode(g, mode);
    if (mode == DerivationMode::Controlled && opts.controlled == ControlledEnforcement::ExpandStates) {
        EnumerateOptions flags;
        flags.controlled = ControlledEnforcement::HistoryFlags;
        return enumerate(expand_ccfgs_states(g), mode, b, flags);
    }
    std::set<Word> words;
    bfs(g, mode, b, [&](const DerivationConfig& c) {
        if (is_accepting(g, c)) words.insert(c.form);
        return !(b.max_words && words.size() >= *b.max_words);
    });
    return words;
}

std::vector<DerivationConfig> terminal_configs(const StateGrammar& g, DerivationMode mode,
                                               const ExplorationBudget& b) {
    std::vector<DerivationConfig> out;
    bfs(g, mode, b, [&](const DerivationConfig& c) {
        if (c.is_terminal()) out.push_back(c);
        return true;
    });
    return out;
}

std::optional<Derivation> member(const StateGrammar& g, DerivationMode mode, const Word& w,
                                 const ExplorationBudget& b) {
    check_mode(g, mode);
    struct Node {
        DerivationConfig config;
        std::size_t parent;
        std::vector<std::size_t> rules;
    };
    Engine engine(g);
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<Node> nodes;
    std::unordered_set<DerivationConfig, DerivationConfigHash> seen;
    DerivationConfig init = initial_config(g);
    if (!within(init, b)) return std::nullopt;
    seen.insert(init);
    nodes.push_back({init, none, {}});

    auto build = [&](std::size_t idx) {
        Derivation d;
        std::vector<std::size_t> chain;
        for (std::size_t i = idx; i != none; i = nodes[i].parent) chain.push_back(i);
        std::reverse(chain.begin(), chain.end());
        d.start = nodes[chain[0]].config;
        for (std::size_t i = 1; i < chain.size(); ++i)
            d.steps.push_back({nodes[chain[i]].rules, nodes[chain[i]].config});
        return d;
    };

    if (is_accepting(g, init) && init.form == w) return build(0);
    std::size_t level_begin = 0;
    std::vector<Successor> succ;
    for (std::size_t depth = 0; depth < b.max_steps; ++depth) {
        const std::size_t level_end = nodes.size();
        if (level_begin == level_end) break;
        for (std::size_t i = level_begin; i < level_end; ++i) {
            succ.clear();
            engine.successors(mode, nodes[i].config, succ);
            for (auto& s : succ) {
                if (!within(s.config, b) || !compatible(s.config.form, w)) continue;
                if (!seen.insert(s.config).second) continue;
                nodes.push_back({std::move(s.config), i, std::move(s.rules)});
                if (is_accepting(g, nodes.back().config)) return build(nodes.size() - 1);
            }
        }
        level_begin = level_end;
    }
    return std::nullopt;
}

bool replay(const StateGrammar& g, DerivationMode mode, const Derivation& d) {
    if (!(d.start == initial_config(g))) return false;
    const DerivationConfig* prev = &d.start;
    for (const auto& s : d.steps) {
        auto succ = step(g, mode, *prev);
        bool found = std::any_of(succ.begin(), succ.end(), [&](const Successor& x) {
            return x.rules == s.rules && x.config == s.config;
        });
        if (!found) return false;
        prev = &s.config;
    }
    return true;
}

std::string format_config(const StateGrammar& g, const DerivationConfig& c) {
    std::string out = "(" + g.states.at(c.state);
    if (!c.counters.empty()) {
        out += ", [";
        for (std::size_t j = 0; j < c.counters.size(); ++j) {
            if (j) out += ",";
            out += std::to_string(c.counters[j]);
        }
        out += "]";
    }
    return out + ", " + g.spell(c.form, " ") + ")";
}

std::string format_derivation(const StateGrammar& g, const Derivation& d) {
    std::string out = "    " + format_config(g, d.start) + "\n";
    for (const auto& s : d.steps) {
        std::string label;
        for (std::size_t r : s.rules) label += (label.empty() ? "p" : " p") + std::to_string(r + 1);
        out += "=> " + format_config(g, s.config) + "  by " + label + "\n";
    }
    return out;
}

}  // namespace stategram
