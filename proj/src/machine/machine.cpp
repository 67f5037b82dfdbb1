#include "stategram/machine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace stategram {

bool CounterMachine::is_accepting(StateId q) const {
    return std::find(accepting.begin(), accepting.end(), q) != accepting.end();
}

std::string CounterMachine::spell(const Word& w) const {
    StateGrammar g;
    g.terminals = inputs;
    return g.spell(w);
}

Word CounterMachine::parse_word(std::string_view text) const {
    StateGrammar g;
    g.terminals = inputs;
    return g.parse_word(text);
}

std::vector<std::string> validate(const CounterMachine& m) {
    std::vector<std::string> out;
    const std::size_t k = m.counters.count;
    if (m.initial >= m.states.size()) out.push_back("initial state undeclared");
    for (StateId q : m.accepting)
        if (q >= m.states.size()) out.push_back("accepting state undeclared");
    if (m.pushdown && m.pushdown->bottom >= m.pushdown->alphabet.size()) out.push_back("bottom marker undeclared");
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        const MachineTransition& t = m.transitions[i];
        const std::string at = "transition " + std::to_string(i + 1) + ": ";
        if (t.from >= m.states.size() || t.to >= m.states.size()) out.push_back(at + "undeclared state");
        if (t.input && *t.input >= m.inputs.size()) out.push_back(at + "undeclared input symbol");
        if (t.guard.size() != k || t.update.size() != k) out.push_back(at + "counter arity");
        for (std::size_t j = 0; j < std::min(k, std::min(t.guard.size(), t.update.size())); ++j) {
            if (t.guard[j] == Guard::Zero && t.update[j] < 0) out.push_back(at + "decrement guarded by zero test");
            if (t.update[j] < -1 || t.update[j] > 1) out.push_back(at + "non-unit counter update");
        }
        if (!m.pushdown && (t.top || !t.push.empty())) out.push_back(at + "stack use without a pushdown");
        if (m.pushdown) {
            const std::size_t n = m.pushdown->alphabet.size();
            if (t.top && *t.top >= n) out.push_back(at + "undeclared stack symbol");
            for (StackSym s : t.push)
                if (s >= n) out.push_back(at + "undeclared stack symbol");
        }
    }
    return out;
}

MachineConfig initial_config(const CounterMachine& m) {
    MachineConfig c;
    c.state = m.initial;
    c.counters.assign(m.counters.count, 0);
    c.phases.assign(m.counters.count, Phase::NotStarted);
    c.reversals_used.assign(m.counters.count, 0);
    if (m.pushdown) c.stack.push_back(m.pushdown->bottom);
    return c;
}

std::optional<MachineConfig> apply(const CounterMachine& m, const MachineConfig& c, std::size_t ti,
                                   SearchStats* stats) {
    const MachineTransition& t = m.transitions[ti];
    if (t.from != c.state) return std::nullopt;
    if (t.top && (c.stack.empty() || c.stack.back() != *t.top)) return std::nullopt;
    MachineConfig n = c;
    n.state = t.to;
    for (std::size_t j = 0; j < n.counters.size(); ++j) {
        const std::int64_t v = c.counters[j];
        if (t.guard[j] == Guard::Zero && v != 0) return std::nullopt;
        if (t.guard[j] == Guard::Positive && v == 0) return std::nullopt;
        const std::int64_t u = t.update[j];
        if (v + u < 0) return std::nullopt;
        n.counters[j] = v + u;
        if (u > 0) {
            if (n.phases[j] == Phase::Decreasing) ++n.reversals_used[j];
            n.phases[j] = Phase::Increasing;
        } else if (u < 0) {
            if (n.phases[j] == Phase::Increasing) ++n.reversals_used[j];
            n.phases[j] = Phase::Decreasing;
        }
        auto bound = m.counters.bound(j);
        if (bound && n.reversals_used[j] > *bound) return std::nullopt;
    }
    if (t.top) n.stack.pop_back();
    n.stack.insert(n.stack.end(), t.push.rbegin(), t.push.rend());
    const auto net = static_cast<std::int64_t>(t.push.size()) - (t.top ? 1 : 0);
    if (net > 0) {
        if (n.stack_phase == Phase::Decreasing) ++n.stack_reversals;
        n.stack_phase = Phase::Increasing;
    } else if (net < 0) {
        if (n.stack_phase == Phase::Increasing) ++n.stack_reversals;
        n.stack_phase = Phase::Decreasing;
    }
    if (m.pushdown && m.pushdown->reversal_bound && n.stack_reversals > *m.pushdown->reversal_bound) {
        if (stats) ++stats->stack_reversal_prunes;
        return std::nullopt;
    }
    if (stats) stats->max_stack_reversals = std::max(stats->max_stack_reversals, n.stack_reversals);
    return n;
}

namespace {

inline void mix(std::size_t& h, std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

// Search node key: a machine config plus either the input position or the word read so far.
struct Key {
    MachineConfig config;
    Word read;
    std::size_t pos = 0;
    bool operator==(const Key&) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key& k) const {
        const MachineConfig& c = k.config;
        std::size_t h = c.state;
        for (auto v : c.counters) mix(h, static_cast<std::uint64_t>(v));
        for (auto p : c.phases) mix(h, static_cast<std::uint64_t>(p));
        for (auto r : c.reversals_used) mix(h, r);
        for (auto s : c.stack) mix(h, s);
        mix(h, static_cast<std::uint64_t>(c.stack_phase));
        mix(h, c.stack_reversals);
        for (Sym s : k.read) mix(h, s.code());
        mix(h, k.pos);
        return h;
    }
};

struct Node {
    Key key;
    std::size_t parent = 0;
    std::size_t transition = 0;
    std::size_t depth = 0;
};

// Transitions grouped by source state.
std::vector<std::vector<std::size_t>> by_state(const CounterMachine& m) {
    std::vector<std::vector<std::size_t>> out(m.states.size());
    for (std::size_t i = 0; i < m.transitions.size(); ++i) out[m.transitions[i].from].push_back(i);
    return out;
}

MachineRun rebuild(const std::vector<Node>& nodes, std::size_t at, const MachineConfig& start) {
    MachineRun run;
    run.start = start;
    std::vector<std::size_t> chain;
    for (std::size_t i = at; i != 0; i = nodes[i].parent) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    for (std::size_t i : chain) {
        run.transitions.push_back(nodes[i].transition);
        run.configs.push_back(nodes[i].key.config);
    }
    return run;
}

bool within(const MachineConfig& c, const ExplorationBudget& b) {
    for (auto v : c.counters)
        if (v > b.max_counter) return false;
    // The bottom marker does not count towards the height.
    return c.stack.size() <= b.max_form_len + 1;
}

// Breadth-first search; `read_fixed` set means inputs must follow that word.
template <class Accept>
std::optional<std::size_t> search(const CounterMachine& m, const ExplorationBudget& b, const Word* read_fixed,
                                  SearchStats* stats, std::vector<Node>& nodes, Accept&& accept) {
    const auto table = by_state(m);
    std::unordered_map<Key, std::size_t, KeyHash> seen;
    nodes.push_back({Key{initial_config(m), {}, 0}, 0, 0, 0});
    seen.emplace(nodes[0].key, 0);
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        if (stats) ++stats->visited;
        if (accept(nodes[head].key)) return head;
        if (nodes[head].depth >= b.max_steps) continue;
        for (std::size_t ti : table[nodes[head].key.config.state]) {
            const MachineTransition& t = m.transitions[ti];
            Key next;
            if (read_fixed) {
                next.pos = nodes[head].key.pos;
                if (t.input) {
                    if (next.pos >= read_fixed->size() || (*read_fixed)[next.pos] != Sym::terminal(*t.input))
                        continue;
                    ++next.pos;
                }
            } else {
                next.read = nodes[head].key.read;
                if (t.input) {
                    if (next.read.size() >= b.max_form_len) {
                        if (stats) ++stats->budget_prunes;
                        continue;
                    }
                    next.read.push_back(Sym::terminal(*t.input));
                }
            }
            auto c = apply(m, nodes[head].key.config, ti, stats);
            if (!c) continue;
            if (!within(*c, b)) {
                if (stats) ++stats->budget_prunes;
                continue;
            }
            next.config = std::move(*c);
            if (seen.contains(next)) continue;
            seen.emplace(next, nodes.size());
            nodes.push_back({std::move(next), head, ti, nodes[head].depth + 1});
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<MachineRun> accepts(const CounterMachine& m, const Word& w, const ExplorationBudget& b,
                                  SearchStats* stats) {
    std::vector<Node> nodes;
    auto hit = search(m, b, &w, stats, nodes,
                      [&](const Key& k) { return k.pos == w.size() && m.is_accepting(k.config.state); });
    if (!hit) return std::nullopt;
    MachineRun run = rebuild(nodes, *hit, nodes[0].key.config);
    run.word = w;
    return run;
}

std::set<Word> enumerate_machine(const CounterMachine& m, const ExplorationBudget& b, SearchStats* stats) {
    std::set<Word> words;
    std::vector<Node> nodes;
    search(m, b, nullptr, stats, nodes, [&](const Key& k) {
        if (m.is_accepting(k.config.state)) words.insert(k.read);
        return b.max_words && words.size() >= *b.max_words;
    });
    return words;
}

bool replay(const CounterMachine& m, const MachineRun& run) {
    if (!(run.start == initial_config(m))) return false;
    if (run.transitions.size() != run.configs.size()) return false;
    MachineConfig cur = run.start;
    Word read;
    for (std::size_t i = 0; i < run.transitions.size(); ++i) {
        if (run.transitions[i] >= m.transitions.size()) return false;
        auto next = apply(m, cur, run.transitions[i]);
        if (!next || !(*next == run.configs[i])) return false;
        if (auto in = m.transitions[run.transitions[i]].input) read.push_back(Sym::terminal(*in));
        cur = std::move(*next);
    }
    return m.is_accepting(cur.state) && read == run.word;
}

EmptinessResult ncm_empty_bounded(const CounterMachine& m, std::uint64_t cap) {
    if (m.pushdown) throw PreconditionError("emptiness search needs a stackless machine");
    const auto table = by_state(m);
    EmptinessResult result;
    std::vector<Node> nodes;
    std::unordered_map<Key, std::size_t, KeyHash> seen;
    nodes.push_back({Key{initial_config(m), {}, 0}, 0, 0, 0});
    seen.emplace(nodes[0].key, 0);
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        if (m.is_accepting(nodes[head].key.config.state)) {
            result.nonempty = true;
            MachineRun run = rebuild(nodes, head, nodes[0].key.config);
            for (std::size_t t : run.transitions)
                if (auto in = m.transitions[t].input) run.word.push_back(Sym::terminal(*in));
            result.witness = std::move(run);
            break;
        }
        for (std::size_t ti : table[nodes[head].key.config.state]) {
            auto c = apply(m, nodes[head].key.config, ti);
            if (!c) continue;
            if (std::any_of(c->counters.begin(), c->counters.end(),
                            [&](std::int64_t v) { return static_cast<std::uint64_t>(v) > cap; })) {
                result.cap_reached = true;
                continue;
            }
            Key next{std::move(*c), {}, 0};
            if (seen.contains(next)) continue;
            seen.emplace(next, nodes.size());
            nodes.push_back({std::move(next), head, ti, nodes[head].depth + 1});
        }
    }
    result.explored = nodes.size();
    return result;
}

std::string format_run(const CounterMachine& m, const MachineRun& run) {
    std::ostringstream os;
    auto line = [&](const MachineConfig& c, std::size_t read) {
        os << m.states[c.state];
        if (!c.counters.empty()) {
            os << " [";
            for (std::size_t j = 0; j < c.counters.size(); ++j) os << (j ? "," : "") << c.counters[j];
            os << "]";
        }
        if (m.pushdown) {
            os << " stack ";
            for (auto it = c.stack.rbegin(); it != c.stack.rend(); ++it) os << m.pushdown->alphabet[*it];
        }
        Word prefix(run.word.begin(), run.word.begin() + static_cast<std::ptrdiff_t>(read));
        os << " read " << m.spell(prefix) << "\n";
    };
    std::size_t read = 0;
    line(run.start, 0);
    for (std::size_t i = 0; i < run.configs.size(); ++i) {
        if (m.transitions[run.transitions[i]].input) ++read;
        os << "  t" << run.transitions[i] + 1 << " ";
        line(run.configs[i], std::min(read, run.word.size()));
    }
    return os.str();
}

}  // namespace stategram
