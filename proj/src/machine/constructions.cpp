#include <algorithm>

#include "stategram/machine.hpp"
#include "stategram/transform.hpp"

namespace stategram {

namespace {

// Accumulates transitions, splitting multi-symbol reads and large increments into unit moves
// through fresh intermediate states.
class Emitter {
public:
    explicit Emitter(CounterMachine& m) : m_(m) {}

    StateId state(const std::string& base) {
        auto taken = [&](const std::string& s) {
            return std::find(m_.states.begin(), m_.states.end(), s) != m_.states.end();
        };
        m_.states.push_back(fresh_name(base, taken));
        return static_cast<StateId>(m_.states.size() - 1);
    }

    /// The first move carries the guard, the stack action and the first unit of every update.
    void emit(StateId from, const Word& read, const std::vector<Guard>& guard, std::optional<StackSym> top,
              StateId to, std::vector<std::int64_t> update, std::vector<StackSym> push) {
        const std::size_t k = m_.counters.count;
        std::vector<std::optional<TerminalId>> inputs;
        for (Sym s : read) inputs.push_back(s.index());
        std::size_t extra = 0;
        for (auto u : update) extra = std::max<std::size_t>(extra, u > 1 ? static_cast<std::size_t>(u - 1) : 0);
        const std::size_t moves = std::max<std::size_t>({inputs.size(), 1 + extra, 1});
        inputs.resize(moves);

        StateId cur = from;
        for (std::size_t i = 0; i < moves; ++i) {
            MachineTransition t;
            t.from = cur;
            t.input = inputs[i];
            t.guard = i == 0 ? guard : std::vector<Guard>(k, Guard::Any);
            t.update.assign(k, 0);
            for (std::size_t j = 0; j < k; ++j)
                if (update[j] < 0 ? i == 0 : static_cast<std::int64_t>(i) < update[j]) t.update[j] = update[j] < 0 ? -1 : 1;
            if (i == 0) {
                t.top = top;
                t.push = push;
            }
            t.to = i + 1 == moves ? to : state(m_.states[from] + ">" + std::to_string(++chains_));
            cur = t.to;
            m_.transitions.push_back(std::move(t));
        }
    }

private:
    CounterMachine& m_;
    std::size_t chains_ = 0;
};

std::string bottom_name(const std::vector<std::string>& alphabet) {
    return fresh_name("Z0", [&](const std::string& s) {
        return std::find(alphabet.begin(), alphabet.end(), s) != alphabet.end();
    });
}

std::vector<Guard> any(std::size_t k) { return std::vector<Guard>(k, Guard::Any); }
std::vector<Guard> final_guard(const StateGrammar& g) {
    return std::vector<Guard>(g.counters.count,
                              g.acceptance == Acceptance::FinalStateZeroCounters ? Guard::Zero : Guard::Any);
}

void require_counted(const StateGrammar& g) {
    if (g.acceptance == Acceptance::AllCountersEqual)
        throw PreconditionError("convert monotonic counters with cfgmc_to_cfgsc first");
}

CounterMachine skeleton(const StateGrammar& g) {
    CounterMachine m;
    m.states = g.states;
    m.inputs = g.terminals;
    m.counters = g.counters;
    m.counters.update_style = UpdateStyle::Unit;
    return m;
}

}  // namespace

CounterMachine cfgsc_lm_to_npcm(const StateGrammar& g) {
    require_counted(g);
    if (g.control) throw PreconditionError("use ccfgs_to_npcm for controlled grammars");
    CounterMachine m = skeleton(g);
    const std::size_t k = g.counters.count;
    const auto nv = static_cast<StackSym>(g.nonterminals.size());
    Pushdown pd;
    pd.alphabet = g.nonterminals;
    pd.alphabet.insert(pd.alphabet.end(), g.terminals.begin(), g.terminals.end());
    pd.alphabet.push_back(bottom_name(pd.alphabet));
    pd.bottom = static_cast<StackSym>(pd.alphabet.size() - 1);
    m.pushdown = pd;
    auto code = [&](Sym s) { return s.is_nonterminal() ? s.index() : nv + s.index(); };

    Emitter e(m);
    const StateId init = e.state("init");
    const StateId acc = e.state("acc");
    m.initial = init;
    m.accepting = {acc};
    e.emit(init, {}, any(k), pd.bottom, g.initial, std::vector<std::int64_t>(k, 0), {g.axiom, pd.bottom});
    for (const Production& p : g.productions) {
        std::vector<StackSym> push;
        for (Sym s : p.rhs) push.push_back(code(s));
        e.emit(p.from, {}, p.guard, p.lhs, p.to, p.update, push);
    }
    for (StateId q = 0; q < g.states.size(); ++q)
        for (TerminalId t = 0; t < g.terminals.size(); ++t)
            e.emit(q, {Sym::terminal(t)}, any(k), nv + t, q, std::vector<std::int64_t>(k, 0), {});
    for (StateId f : g.finals) e.emit(f, {}, final_guard(g), pd.bottom, acc, std::vector<std::int64_t>(k, 0), {});
    return m;
}

CounterMachine rlgsc_to_ncm(const StateGrammar& g) {
    require_counted(g);
    if (classify(g).shape != Shape::RightLinear) throw PreconditionError("rlgsc_to_ncm needs a right-linear grammar");
    CounterMachine m;
    m.inputs = g.terminals;
    m.counters = g.counters;
    m.counters.update_style = UpdateStyle::Unit;
    const std::size_t k = g.counters.count;
    const std::size_t nv = g.nonterminals.size();
    // [q, A] at q * (|V| + 1) + A, and [q, done] at q * (|V| + 1) + |V|.
    for (const auto& q : g.states) {
        for (const auto& a : g.nonterminals) m.states.push_back("[" + q + "," + a + "]");
        m.states.push_back("[" + q + ",_]");
    }
    auto at = [&](StateId q, std::size_t a) { return static_cast<StateId>(q * (nv + 1) + a); };
    m.initial = at(g.initial, g.axiom);

    Emitter e(m);
    for (const Production& p : g.productions) {
        Word read = p.rhs;
        std::size_t next = nv;
        if (!read.empty() && read.back().is_nonterminal()) {
            next = read.back().index();
            read.pop_back();
        }
        e.emit(at(p.from, p.lhs), read, p.guard, std::nullopt, at(p.to, next), p.update, {});
    }
    if (g.acceptance == Acceptance::FinalStateZeroCounters && k > 0) {
        const StateId acc = e.state("acc");
        m.accepting = {acc};
        for (StateId f : g.finals) e.emit(at(f, nv), {}, final_guard(g), std::nullopt, acc, std::vector<std::int64_t>(k, 0), {});
    } else {
        for (StateId f : g.finals) m.accepting.push_back(at(f, nv));
    }
    return m;
}

CounterMachine lgsc_to_npcm1(const StateGrammar& g) {
    require_counted(g);
    if (!classify(g).is_linear()) throw PreconditionError("lgsc_to_npcm1 needs a linear grammar");
    CounterMachine m;
    m.inputs = g.terminals;
    m.counters = g.counters;
    m.counters.update_style = UpdateStyle::Unit;
    const std::size_t k = g.counters.count;
    const std::size_t nv = g.nonterminals.size();
    for (const auto& q : g.states) {
        for (const auto& a : g.nonterminals) m.states.push_back("[" + q + "," + a + "]");
        m.states.push_back("[" + q + ",_]");
    }
    auto at = [&](StateId q, std::size_t a) { return static_cast<StateId>(q * (nv + 1) + a); };
    m.initial = at(g.initial, g.axiom);
    Pushdown pd;
    pd.alphabet = g.terminals;
    pd.alphabet.push_back(bottom_name(pd.alphabet));
    pd.bottom = static_cast<StackSym>(g.terminals.size());
    pd.reversal_bound = 1;
    m.pushdown = pd;

    Emitter e(m);
    const std::vector<std::int64_t> still(k, 0);
    for (const Production& p : g.productions) {
        auto mid = std::find_if(p.rhs.begin(), p.rhs.end(), [](Sym s) { return s.is_nonterminal(); });
        Word read(p.rhs.begin(), mid);
        std::size_t next = nv;
        std::vector<StackSym> push;
        if (mid != p.rhs.end()) {
            next = mid->index();
            for (auto it = mid + 1; it != p.rhs.end(); ++it) push.push_back(it->index());
        }
        e.emit(at(p.from, p.lhs), read, p.guard, std::nullopt, at(p.to, next), p.update, push);
    }
    // Matching phase: the pending right contexts are popped against the input.
    for (StateId q = 0; q < g.states.size(); ++q)
        for (TerminalId t = 0; t < g.terminals.size(); ++t)
            e.emit(at(q, nv), {Sym::terminal(t)}, any(k), t, at(q, nv), still, {});
    const StateId acc = e.state("acc");
    m.accepting = {acc};
    for (StateId f : g.finals) e.emit(at(f, nv), {}, final_guard(g), pd.bottom, acc, still, {pd.bottom});
    return m;
}

CounterMachine ccfgs_to_npcm(const StateGrammar& input) {
    if (!input.control) throw PreconditionError("ccfgs_to_npcm needs a control partition");
    if (input.control->variant != V2Relaxation::None)
        throw PreconditionError("no machine construction for relaxed V2 rules");
    if (input.counters.count > 0) throw PreconditionError("controlled grammars carry no counters");
    const StateGrammar g = expand_ccfgs_states(input);
    const ControlPartition& part = *g.control;
    const std::size_t k = part.v2.size();

    CounterMachine m;
    m.states = g.states;
    m.inputs = g.terminals;
    m.counters = CounterSpec::reversal_bounded(std::vector<std::uint32_t>(k, 1));
    // Stack alphabet: nonterminals (only V1 ones are ever pushed), terminals, bottom marker.
    const auto nv = static_cast<StackSym>(g.nonterminals.size());
    Pushdown pd;
    pd.alphabet = g.nonterminals;
    pd.alphabet.insert(pd.alphabet.end(), g.terminals.begin(), g.terminals.end());
    pd.alphabet.push_back(bottom_name(pd.alphabet));
    pd.bottom = static_cast<StackSym>(pd.alphabet.size() - 1);
    m.pushdown = pd;

    Emitter e(m);
    const StateId init = e.state("init");
    const StateId acc = e.state("acc");
    m.initial = init;
    m.accepting = {acc};
    const std::vector<std::int64_t> still(k, 0);
    e.emit(init, {}, any(k), pd.bottom, g.initial, still, {g.axiom, pd.bottom});
    for (const Production& p : g.productions) {
        std::vector<std::int64_t> count(k, 0);
        std::vector<StackSym> push;
        for (Sym s : p.rhs) {
            if (s.is_nonterminal()) {
                if (auto i = part.position(s.index())) {
                    ++count[*i];
                    continue;
                }
                push.push_back(s.index());
            } else {
                push.push_back(nv + s.index());
            }
        }
        if (auto i = part.position(p.lhs)) {
            std::vector<Guard> guard = any(k);
            guard[*i] = Guard::Positive;
            count[*i] -= 1;
            e.emit(p.from, {}, guard, std::nullopt, p.to, count, {});
        } else {
            e.emit(p.from, {}, any(k), p.lhs, p.to, count, push);
        }
    }
    for (StateId q = 0; q < g.states.size(); ++q)
        for (TerminalId t = 0; t < g.terminals.size(); ++t)
            e.emit(q, {Sym::terminal(t)}, any(k), nv + t, q, still, {});
    for (StateId f : g.finals)
        e.emit(f, {}, std::vector<Guard>(k, Guard::Zero), pd.bottom, acc, still, {});
    return m;
}

}  // namespace stategram
