#include "stategram/reduce.hpp"

#include <algorithm>
#include <numeric>

#include "stategram/transform.hpp"

namespace stategram {

void check_instance(const SubsetSumInstance& inst) {
    if (inst.values.empty()) throw PreconditionError("subset-sum instance needs at least one value");
    if (inst.target == 0 || std::find(inst.values.begin(), inst.values.end(), 0U) != inst.values.end())
        throw PreconditionError("subset-sum values and target must be positive");
}

std::vector<bool> to_bits(std::uint64_t x) {
    std::vector<bool> bits;
    for (; x; x >>= 1) bits.push_back(x & 1U);
    if (bits.empty()) bits.push_back(false);
    return bits;
}

StateGrammar binary_gadget(const std::vector<bool>& bits) {
    if (bits.empty()) throw PreconditionError("binary gadget needs at least one bit");
    const std::size_t k = bits.size();
    StateGrammar g;
    g.kind = GrammarKind::Cfgmc;
    g.states = {"q"};
    g.finals = {0};
    g.counters = CounterSpec::monotonic(1);
    g.acceptance = Acceptance::AllCountersEqual;
    g.nonterminals.push_back("S");
    // [i,0] at 2i-1 and [i,1] at 2i.
    for (std::size_t i = 1; i <= k; ++i) {
        g.nonterminals.push_back("[" + std::to_string(i) + ",0]");
        g.nonterminals.push_back("[" + std::to_string(i) + ",1]");
    }
    auto slot = [](std::size_t i, bool b) { return Sym::nonterminal(static_cast<NonterminalId>(2 * i - 1 + (b ? 1 : 0))); };
    auto rule = [&](Sym lhs, std::int64_t c, Word rhs) {
        g.productions.push_back({0, {Guard::Any}, lhs.index(), 0, {c}, std::move(rhs)});
    };
    Word top;
    for (std::size_t i = 1; i <= k; ++i) top.push_back(slot(i, bits[i - 1]));
    rule(Sym::nonterminal(0), 0, top);
    for (std::size_t i = 1; i <= k; ++i) rule(slot(i, false), 0, {});
    rule(slot(1, true), 1, {slot(1, false)});
    for (std::size_t i = 2; i <= k; ++i) {
        Word rhs;
        for (std::size_t j = 1; j < i; ++j) rhs.push_back(slot(j, true));
        rhs.push_back(slot(i, false));
        rule(slot(i, true), 1, rhs);
    }
    return g;
}

StateGrammar binary_gadget(std::string_view bits) {
    std::vector<bool> b;
    for (char c : bits) {
        if (c != '0' && c != '1') throw PreconditionError("bit strings use only 0 and 1");
        b.push_back(c == '1');
    }
    return binary_gadget(b);
}

namespace {

std::uint64_t total(const SubsetSumInstance& inst) {
    return std::accumulate(inst.values.begin(), inst.values.end(), inst.target);
}

}  // namespace

Reduction subset_sum_to_cfgsc(const SubsetSumInstance& inst) {
    check_instance(inst);
    const std::size_t k = inst.values.size();
    StateGrammar g;
    g.kind = GrammarKind::Cfgsc;
    g.states = {"q0", "q1", "qf"};
    g.initial = 0;
    g.finals = {2};
    g.terminals = {"a"};
    g.counters = CounterSpec::reversal_bounded({1});
    g.acceptance = Acceptance::FinalState;
    for (std::size_t i = 1; i <= k + 1; ++i) g.nonterminals.push_back("A" + std::to_string(i));
    g.nonterminals.push_back("Z");
    const auto chain = [](std::size_t i) { return Sym::nonterminal(static_cast<NonterminalId>(i - 1)); };
    const Sym z = Sym::nonterminal(static_cast<NonterminalId>(k + 1));
    g.axiom = 0;

    // Gadget i keeps its own copy of every nonterminal, tagged with its position.
    std::vector<Sym> starts;
    std::vector<std::vector<Production>> gadget_rules;
    std::size_t widest = 1;
    for (std::size_t i = 1; i <= k + 1; ++i) {
        const std::uint64_t x = i <= k ? inst.values[i - 1] : inst.target;
        const StateGrammar gadget = binary_gadget(to_bits(x));
        widest = std::max(widest, to_bits(x).size());
        const auto offset = static_cast<NonterminalId>(g.nonterminals.size());
        for (const auto& name : gadget.nonterminals) g.nonterminals.push_back(name + "_" + std::to_string(i));
        starts.push_back(Sym::nonterminal(offset + gadget.axiom));
        std::vector<Production> rules;
        for (Production p : gadget.productions) {
            p.lhs += offset;
            for (Sym& s : p.rhs) s = Sym::nonterminal(s.index() + offset);
            rules.push_back(std::move(p));
        }
        gadget_rules.push_back(std::move(rules));
    }

    auto add = [&](StateId from, Guard guard, Sym lhs, StateId to, std::int64_t u, Word rhs) {
        g.productions.push_back({from, {guard}, lhs.index(), to, {u}, std::move(rhs)});
    };
    for (std::size_t i = 1; i <= k; ++i) {
        add(0, Guard::Any, chain(i), 0, 0, {starts[i - 1], chain(i + 1)});
        add(0, Guard::Any, chain(i), 0, 0, {chain(i + 1)});
    }
    for (std::size_t i = 0; i < k; ++i)
        for (const Production& p : gadget_rules[i]) add(0, Guard::Any, Sym::nonterminal(p.lhs), 0, p.update[0], p.rhs);
    add(0, Guard::Any, chain(k + 1), 1, 0, {starts[k], z});
    for (const Production& p : gadget_rules[k]) {
        if (p.update[0] == 0) add(1, Guard::Any, Sym::nonterminal(p.lhs), 1, 0, p.rhs);
        else add(1, Guard::Positive, Sym::nonterminal(p.lhs), 1, -1, p.rhs);
    }
    add(1, Guard::Zero, z, 2, 0, {Sym::terminal(0)});
    // A gadget of b bits needs b + 1 nonterminals at once, plus the pending chain symbol.
    return {std::move(g), widest + 2, total(inst)};
}

Reduction subset_sum_to_rlgsc(const SubsetSumInstance& inst) {
    check_instance(inst);
    const std::size_t k = inst.values.size();
    StateGrammar g;
    g.kind = GrammarKind::Cfgsc;
    g.states = {"q0", "q1", "qf"};
    g.initial = 0;
    g.finals = {2};
    g.terminals = {"a"};
    g.counters = CounterSpec::reversal_bounded({1, 1}, UpdateStyle::Generalized);
    g.acceptance = Acceptance::FinalState;
    for (std::size_t i = 1; i <= k + 1; ++i) g.nonterminals.push_back("A" + std::to_string(i));
    g.nonterminals.push_back("Z");
    g.axiom = 0;
    const auto nt = [](std::size_t i) { return Sym::nonterminal(static_cast<NonterminalId>(i)); };
    const Sym z = nt(k + 1);
    const std::vector<Guard> open{Guard::Any, Guard::Zero};
    for (std::size_t i = 0; i < k; ++i) {
        g.productions.push_back({0, open, static_cast<NonterminalId>(i), 0,
                                 {static_cast<std::int64_t>(inst.values[i]), 0}, {nt(i + 1)}});
        g.productions.push_back({0, open, static_cast<NonterminalId>(i), 0, {0, 0}, {nt(i + 1)}});
    }
    g.productions.push_back({0, open, static_cast<NonterminalId>(k), 1,
                             {0, static_cast<std::int64_t>(inst.target)}, {z}});
    g.productions.push_back({1, {Guard::Positive, Guard::Positive}, z.index(), 1, {-1, -1}, {z}});
    g.productions.push_back({1, {Guard::Zero, Guard::Zero}, z.index(), 2, {0, 0}, {Sym::terminal(0)}});
    return {std::move(g), 1, total(inst)};
}

SubsetSumAnswer solve_subset_sum(const SubsetSumInstance& inst, Route route) {
    SubsetSumAnswer answer;
    const std::size_t k = inst.values.size();
    if (route == Route::Cfgsc) {
        const Reduction red = subset_sum_to_cfgsc(inst);
        // The reduction is exact for leftmost derivations, which keep one gadget open at a time.
        const EmptinessReport rep = cfgsc_index_emptiness(red.grammar, red.index, red.cap, IndexOrder::Leftmost);
        if (rep.verdict != Verdict::NonEmpty) return answer;
        answer.solvable = true;
        // Value i was chosen iff its gadget start symbol ever shows up in a form along the run.
        const auto& labels = rep.machine.labels;
        std::vector<NonterminalId> start_ids;
        for (std::size_t i = 0; i < k; ++i) start_ids.push_back(*red.grammar.find_nonterminal("S_" + std::to_string(i + 1)));
        std::vector<bool> used(k, false);
        auto mark = [&](StateId s) {
            if (s >= labels.size()) return;
            for (Sym x : labels[s].second)
                for (std::size_t i = 0; i < k; ++i)
                    if (x.index() == start_ids[i]) used[i] = true;
        };
        mark(rep.run->start.state);
        for (const auto& c : rep.run->configs) mark(c.state);
        for (std::size_t i = 0; i < k; ++i)
            if (used[i]) answer.subset.push_back(i);
        return answer;
    }

    const Reduction red = subset_sum_to_rlgsc(inst);
    const StateGrammar unit = degeneralize(red.grammar);
    const CounterMachine m = rlgsc_to_ncm(unit);
    const EmptinessResult e = ncm_empty_bounded(m, red.cap);
    if (!e.nonempty) return answer;
    answer.solvable = true;
    // The first counter rises between entering [., A_i] and entering [., A_(i+1)] iff x_i was added.
    const std::size_t nv = unit.nonterminals.size();
    const std::size_t labelled = unit.states.size() * (nv + 1);
    std::vector<std::optional<std::int64_t>> entered(k + 1);
    auto note = [&](const MachineConfig& c) {
        if (c.state >= labelled) return;
        const std::size_t a = c.state % (nv + 1);
        if (a <= k && !entered[a]) entered[a] = c.counters[0];
    };
    note(e.witness->start);
    for (const auto& c : e.witness->configs) note(c);
    for (std::size_t i = 0; i < k; ++i)
        if (entered[i] && entered[i + 1] && *entered[i + 1] > *entered[i]) answer.subset.push_back(i);
    return answer;
}

}  // namespace stategram
