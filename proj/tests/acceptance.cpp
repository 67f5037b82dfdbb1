// Acceptance suite: one PASS/FAIL line per criterion. Run with a criterion number to run just that one.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "stategram/corpus.hpp"
#include "stategram/decide.hpp"
#include "stategram/derive.hpp"
#include "stategram/machine.hpp"
#include "stategram/reduce.hpp"
#include "stategram/transform.hpp"

using namespace stategram;

namespace {

// Wall-clock limits in seconds; 0 means no limit.
constexpr double kBlocksLimit = 10.0;
constexpr double kGadgetLimit = 30.0;
constexpr double kSubsetSumLimit = 60.0;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            if (!pass) detail << "; ";
            detail << what;
            pass = false;
        }
    }
};

ExplorationBudget budget(std::size_t steps, std::size_t form, std::int64_t counter) {
    ExplorationBudget b;
    b.max_steps = steps;
    b.max_form_len = form;
    b.max_counter = counter;
    return b;
}

std::set<Word> words(const StateGrammar& g, DerivationMode mode, const ExplorationBudget& b, std::size_t n) {
    return oracle::shorter_than(enumerate(g, mode, b), n);
}

// Language up to length n at b, checked to be unchanged when every bound grows a little.
std::set<Word> settled(const StateGrammar& g, DerivationMode mode, const ExplorationBudget& b, std::size_t n,
                       Outcome& o, const std::string& name) {
    auto first = words(g, mode, b, n);
    ExplorationBudget more = b;
    more.max_steps += 2;
    more.max_form_len += 2;
    more.max_counter += 1;
    o.check(words(g, mode, more, n) == first, name + ": language still growing at the chosen budget");
    return first;
}

Sym t(const StateGrammar& g, const std::string& name) { return Sym::terminal(*g.find_terminal(name)); }

// 1. Block languages a1^n b1^n ... ak^n bk^n for k = 2, 3 up to length 8k.
void example1(Outcome& o) {
    for (std::size_t k : {2U, 3U}) {
        const StateGrammar g = block_grammar(k);
        const std::size_t n = 8 * k;
        std::vector<Sym> blocks;
        for (std::size_t i = 1; i <= k; ++i) {
            blocks.push_back(t(g, "a" + std::to_string(i)));
            blocks.push_back(t(g, "b" + std::to_string(i)));
        }
        const auto expected = oracle::filter(oracle::block_words(blocks, n),
                                             [&](const Word& w) { return oracle::equal_blocks(w, blocks); });
        // Rules never erase, so forms stay within the target length.
        const auto got = words(g, DerivationMode::Free, budget(4 * n, n, 1), n);
        o.check(got == expected, "k=" + std::to_string(k) + ": got " + std::to_string(got.size()) + " words, expected " +
                                     std::to_string(expected.size()));
        o.check(words(g, DerivationMode::Free, budget(8 * n, n, 1), n) == got,
                "k=" + std::to_string(k) + ": language still growing");
    }
}

// 2. The w$w grammar up to length 9.
void example2(Outcome& o) {
    const StateGrammar& g = corpus_grammar("example2_wdollarw");
    const Sym a = t(g, "a"), b = t(g, "b"), d = t(g, "$");
    const auto expected = oracle::filter(oracle::all_words(oracle::terminals(g), 9),
                                         [&](const Word& w) { return oracle::dollar_copy(w, a, b, d); });
    const auto got = settled(g, DerivationMode::Free, budget(24, 13, 6), 9, o, "example2");
    o.check(got == expected, "got " + std::to_string(got.size()) + " words, expected " + std::to_string(expected.size()));
}

// 3. Dyck words with equal a- and b-pairs up to length 6; free and leftmost agree.
void dyck(Outcome& o) {
    const StateGrammar& g = corpus_grammar("dyck_equal");
    const Sym a = t(g, "a"), a2 = t(g, "a'"), b = t(g, "b"), b2 = t(g, "b'");
    const auto expected = oracle::filter(oracle::all_words(oracle::terminals(g), 6), [&](const Word& w) {
        return oracle::bracket_matched(w, {{a, a2}, {b, b2}}) && oracle::count(w, a) == oracle::count(w, b);
    });
    const auto got = settled(g, DerivationMode::Free, budget(10, 13, 3), 6, o, "dyck");
    o.check(got.size() == 5, "expected the five words of length at most 4");
    o.check(got == expected, "got " + std::to_string(got.size()) + " words, expected " + std::to_string(expected.size()));
    // With the form bound out of reach only the step bound applies, and it is order independent.
    for (std::size_t steps : {2U, 4U, 6U, 7U}) {
        const auto b = budget(steps, 4 * steps + 1, static_cast<std::int64_t>(steps));
        o.check(enumerate(g, DerivationMode::Free, b) == enumerate(g, DerivationMode::Leftmost, b),
                "free and leftmost differ at " + std::to_string(steps) + " steps");
    }
}

// 4. State threading for linear grammars and both directions of regular control.
void linear_and_control(Outcome& o) {
    constexpr std::size_t n = 10;
    const auto b = budget(40, n + 4, 1);
    for (const auto& e : corpus()) {
        const StateGrammar& g = e.grammar;
        if (!g.counter_free() || g.control) continue;
        const auto base = words(g, DerivationMode::Free, b, n);
        if (classify(g).is_linear())
            o.check(words(lgs_to_lg(g), DerivationMode::Free, b, n) == base, e.name + ": lgs_to_lg changed the language");
        const ControlledCfg c = cfgs_to_regctrl(g);
        o.check(oracle::shorter_than(oracle::controlled_language(c, n + 4, 40), n) == base,
                e.name + ": control form generates a different language");
        o.check(words(regctrl_to_cfgs(c), DerivationMode::Free, b, n) == base, e.name + ": round trip changed the language");
    }

    // S -> aSb | ab under the control p1 p1 p2 + p2, and under unrestricted control.
    GrammarBuilder gb(GrammarKind::Cfgs, CounterSpec::none());
    gb.states("q").initial("q").final_states("q").nonterminals("S").terminals("a b").axiom("S");
    gb.rule("q", "", "S", "q", "", "a S b").rule("q", "", "S", "q", "", "a b");
    ControlledCfg c;
    c.base = gb.build();
    c.control.states = {"s0", "s1", "s2", "s3"};
    c.control.initial = 0;
    c.control.finals = {3};
    c.control.edges = {{0, 0, 1}, {1, 0, 2}, {2, 1, 3}, {0, 1, 3}};
    const auto expected = oracle::controlled_language(c, n + 4, 40);
    o.check(expected == std::set<Word>{gb.word("a b"), gb.word("a a a b b b")}, "reference interpreter disagrees with {ab, aaabbb}");
    o.check(words(regctrl_to_cfgs(c), DerivationMode::Free, b, n) == expected, "regctrl_to_cfgs on p1p1p2+p2");
    ControlledCfg free = c;
    free.control.states = {"s"};
    free.control.finals = {0};
    free.control.edges = {{0, 0, 0}, {0, 1, 0}};
    o.check(words(regctrl_to_cfgs(free), DerivationMode::Free, b, n) == words(c.base, DerivationMode::Free, b, n),
            "unrestricted control changed the language");
}

// 5. Normal form keeps the language and every counter makes at most one reversal.
void normal_form(Outcome& o) {
    constexpr std::size_t n = 10;
    for (const char* name : {"three_reversal_blocks", "three_reversal_carry", "example2_wdollarw"}) {
        const StateGrammar& g = corpus_grammar(name);
        const StateGrammar nf = to_normal_form(g);
        o.check(is_normal_form(nf), std::string(name) + ": output not in normal form");
        const auto original = words(g, DerivationMode::Free, budget(24, n + 3, 6), n);
        o.check(!original.empty(), std::string(name) + ": no words within budget");
        const auto normalized = words(nf, DerivationMode::Free, budget(64, n + 4, 6), n);
        o.check(original == normalized, std::string(name) + ": " + std::to_string(original.size()) + " vs " +
                                            std::to_string(normalized.size()) + " words");
        // Lift the declared bounds so that any extra reversal would be visible rather than pruned.
        StateGrammar loose = nf;
        for (auto& r : loose.counters.reversal_bounds) r = 1000;
        bool one_reversal = true;
        for_each_reachable(loose, DerivationMode::Free, budget(40, n + 4, 6), [&](const DerivationConfig& c) {
            for (auto r : c.reversals_used) one_reversal = one_reversal && r <= 1;
        });
        o.check(one_reversal, std::string(name) + ": a counter reversed twice");
    }
}

// 6. Counter stripping plus the balanced filter gives back the language.
void strip(Outcome& o) {
    for (const auto& [name, n] : std::vector<std::pair<std::string, std::size_t>>{
             {"example2_wdollarw", 5}, {"anbncn_counters", 6}, {"palindrome_equal", 6}}) {
        const StateGrammar& g = corpus_grammar(name);
        const StateGrammar nf = is_normal_form(g) ? g : to_normal_form(g);
        const StrippedGrammar s = strip_counters(nf);
        const std::size_t markers = 4 * n + 4;
        const auto stripped = enumerate(s.grammar, DerivationMode::Free, budget(8 * n + 16, n + markers, 1));
        const auto filtered = oracle::shorter_than(s.filter.apply(stripped), n);
        const auto original = words(g, DerivationMode::Free, budget(4 * n, n + 3, static_cast<std::int64_t>(n)), n);
        o.check(!original.empty(), name + ": no words within budget");
        o.check(filtered == original, name + ": " + std::to_string(filtered.size()) + " vs " +
                                          std::to_string(original.size()) + " words");
    }
}

// 7. Monotonic grammar, controlled grammar and pushdown machine agree; the controlled square grammar gives {xx}.
void controlled(Outcome& o) {
    constexpr std::size_t n = 6;
    const StateGrammar& dyck = corpus_grammar("dyck_equal");
    const auto original = words(dyck, DerivationMode::Free, budget(10, 13, 3), n);
    const StateGrammar ccfgs = cfgmc_to_ccfgs(dyck);
    const auto grammar = words(ccfgs, DerivationMode::Controlled, budget(32, 16, 1), n);
    const CounterMachine m = ccfgs_to_npcm(ccfgs);
    const auto machine = oracle::shorter_than(enumerate_machine(m, budget(64, 16, 4)), n);
    o.check(grammar == original, "controlled grammar: " + std::to_string(grammar.size()) + " vs " +
                                     std::to_string(original.size()) + " words");
    o.check(machine == original, "machine: " + std::to_string(machine.size()) + " vs " +
                                     std::to_string(original.size()) + " words");

    const StateGrammar& sq = corpus_grammar("square_v2_terminals");
    const auto expected = oracle::filter(oracle::all_words(oracle::terminals(sq), n), oracle::square);
    const auto got = words(sq, DerivationMode::Controlled, budget(32, n + 4, 1), n);
    o.check(got == expected, "square grammar: " + std::to_string(got.size()) + " vs " +
                                 std::to_string(expected.size()) + " words");
}

// 8. Every binary gadget of up to 6 bits ends with the encoded value, within index k + 1.
void gadget(Outcome& o) {
    std::size_t cases = 0;
    for (std::size_t k = 1; k <= 6; ++k) {
        for (std::uint64_t pattern = 0; pattern < (1ULL << k); ++pattern) {
            std::vector<bool> bits;
            for (std::size_t i = 0; i < k; ++i) bits.push_back(pattern >> i & 1U);
            const StateGrammar g = binary_gadget(bits);
            const auto value = static_cast<std::int64_t>(pattern);
            ++cases;
            const auto b = budget(4 * (1U << k) + 8, k * (k + 1) / 2 + k + 1, value + 1);
            // Every derivation tree has a leftmost derivation with the same rules, hence the same
            // final counter; free exploration is only affordable for short strings.
            auto done = terminal_configs(g, DerivationMode::Leftmost, b);
            if (k <= 3) {
                const auto free = terminal_configs(g, DerivationMode::Free, b);
                done.insert(done.end(), free.begin(), free.end());
            }
            bool exact = !done.empty();
            for (const auto& c : done) exact = exact && c.counters[0] == value;
            ExplorationBudget narrow = b;
            narrow.max_index = k + 1;
            const auto d = member(g, DerivationMode::Leftmost, {}, narrow);
            if (!exact || !d || d->index() > k + 1) {
                std::string s;
                for (bool x : bits) s += x ? '1' : '0';
                o.check(false, "bits " + s + (exact ? ": no index-(k+1) witness" : ": wrong final counter"));
            }
        }
    }
    o.check(cases == 126, "ran " + std::to_string(cases) + " cases");
}

// 9. Subset-sum through both grammar routes against exhaustive search.
void subset_sum(Outcome& o) {
    auto run = [&](const SubsetSumInstance& inst, const std::string& name) {
        const bool truth = oracle::subset_sum(inst.values, inst.target).has_value();
        for (Route r : {Route::Cfgsc, Route::Rlgsc}) {
            const SubsetSumAnswer a = solve_subset_sum(inst, r);
            const std::string route = r == Route::Cfgsc ? "cfgsc" : "rlgsc";
            if (a.solvable != truth) {
                o.check(false, name + " via " + route + ": wrong answer");
                continue;
            }
            std::uint64_t s = 0;
            for (std::size_t i : a.subset) s += inst.values[i];
            if (truth && s != inst.target) o.check(false, name + " via " + route + ": witness does not sum to target");
        }
    };
    SubsetSumInstance yes{{3, 5, 2}, 5}, no{{2, 4}, 7};
    o.check(oracle::subset_sum(yes.values, yes.target).has_value(), "({3,5,2},5) should be solvable");
    o.check(!oracle::subset_sum(no.values, no.target).has_value(), "({2,4},7) should be unsolvable");
    run(yes, "({3,5,2},5)");
    run(no, "({2,4},7)");

    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<std::size_t> size(1, 5);
    std::uniform_int_distribution<std::uint64_t> value(1, 40);
    for (int i = 0; i < 200; ++i) {
        SubsetSumInstance inst;
        inst.values.resize(size(rng));
        for (auto& x : inst.values) x = value(rng);
        std::uint64_t total = 0;
        for (auto x : inst.values) total += x;
        // Half of the targets are subset sums, the rest uniform up to just past the total.
        if (i % 2 == 0) {
            for (auto x : inst.values) inst.target += rng() % 2 ? x : 0;
            if (inst.target == 0) inst.target = inst.values[0];
        } else {
            inst.target = std::uniform_int_distribution<std::uint64_t>(1, total + 2)(rng);
        }
        run(inst, "random #" + std::to_string(i));
    }
}

// 10. Bounded-index emptiness on the corpus, and index sensitivity of the two-block grammar.
void index_emptiness(Outcome& o) {
    for (const auto& e : corpus()) {
        const EmptinessReport r = cfgsc_index_emptiness(e.grammar, e.index, e.cap);
        const bool nonempty = r.verdict == Verdict::NonEmpty;
        o.check(nonempty == e.nonempty, e.name + ": got " + to_string(r.verdict));
    }
    const StateGrammar& g2 = corpus_grammar("example1_k2");
    o.check(cfgsc_index_emptiness(g2, 2, 4).verdict == Verdict::NonEmpty, "two-block grammar at index 2 should be nonempty");
    o.check(cfgsc_index_emptiness(g2, 1, 4).verdict == Verdict::EmptyWithinBound,
            "two-block grammar at index 1 should be empty within bound");
    ExplorationBudget b = budget(40, 24, 1);
    b.max_index = 1;
    bool accepted = false;
    for (const auto& c : terminal_configs(g2, DerivationMode::Free, b)) accepted = accepted || is_accepting(g2, c);
    o.check(!accepted, "exhaustive index-1 search found a derivation of the two-block grammar");
}

// 11. Degeneralization adds exactly the binary constant and keeps subset-sum answers.
void degeneralization(Outcome& o) {
    GrammarBuilder gb(GrammarKind::Cfgsc, CounterSpec::reversal_bounded({1}, UpdateStyle::Generalized));
    gb.states("q p").initial("q").final_states("p").nonterminals("S").terminals("a").axiom("S");
    gb.rule("q", "*", "S", "p", "+5", "a");
    const StateGrammar g = degeneralize(gb.build());
    o.check(g.counters.count == 3, "+5 should use 2 auxiliary counters, got " + std::to_string(g.counters.count - 1));
    const auto done = terminal_configs(g, DerivationMode::Free, budget(40, 4, 16));
    o.check(!done.empty(), "+5 gadget never completes");
    for (const auto& c : done) {
        o.check(g.states[c.state] == "p", "gadget run stopped outside the target state");
        o.check(c.counters[0] == 5, "gadget gain " + std::to_string(c.counters[0]));
    }

    std::mt19937_64 rng(5);
    std::vector<SubsetSumInstance> tests{{{3, 5, 2}, 5}, {{2, 4}, 7}, {{1}, 1}, {{6}, 5}};
    for (int i = 0; i < 16; ++i) {
        SubsetSumInstance inst;
        inst.values.resize(1 + rng() % 4);
        for (auto& x : inst.values) x = 1 + rng() % 12;
        inst.target = 1 + rng() % 20;
        tests.push_back(inst);
    }
    for (const auto& inst : tests) {
        const Reduction red = subset_sum_to_rlgsc(inst);
        const StateGrammar unit = degeneralize(red.grammar);
        const auto cap = static_cast<std::int64_t>(red.cap);
        const auto steps = static_cast<std::size_t>(4 * cap + 4 * inst.values.size() + 16);
        const bool truth = oracle::subset_sum(inst.values, inst.target).has_value();
        const Word a{Sym::terminal(0)};
        const bool before = member(red.grammar, DerivationMode::Free, a, budget(steps, 4, cap)).has_value();
        const bool after = member(unit, DerivationMode::Free, a, budget(steps, 4, cap)).has_value();
        if (before != truth || after != truth) o.check(false, "emptiness changed for target " + std::to_string(inst.target));
    }
}

struct Criterion {
    const char* name;
    double limit;
    void (*run)(Outcome&);
};

const Criterion kCriteria[] = {
    {"block languages", kBlocksLimit, example1},
    {"w$w language", 0, example2},
    {"Dyck with equal pairs, free = leftmost", 0, dyck},
    {"linear state threading and regular control", 0, linear_and_control},
    {"normal form", 0, normal_form},
    {"counter stripping", 0, strip},
    {"controlled grammar and pushdown machine", 0, controlled},
    {"binary gadget", kGadgetLimit, gadget},
    {"subset-sum end to end", kSubsetSumLimit, subset_sum},
    {"bounded-index emptiness", 0, index_emptiness},
    {"degeneralization", 0, degeneralization},
};

}  // namespace

int main(int argc, char** argv) {
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    bool all = true;
    for (int i = 1; i <= static_cast<int>(std::size(kCriteria)); ++i) {
        if (only && only != i) continue;
        const Criterion& c = kCriteria[i - 1];
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit > 0 && secs > c.limit) {
            std::ostringstream s;
            s << "took " << secs << " s, limit " << c.limit << " s";
            o.check(false, s.str());
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << "criterion " << i << " " << (o.pass ? "PASS" : "FAIL") << ": " << c.name << " (" << timing << ")";
        if (!o.pass) std::cout << " -- " << o.detail.str();
        std::cout << "\n";
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
