#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "stategram/corpus.hpp"
#include "stategram/derive.hpp"
#include "stategram/transform.hpp"

using namespace stategram;

namespace {

ExplorationBudget budget(std::size_t steps, std::size_t form, std::int64_t counter) {
    ExplorationBudget b;
    b.max_steps = steps;
    b.max_form_len = form;
    b.max_counter = counter;
    return b;
}

std::set<Word> words(const StateGrammar& g, std::initializer_list<const char*> spelled) {
    std::set<Word> out;
    for (const char* s : spelled) out.insert(std::string_view(s).empty() ? Word{} : g.parse_word(s));
    return out;
}

DerivationConfig config(const StateGrammar& g, const char* state, std::vector<std::int64_t> counters, const char* form) {
    DerivationConfig c = initial_config(g);
    c.state = *g.find_state(state);
    c.counters = std::move(counters);
    c.form.clear();
    for (const auto& name : split_ws(form)) {
        if (auto a = g.find_nonterminal(name)) c.form.push_back(Sym::nonterminal(*a));
        else c.form.push_back(Sym::terminal(*g.find_terminal(name)));
    }
    return c;
}

std::set<std::string> shown(const StateGrammar& g, const std::vector<Successor>& succ) {
    std::set<std::string> out;
    for (const auto& s : succ) out.insert(format_config(g, s.config));
    return out;
}

}  // namespace

TEST_CASE("one free step of the block grammar from the axiom") {
    const StateGrammar& g = corpus_grammar("example1_k2");
    const auto succ = step(g, DerivationMode::Free, initial_config(g));
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].rules == std::vector<std::size_t>{0});
    CHECK(format_config(g, succ[0].config) == "(q0, A1 A2)");
}

TEST_CASE("terminal forms have no successors in any mode") {
    const StateGrammar& g = corpus_grammar("example1_k2");
    const DerivationConfig c = config(g, "q0", {}, "a1 b1 a2 b2");
    for (auto mode : {DerivationMode::Free, DerivationMode::Leftmost, DerivationMode::Leftish, DerivationMode::Circular})
        CHECK(step(g, mode, c).empty());
}

TEST_CASE("free step of the w$w grammar from A1 A2 matches rule-by-rule application") {
    // Applying each of the rules to each occurrence by hand: from q0 with both counters zero,
    // A1 has three applicable rules (the p,p variant fails its guard) and A2 has none.
    const StateGrammar& g = corpus_grammar("example2_wdollarw");
    const auto succ = step(g, DerivationMode::Free, config(g, "q0", {0, 0}, "A1 A2"));
    CHECK(shown(g, succ) == std::set<std::string>{"(qa, [1,0], a A1 A2)", "(qb, [0,1], b A1 A2)", "(q1, [0,0], A1 A2)"});
}

TEST_CASE("circular sweep of the block grammar") {
    const StateGrammar& g = corpus_grammar("example1_k2");
    const auto succ = sweep_circular(g, config(g, "q0", {}, "A1 A2"));
    CHECK(shown(g, succ) == std::set<std::string>{"(q0, a1 A1 b1 a2 A2 b2)", "(q0, a1 A1 b1 a2 b2)",
                                                  "(q0, a1 b1 a2 A2 b2)", "(q0, a1 b1 a2 b2)"});
    for (const auto& s : succ) CHECK(s.rules.size() == 2);
    CHECK_THROWS_AS(sweep_circular(g, config(g, "q0", {}, "a1 b1")), PreconditionError);

    // One occurrence: a sweep is a free step.
    const auto one = config(g, "q1", {}, "a1 b1 A2");
    CHECK(shown(g, sweep_circular(g, one)) == shown(g, step(g, DerivationMode::Free, one)));
}

TEST_CASE("circular sweeps rewrite every occurrence present at the start") {
    const StateGrammar& g = corpus_grammar("example1_k3");
    ExplorationBudget b = budget(3, 30, 1);
    for_each_reachable(g, DerivationMode::Circular, b, [&](const DerivationConfig& c) {
        if (c.is_terminal()) return;
        for (const auto& s : sweep_circular(g, c)) {
            // Every old occurrence was replaced by a rhs; the new form has no more nonterminals
            // than those rhs contribute.
            std::size_t introduced = 0;
            for (std::size_t r : s.rules)
                introduced += static_cast<std::size_t>(std::count_if(g.productions[r].rhs.begin(), g.productions[r].rhs.end(),
                                                                     [](Sym x) { return x.is_nonterminal(); }));
            CHECK(s.rules.size() == c.nonterminal_count());
            CHECK(s.config.nonterminal_count() == introduced);
        }
    });
}

TEST_CASE("mode errors") {
    const StateGrammar& e2 = corpus_grammar("example2_wdollarw");
    CHECK_THROWS_AS(enumerate(e2, DerivationMode::Leftish, {}), ModeError);
    CHECK_THROWS_AS(enumerate(e2, DerivationMode::Circular, {}), ModeError);
    CHECK_THROWS_AS(enumerate(e2, DerivationMode::Controlled, {}), ModeError);
    CHECK(parse_mode("leftish") == DerivationMode::Leftish);
    CHECK_FALSE(parse_mode("rightmost").has_value());
}

TEST_CASE("bounded languages of the worked examples") {
    const StateGrammar& g2 = corpus_grammar("example1_k2");
    CHECK(oracle::shorter_than(enumerate(g2, DerivationMode::Free, budget(40, 20, 1)), 8) ==
          words(g2, {"a1b1a2b2", "a1a1b1b1a2a2b2b2"}));

    const StateGrammar& e2 = corpus_grammar("example2_wdollarw");
    CHECK(oracle::shorter_than(enumerate(e2, DerivationMode::Free, budget(24, 9, 4)), 5) ==
          words(e2, {"$", "ab$ab", "ba$ba"}));

    const StateGrammar& d = corpus_grammar("dyck_equal");
    CHECK(oracle::shorter_than(enumerate(d, DerivationMode::Free, budget(10, 13, 3)), 4) ==
          words(d, {"", "aa'bb'", "bb'aa'", "abb'a'", "baa'b'"}));
}

TEST_CASE("leftmost derivations of the block grammar stop at n = 1") {
    // After A1 -> a1 A1 b1 the state is q1, where A1 has no rules; only A1 -> a1 b1 lets A2 go on.
    const StateGrammar& g2 = corpus_grammar("example1_k2");
    CHECK(enumerate(g2, DerivationMode::Leftmost, budget(40, 20, 1)) == words(g2, {"a1b1a2b2"}));
}

TEST_CASE("membership with replayable witnesses") {
    const StateGrammar& g2 = corpus_grammar("example1_k2");
    const auto d = member(g2, DerivationMode::Free, g2.parse_word("a1b1a2b2"), {});
    REQUIRE(d.has_value());
    CHECK(d->steps.size() == 3);
    CHECK(replay(g2, DerivationMode::Free, *d));
    CHECK(d->last().form == g2.parse_word("a1b1a2b2"));
    CHECK(is_accepting(g2, d->last()));

    CHECK_FALSE(member(g2, DerivationMode::Free, g2.parse_word("a1b1"), budget(64, 8, 1)).has_value());

    const StateGrammar& dy = corpus_grammar("dyck_equal");
    const auto e = member(dy, DerivationMode::Free, {}, {});
    REQUIRE(e.has_value());
    CHECK(e->steps.size() == 1);
    CHECK(e->steps[0].rules == std::vector<std::size_t>{2});

    // A tampered witness no longer replays.
    Derivation bad = *d;
    bad.steps[1].config.state = bad.steps[1].config.state == 0 ? 1 : 0;
    CHECK_FALSE(replay(g2, DerivationMode::Free, bad));
}

TEST_CASE("witnesses replay for every word found") {
    for (const char* name : {"example2_wdollarw", "anbncn_counters", "three_reversal_blocks", "dyck_plain"}) {
        CAPTURE(name);
        const StateGrammar& g = corpus_grammar(name);
        const auto b = budget(20, 10, 5);
        for (const Word& w : oracle::shorter_than(enumerate(g, DerivationMode::Free, b), 6)) {
            const auto d = member(g, DerivationMode::Free, w, b);
            REQUIRE(d.has_value());
            CHECK(replay(g, DerivationMode::Free, *d));
            CHECK(d->last().form == w);
        }
    }
}

TEST_CASE("free, leftmost and leftish agree on one-state grammars without counters") {
    for (const auto& e : corpus()) {
        const StateGrammar& g = e.grammar;
        if (!g.counter_free() || g.states.size() != 1 || g.control) continue;
        CAPTURE(e.name);
        for (std::size_t steps : {3U, 5U, 7U}) {
            const auto b = budget(steps, 4 * steps + 1, 1);
            const auto free = enumerate(g, DerivationMode::Free, b);
            CHECK(enumerate(g, DerivationMode::Leftmost, b) == free);
            CHECK(enumerate(g, DerivationMode::Leftish, b) == free);
        }
    }
}

TEST_CASE("free and leftmost agree on monotonic grammars") {
    for (const auto& e : corpus()) {
        if (e.grammar.counters.discipline != CounterDiscipline::Monotonic) continue;
        CAPTURE(e.name);
        for (std::size_t steps : {3U, 5U, 6U}) {
            const auto b = budget(steps, 4 * steps + 1, static_cast<std::int64_t>(steps));
            CHECK(enumerate(e.grammar, DerivationMode::Free, b) == enumerate(e.grammar, DerivationMode::Leftmost, b));
        }
    }
}

TEST_CASE("guard soundness over every reachable configuration") {
    for (const auto& e : corpus()) {
        const StateGrammar& g = e.grammar;
        if (g.counter_free()) continue;
        CAPTURE(e.name);
        for_each_reachable(g, DerivationMode::Free, budget(8, 10, 4), [&](const DerivationConfig& c) {
            for (std::size_t j = 0; j < c.counters.size(); ++j) {
                CHECK(c.counters[j] >= 0);
                if (c.phases[j] == Phase::NotStarted) CHECK(c.counters[j] == 0);
                if (auto r = g.counters.bound(j)) CHECK(c.reversals_used[j] <= *r);
                if (g.counters.discipline == CounterDiscipline::Monotonic) CHECK(c.phases[j] != Phase::Decreasing);
            }
        });
    }
}

TEST_CASE("controlled derivations: state expansion and history flags agree") {
    EnumerateOptions flags;
    flags.controlled = ControlledEnforcement::HistoryFlags;
    for (const auto& e : corpus()) {
        if (!e.grammar.control) continue;
        CAPTURE(e.name);
        const auto b = budget(24, 10, 1);
        CHECK(enumerate(e.grammar, DerivationMode::Controlled, b) == enumerate(e.grammar, DerivationMode::Controlled, b, flags));
    }
    CHECK(enumerate(corpus_grammar("erase_once_blocked"), DerivationMode::Controlled, budget(24, 10, 1)).empty());
}

TEST_CASE("controlled erase-once along every explored derivation") {
    // With history flags the erased set is part of the config, so each step can be checked.
    const StateGrammar& g = corpus_grammar("controlled_ab_equal");
    const ControlPartition& cp = *g.control;
    for_each_reachable(g, DerivationMode::Controlled, budget(10, 10, 1), [&](const DerivationConfig& c) {
        if (c.is_terminal()) return;
        for (const auto& s : step(g, DerivationMode::Controlled, c))
            for (std::size_t r : s.rules)
                for (Sym x : g.productions[r].rhs)
                    if (x.is_nonterminal())
                        if (auto i = cp.position(x.index())) CHECK(((c.erased >> *i) & 1U) == 0);
    });
}

TEST_CASE("max_index prunes wide forms") {
    const StateGrammar& g2 = corpus_grammar("example1_k2");
    ExplorationBudget b = budget(40, 20, 1);
    b.max_index = 1;
    CHECK(enumerate(g2, DerivationMode::Free, b).empty());
    b.max_index = 2;
    CHECK_FALSE(enumerate(g2, DerivationMode::Free, b).empty());

    b.max_words = 1;
    CHECK(enumerate(g2, DerivationMode::Free, b).size() == 1);
}

TEST_CASE("derivation trace format") {
    const StateGrammar& g2 = corpus_grammar("example1_k2");
    const auto d = member(g2, DerivationMode::Free, g2.parse_word("a1b1a2b2"), {});
    REQUIRE(d.has_value());
    CHECK(format_derivation(g2, *d) ==
          "    (q0, S)\n"
          "=> (q0, A1 A2)  by p1\n"
          "=> (q1, a1 b1 A2)  by p3\n"
          "=> (q0, a1 b1 a2 b2)  by p5\n");
}
