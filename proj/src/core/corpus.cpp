#include "stategram/corpus.hpp"

#include <algorithm>

namespace stategram {

StateGrammar block_grammar(std::size_t k) {
    if (k < 2) throw PreconditionError("block_grammar needs k >= 2");
    GrammarBuilder b(GrammarKind::Cfgs, CounterSpec::none());
    for (std::size_t i = 0; i < k; ++i) b.state("q" + std::to_string(i));
    b.nonterminal("S");
    std::string all;
    for (std::size_t i = 1; i <= k; ++i) {
        b.nonterminal("A" + std::to_string(i));
        all += " A" + std::to_string(i);
    }
    for (std::size_t i = 1; i <= k; ++i) {
        b.terminal("a" + std::to_string(i));
        b.terminal("b" + std::to_string(i));
    }
    b.initial("q0").final_states("q0").axiom("S");
    b.rule("q0", "", "S", "q0", "", all);
    for (std::size_t i = 1; i <= k; ++i) {
        const std::string n = std::to_string(i);
        const std::string from = "q" + std::to_string(i - 1);
        const std::string to = "q" + std::to_string(i % k);
        b.rule(from, "", "A" + n, to, "", "a" + n + " A" + n + " b" + n);
        b.rule(from, "", "A" + n, to, "", "a" + n + " b" + n);
    }
    return b.build();
}

namespace {

StateGrammar example2() {
    GrammarBuilder b(GrammarKind::Cfgsc, CounterSpec::reversal_bounded({1, 1}));
    b.states("q0 qa qb q1 qf").nonterminals("S A1 A2").terminals("a b $");
    b.initial("q0").final_states("qf").axiom("S");
    b.rule("q0", "z,z", "S", "q0", "0,0", "A1 A2");
    b.rule("q0", "*,*", "A1", "qa", "+1,0", "a A1");
    b.rule("q0", "*,*", "A1", "qb", "0,+1", "b A1");
    b.rule("qa", "*,*", "A2", "q0", "0,0", "a A2");
    b.rule("qb", "*,*", "A2", "q0", "0,0", "b A2");
    b.rule("q0", "z,z", "A1", "q1", "0,0", "A1");
    b.rule("q0", "p,p", "A1", "q1", "0,0", "A1");
    b.rule("q1", "p,p", "A1", "q1", "-1,-1", "A1");
    b.rule("q1", "z,z", "A2", "q1", "0,0", "eps");
    b.rule("q1", "z,z", "A1", "qf", "0,0", "$");
    return b.build();
}

StateGrammar dyck_equal() {
    GrammarBuilder b(GrammarKind::Cfgmc, CounterSpec::monotonic(2));
    b.states("q").nonterminals("S").terminals("a a' b b'");
    b.initial("q").final_states("q").axiom("S");
    b.rule("q", "*,*", "S", "q", "+1,0", "S a S a' S");
    b.rule("q", "*,*", "S", "q", "0,+1", "S b S b' S");
    b.rule("q", "*,*", "S", "q", "0,0", "eps");
    return b.build();
}

StateGrammar ab_equal() {
    GrammarBuilder b(GrammarKind::Cfgmc, CounterSpec::monotonic(2));
    b.states("q").nonterminals("S").terminals("a b");
    b.initial("q").final_states("q").axiom("S");
    b.rule("q", "*,*", "S", "q", "+1,0", "a S");
    b.rule("q", "*,*", "S", "q", "0,+1", "b S");
    b.rule("q", "*,*", "S", "q", "0,0", "eps");
    return b.build();
}

// Controlled grammar obtained from ab_equal by the CFGMC-to-CCFGS rules, written out by hand.
StateGrammar controlled_ab_equal() {
    GrammarBuilder b(GrammarKind::Ccfgs, CounterSpec::none());
    b.states("q0 q1 q2 qf").nonterminals("S S' C1 C2").terminals("a b");
    b.initial("q0").final_states("qf").axiom("S'").v2("C1 C2");
    b.rule("q0", "", "S'", "q0", "", "C1 C2 S");
    b.rule("q0", "", "S", "q0", "", "C1 a S");
    b.rule("q0", "", "S", "q1", "", "C1 a S");
    b.rule("q0", "", "S", "q0", "", "C2 b S");
    b.rule("q0", "", "S", "q1", "", "C2 b S");
    b.rule("q0", "", "S", "q0", "", "eps");
    b.rule("q0", "", "S", "q1", "", "eps");
    b.rule("q1", "", "C1", "q2", "", "eps");
    b.rule("q2", "", "C2", "q1", "", "eps");
    b.rule("q2", "", "C2", "qf", "", "eps");
    return b.build();
}

// Generates {xx}: C1 spells x while C2 copies it one symbol behind.
StateGrammar square_controlled(bool placeholders) {
    GrammarBuilder b(GrammarKind::Ccfgs, CounterSpec::none());
    b.states("q0 q1 q2 qa qb pa pb").nonterminals(placeholders ? "S A B C1 C2" : "S C1 C2").terminals("a b");
    b.initial("q0").final_states("q2").axiom("S");
    b.v2("C1 C2", placeholders ? V2Relaxation::V1InV2Rules : V2Relaxation::TerminalsInV2Rules);
    const std::string a = placeholders ? "A" : "a";
    const std::string bb = placeholders ? "B" : "b";
    b.rule("q0", "", "S", "qa", "", "C1 C2");
    b.rule("q0", "", "S", "qb", "", "C1 C2");
    b.rule("qa", "", "C1", "pa", "", a + " C1");
    b.rule("qa", "", "C1", "q1", "", "eps");
    b.rule("qb", "", "C1", "pb", "", bb + " C1");
    b.rule("qb", "", "C1", "q1", "", "eps");
    b.rule("q1", "", "C2", "q2", "", "eps");
    b.rule("pa", "", "C2", "qa", "", a + " C2");
    b.rule("pa", "", "C2", "qb", "", a + " C2");
    b.rule("pb", "", "C2", "qa", "", bb + " C2");
    b.rule("pb", "", "C2", "qb", "", bb + " C2");
    if (placeholders) {
        b.rule("q2", "", "A", "q2", "", "a");
        b.rule("q2", "", "B", "q2", "", "b");
    }
    return b.build();
}

StateGrammar dyck_plain() {
    GrammarBuilder b(GrammarKind::Cfgs, CounterSpec::none());
    b.states("q").nonterminals("S").terminals("a a' b b'");
    b.initial("q").final_states("q").axiom("S");
    b.rule("q", "", "S", "q", "", "S a S a' S");
    b.rule("q", "", "S", "q", "", "S b S b' S");
    b.rule("q", "", "S", "q", "", "eps");
    return b.build();
}

StateGrammar anbn_linear() {
    GrammarBuilder b(GrammarKind::Lgs, CounterSpec::none());
    b.states("q").nonterminals("S").terminals("a b");
    b.initial("q").final_states("q").axiom("S");
    b.rule("q", "", "S", "q", "", "a S b");
    b.rule("q", "", "S", "q", "", "a b");
    return b.build();
}

StateGrammar two_state_lgs() {
    GrammarBuilder b(GrammarKind::Rlgs, CounterSpec::none());
    b.states("q0 q1").nonterminals("S").terminals("a b");
    b.initial("q0").final_states("q0").axiom("S");
    b.rule("q0", "", "S", "q1", "", "a S");
    b.rule("q1", "", "S", "q0", "", "b");
    return b.build();
}

// a^n b^n a^m b^m: the counter rises, empties, rises again and empties (three reversals).
StateGrammar three_reversal_blocks() {
    GrammarBuilder b(GrammarKind::Cfgsc, CounterSpec::reversal_bounded({3}));
    b.states("q0 q1 q2 q3 qf").nonterminals("S").terminals("a b");
    b.initial("q0").final_states("qf").axiom("S");
    b.rule("q0", "*", "S", "q0", "+1", "a S");
    b.rule("q0", "p", "S", "q1", "-1", "b S");
    b.rule("q1", "p", "S", "q1", "-1", "b S");
    b.rule("q1", "z", "S", "q2", "+1", "a S");
    b.rule("q2", "p", "S", "q2", "+1", "a S");
    b.rule("q2", "p", "S", "q3", "-1", "b S");
    b.rule("q3", "p", "S", "q3", "-1", "b S");
    b.rule("q3", "z", "S", "qf", "0", "eps");
    return b.build();
}

// a^n b^m a^l c^(n-m+l) with n > m: the second rise starts while the counter is still positive.
StateGrammar three_reversal_carry() {
    GrammarBuilder b(GrammarKind::Cfgsc, CounterSpec::reversal_bounded({3}));
    b.states("q0 q1 q2 q3 qf").nonterminals("S").terminals("a b c");
    b.initial("q0").final_states("qf").axiom("S");
    b.rule("q0", "*", "S", "q0", "+1", "a S");
    b.rule("q0", "p", "S", "q1", "-1", "b S");
    b.rule("q1", "p", "S", "q1", "-1", "b S");
    b.rule("q1", "p", "S", "q2", "+1", "a S");
    b.rule("q2", "p", "S", "q2", "+1", "a S");
    b.rule("q2", "p", "S", "q3", "-1", "c S");
    b.rule("q3", "p", "S", "q3", "-1", "c S");
    b.rule("q3", "z", "S", "qf", "0", "eps");
    return b.build();
}

StateGrammar anbncn_counters() {
    GrammarBuilder b(GrammarKind::Cfgsc, CounterSpec::reversal_bounded({1, 1}));
    b.states("q0 q1 q2 qf").nonterminals("S").terminals("a b c");
    b.initial("q0").final_states("qf").axiom("S");
    b.rule("q0", "*,*", "S", "q0", "+1,+1", "a S");
    b.rule("q0", "p,p", "S", "q1", "-1,0", "b S");
    b.rule("q1", "p,p", "S", "q1", "-1,0", "b S");
    b.rule("q1", "z,p", "S", "q2", "0,-1", "c S");
    b.rule("q2", "z,p", "S", "q2", "0,-1", "c S");
    b.rule("q2", "z,z", "S", "qf", "0,0", "eps");
    return b.build();
}

StateGrammar palindrome_equal() {
    GrammarBuilder b(GrammarKind::Cfgsc, CounterSpec::reversal_bounded({1, 1}));
    b.states("q0 q1 qf").nonterminals("S D").terminals("a b");
    b.initial("q0").final_states("qf").axiom("S");
    b.rule("q0", "*,*", "S", "q0", "+1,0", "a S a");
    b.rule("q0", "*,*", "S", "q0", "0,+1", "b S b");
    b.rule("q0", "*,*", "S", "q1", "0,0", "D");
    b.rule("q1", "p,p", "D", "q1", "-1,-1", "D");
    b.rule("q1", "z,z", "D", "qf", "0,0", "eps");
    return b.build();
}

StateGrammar empty_unreachable() {
    GrammarBuilder b(GrammarKind::Rlgs, CounterSpec::none());
    b.states("q0 q1 q2").nonterminals("S").terminals("a");
    b.initial("q0").final_states("q2").axiom("S");
    b.rule("q0", "", "S", "q1", "", "a");
    return b.build();
}

// Free derivations yield "a"; under control the second C1 is forbidden after the first erasure.
StateGrammar erase_once_blocked() {
    GrammarBuilder b(GrammarKind::Ccfgs, CounterSpec::none());
    b.states("q0 q1 q2").nonterminals("S C1").terminals("a");
    b.initial("q0").final_states("q2").axiom("S").v2("C1");
    b.rule("q0", "", "S", "q1", "", "C1 S");
    b.rule("q1", "", "C1", "q2", "", "eps");
    b.rule("q2", "", "S", "q1", "", "C1 a");
    return b.build();
}

std::vector<CorpusEntry> build_corpus() {
    std::vector<CorpusEntry> c;
    auto add = [&](std::string name, std::string description, StateGrammar g, bool nonempty, std::size_t m,
                   std::uint64_t cap) {
        c.push_back({std::move(name), std::move(description), std::move(g), nonempty, m, cap});
    };
    add("example1_k2", "a1^n b1^n a2^n b2^n, states cycle q0 q1", block_grammar(2), true, 2, 1);
    add("example1_k3", "a1^n b1^n a2^n b2^n a3^n b3^n", block_grammar(3), true, 3, 1);
    add("example2_wdollarw", "w$w with equal numbers of a and b in w", example2(), true, 2, 2);
    add("dyck_equal", "two-bracket Dyck words with as many a-pairs as b-pairs", dyck_equal(), true, 1, 1);
    add("ab_equal", "words over {a,b} with |w|_a = |w|_b (monotonic counters)", ab_equal(), true, 1, 1);
    add("controlled_ab_equal", "controlled grammar built from ab_equal", controlled_ab_equal(), true, 3, 1);
    add("square_v2_terminals", "{xx}: V2 rules emit terminals", square_controlled(false), true, 2, 1);
    add("square_v2_placeholders", "{xx}: V2 rules emit V1 placeholders", square_controlled(true), true, 2, 1);
    add("dyck_plain", "two-bracket Dyck language, plain CFG", dyck_plain(), true, 1, 1);
    add("anbn_linear", "a^n b^n, one-state linear grammar", anbn_linear(), true, 1, 1);
    add("two_state_lgs", "right-linear grammar alternating two states", two_state_lgs(), true, 1, 1);
    add("three_reversal_blocks", "a^n b^n a^m b^m with one 3-reversal counter", three_reversal_blocks(), true, 1, 1);
    add("three_reversal_carry", "a^n b^m a^l c^(n-m+l), n > m", three_reversal_carry(), true, 1, 2);
    add("anbncn_counters", "a^n b^n c^n with two 1-reversal counters", anbncn_counters(), true, 1, 1);
    add("palindrome_equal", "w w^R with |w|_a = |w|_b", palindrome_equal(), true, 1, 1);
    add("empty_unreachable", "final state never reached", empty_unreachable(), false, 1, 1);
    add("erase_once_blocked", "needs C1 again after erasing it", erase_once_blocked(), true, 2, 1);
    return c;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = build_corpus();
    return entries;
}

const CorpusEntry& corpus_entry(std::string_view name) {
    for (const auto& e : corpus())
        if (e.name == name) return e;
    throw Error("no corpus grammar named '" + std::string(name) + "'");
}

const StateGrammar& corpus_grammar(std::string_view name) { return corpus_entry(name).grammar; }

}  // namespace stategram
