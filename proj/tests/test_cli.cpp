#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "stategram/cli.hpp"
#include "stategram/corpus.hpp"
#include "stategram/io.hpp"
#include "stategram/reduce.hpp"

using namespace stategram;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string corpus_file(const std::string& name) { return std::string(STATEGRAM_SOURCE_DIR) + "/corpus/" + name + ".sg"; }

// Fresh scratch directory per test case.
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& tag) : dir(fs::temp_directory_path() / ("sgtool_test_" + tag)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("enumerate, member and subset-sum examples") {
    const Result e = run({"enumerate", corpus_file("example1_k2"), "--mode", "free", "--max-len", "8"});
    CHECK(e.code == 0);
    CHECK(e.out == "a1b1a2b2\na1a1b1b1a2a2b2b2\n");

    const Result m = run({"member", corpus_file("example1_k2"), "a1b1", "--mode", "free"});
    CHECK(m.code == 1);
    CHECK(m.out == "no derivation of a1b1 within budget\n");

    const Result s = run({"subset-sum", "--xs", "2,4", "--target", "7"});
    CHECK(s.code == 1);
    CHECK(s.out == "EMPTY (no subset sums to 7)\n");

    const Result y = run({"subset-sum", "--xs", "3,5,2", "--target", "5", "--route", "rlgsc"});
    CHECK(y.code == 0);
    CHECK(y.out.rfind("NONEMPTY (subset {", 0) == 0);
}

TEST_CASE("member trace") {
    const Result r = run({"member", corpus_file("example1_k2"), "a1b1a2b2", "--trace"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "member\n"
          "    (q0, S)\n"
          "=> (q0, A1 A2)  by p1\n"
          "=> (q1, a1 b1 A2)  by p3\n"
          "=> (q0, a1 b1 a2 b2)  by p5\n");
}

TEST_CASE("empty word prints as <eps> and output is shortlex") {
    const Result r = run({"enumerate", corpus_file("dyck_equal"), "--max-len", "4", "--max-steps", "10", "--max-counter", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "<eps>\naa'bb'\nabb'a'\nbaa'b'\nbb'aa'\n");
}

TEST_CASE("identical invocations give identical output") {
    const std::vector<std::string> args{"enumerate", corpus_file("example2_wdollarw"), "--max-len", "5", "--max-steps", "24"};
    const Result a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
}

TEST_CASE("validate and classify") {
    const Result v = run({"validate", corpus_file("example1_k2")});
    CHECK(v.code == 0);
    CHECK(v.out == "valid\n");
    const Result c = run({"classify", corpus_file("anbn_linear")});
    CHECK(c.code == 0);
    CHECK(c.out.find("shape: linear") != std::string::npos);
}

TEST_CASE("every transform output re-parses and validates") {
    Scratch s("transform");
    const std::vector<std::pair<std::string, std::string>> cases{
        {"lgs-to-lg", "two_state_lgs"},       {"normal-form", "three_reversal_blocks"},
        {"strip-counters", "anbncn_counters"}, {"cfgmc-to-cfgsc", "dyck_equal"},
        {"cfgmc-to-ccfgs", "ab_equal"},        {"expand-ccfgs", "controlled_ab_equal"},
        {"degeneralize", "example2_wdollarw"},
    };
    for (const auto& [pass, name] : cases) {
        CAPTURE(pass);
        const std::string out = s / (pass + ".sg");
        std::string src = corpus_file(name);
        // strip-counters needs the normal form first.
        if (pass == "strip-counters") {
            REQUIRE(run({"transform", src, "--pass", "normal-form", "-o", s / "nf.sg"}).code == 0);
            src = s / "nf.sg";
        }
        const Result r = run({"transform", src, "--pass", pass, "-o", out});
        CHECK(r.code == 0);
        CHECK(r.out == "wrote " + out + "\n");
        CHECK(validate(parse_grammar(read_file(out))).empty());
        CHECK(run({"validate", out}).code == 0);
    }

    const std::string ctl = s / "ctl.sg";
    REQUIRE(run({"transform", corpus_file("example1_k2"), "--pass", "to-regctrl", "-o", ctl}).code == 0);
    CHECK_NOTHROW(parse_controlled(read_file(ctl)));
    const std::string back = s / "back.sg";
    CHECK(run({"transform", ctl, "--pass", "from-regctrl", "-o", back}).code == 0);
    CHECK(validate(parse_grammar(read_file(back))).empty());
}

TEST_CASE("machines from the command line") {
    Scratch s("machine");
    const std::string m = s / "m.txt";
    REQUIRE(run({"to-machine", corpus_file("three_reversal_blocks"), "--target", "ncm", "-o", m}).code == 0);
    CHECK(run({"machine", "run", m, "abab"}).out == "accepted\n");
    CHECK(run({"machine", "run", m, "abba"}).code == 1);
    const Result e = run({"machine", "empty", m, "--cap", "3"});
    CHECK(e.code == 0);
    CHECK(e.out == "NONEMPTY witness abab\n");
    CHECK(run({"machine", "empty", m, "--cap", "0"}).code == 1);

    const std::string g = s / "g.sg";
    const Result gad = run({"gadget", "--binary", "101", "-o", g});
    CHECK(gad.code == 0);
    CHECK(parse_grammar(read_file(g)) == binary_gadget("101"));
}

TEST_CASE("empty command") {
    const Result two = run({"empty", corpus_file("example1_k2"), "--index", "2", "--cap", "4"});
    CHECK(two.code == 0);
    CHECK(two.out.rfind("NonEmpty\n", 0) == 0);
    const Result one = run({"empty", corpus_file("example1_k2"), "--index", "1", "--cap", "4"});
    CHECK(one.code == 1);
    CHECK(one.out.rfind("EmptyWithinBound\n", 0) == 0);
    CHECK(one.out.find("index_cut: true") != std::string::npos);
}

TEST_CASE("parse errors carry line numbers") {
    const std::string head =
        "kind cfgs\ncounters 0\nstates q0 q1\nstart_state q0\nfinal q0\nnonterminals S\nterminals a\naxiom S\n";
    try {
        parse_grammar(head + "rule q0 S -> q1\n");
        FAIL("missing rhs accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 9);
    }

    const std::string counted =
        "kind cfgsc\ncounters 2 reversal 1\nstates q\nstart_state q\nfinal q\nnonterminals S\nterminals a\naxiom S\n"
        "rule q [z] S -> q [0,0] a\n";
    try {
        parse_grammar(counted);
        FAIL("guard arity accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 9);
        CHECK(std::string(e.what()).find("guard arity") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_grammar(head + "colour blue\n"), ParseError);
    CHECK_THROWS_AS(parse_grammar(head + "rule q0 T -> q1 a\n"), ParseError);
}

TEST_CASE("errors and usage exit with status 2") {
    const Result none = run({});
    CHECK(none.code == 2);
    CHECK(none.err.find("Usage") != std::string::npos);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"enumerate", corpus_file("example1_k2"), "--mode", "sideways"}).code == 2);
    CHECK(run({"enumerate", "/nonexistent/file.sg"}).code == 2);
    CHECK(run({"subset-sum", "--xs", "3,x", "--target", "5"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("shipped corpus files match the built-in corpus") {
    for (const auto& e : corpus()) {
        CAPTURE(e.name);
        CHECK(parse_grammar(read_file(corpus_file(e.name))) == e.grammar);
    }
    const Result list = run({"corpus", "--list"});
    CHECK(list.code == 0);
    CHECK(list.out.find("example1_k2") != std::string::npos);
}
