#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "stategram/io.hpp"

namespace stategram {

namespace {

// Splits a line into tokens, dropping a `#` comment that starts a token.
std::vector<std::string> tokens(std::string_view line) {
    std::vector<std::string> out;
    for (std::string& t : split_ws(line)) {
        if (t[0] == '#') break;
        if (t.size() >= 2 && t.front() == '"' && t.back() == '"') t = t.substr(1, t.size() - 2);
        out.push_back(std::move(t));
    }
    return out;
}

std::string quote(const std::string& name) {
    if (name.empty() || name[0] == '#' || name[0] == '"' || name == "eps" || name == "->") return '"' + name + '"';
    return name;
}

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += " " + quote(n);
    return out;
}

std::uint64_t number(const std::string& s, std::size_t line) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(line, "expected a number, got '" + s + "'");
    return v;
}

std::string bracketed(const std::string& tok, std::size_t line, const char* what) {
    if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']')
        throw ParseError(line, std::string("expected ") + what + " in brackets, got '" + tok + "'");
    return tok.substr(1, tok.size() - 2);
}

struct Reader {
    StateGrammar g;
    bool have_kind = false;
    bool have_accept = false;
    bool have_start = false;
    bool have_axiom = false;
    std::vector<std::size_t> rule_lines;

    StateId state(const std::string& n, std::size_t line) const {
        if (auto q = g.find_state(n)) return *q;
        throw ParseError(line, "undeclared state '" + n + "'");
    }
    NonterminalId nonterminal(const std::string& n, std::size_t line) const {
        if (auto a = g.find_nonterminal(n)) return *a;
        throw ParseError(line, "undeclared nonterminal '" + n + "'");
    }
    Sym symbol(const std::string& n, std::size_t line) const {
        if (auto a = g.find_nonterminal(n)) return Sym::nonterminal(*a);
        if (auto t = g.find_terminal(n)) return Sym::terminal(*t);
        throw ParseError(line, "undeclared symbol '" + n + "'");
    }

    // Returns false when the directive is not a grammar directive.
    bool directive(const std::vector<std::string>& t, std::size_t line) {
        const std::string& d = t[0];
        auto rest = [&] { return std::vector<std::string>(t.begin() + 1, t.end()); };
        auto one = [&]() -> const std::string& {
            if (t.size() != 2) throw ParseError(line, "'" + d + "' takes one argument");
            return t[1];
        };
        if (d == "kind") {
            const std::string& k = one();
            bool found = false;
            for (auto kind : {GrammarKind::Cfgs, GrammarKind::Lgs, GrammarKind::Rlgs, GrammarKind::Cfgsc,
                              GrammarKind::Cfgmc, GrammarKind::Ccfgs})
                if (to_string(kind) == k) {
                    g.kind = kind;
                    found = true;
                }
            if (!found) throw ParseError(line, "unknown kind '" + k + "'");
            have_kind = true;
        } else if (d == "counters") {
            if (t.size() < 2) throw ParseError(line, "'counters' needs a count");
            const std::size_t k = number(t[1], line);
            CounterSpec cs;
            std::size_t i = 2;
            if (i < t.size() && t[i] == "monotonic") {
                cs = CounterSpec::monotonic(k);
                ++i;
            } else if (i < t.size() && t[i] == "reversal") {
                if (i + 1 >= t.size()) throw ParseError(line, "'reversal' needs a bound");
                std::vector<std::uint32_t> bounds;
                std::string list = t[i + 1];
                for (std::size_t s = 0; s <= list.size();) {
                    std::size_t e = list.find(',', s);
                    if (e == std::string::npos) e = list.size();
                    bounds.push_back(static_cast<std::uint32_t>(number(list.substr(s, e - s), line)));
                    s = e + 1;
                }
                if (bounds.size() == 1) bounds.assign(k, bounds[0]);
                if (bounds.size() != k) throw ParseError(line, "reversal bound list length differs from counter count");
                cs = CounterSpec::reversal_bounded(std::move(bounds));
                i += 2;
            } else if (k > 0) {
                throw ParseError(line, "counters need 'reversal <r>' or 'monotonic'");
            }
            if (i < t.size() && t[i] == "generalized") {
                cs.update_style = UpdateStyle::Generalized;
                ++i;
            }
            if (i != t.size()) throw ParseError(line, "unexpected '" + t[i] + "' in counters directive");
            g.counters = cs;
            if (!have_accept)
                g.acceptance = cs.discipline == CounterDiscipline::Monotonic ? Acceptance::AllCountersEqual
                                                                             : Acceptance::FinalState;
        } else if (d == "states") {
            g.states = rest();
        } else if (d == "start_state") {
            g.initial = state(one(), line);
            have_start = true;
        } else if (d == "final") {
            g.finals.clear();
            for (const auto& n : rest()) g.finals.push_back(state(n, line));
        } else if (d == "nonterminals") {
            g.nonterminals = rest();
        } else if (d == "terminals") {
            g.terminals = rest();
        } else if (d == "axiom") {
            g.axiom = nonterminal(one(), line);
            have_axiom = true;
        } else if (d == "v2") {
            ControlPartition cp = g.control.value_or(ControlPartition{});
            cp.v2.clear();
            for (const auto& n : rest()) cp.v2.push_back(nonterminal(n, line));
            g.control = cp;
        } else if (d == "v2_rules") {
            if (!g.control) throw ParseError(line, "'v2_rules' needs a preceding 'v2'");
            const std::string& v = one();
            if (v == "sigma") g.control->variant = V2Relaxation::TerminalsInV2Rules;
            else if (v == "v1") g.control->variant = V2Relaxation::V1InV2Rules;
            else if (v == "none") g.control->variant = V2Relaxation::None;
            else throw ParseError(line, "unknown v2_rules variant '" + v + "'");
        } else if (d == "accept") {
            const std::string& a = one();
            if (a == "final") g.acceptance = Acceptance::FinalState;
            else if (a == "final-zero") g.acceptance = Acceptance::FinalStateZeroCounters;
            else if (a == "equal") g.acceptance = Acceptance::AllCountersEqual;
            else throw ParseError(line, "unknown acceptance '" + a + "'");
            have_accept = true;
        } else if (d == "rule") {
            rule(t, line);
        } else {
            return false;
        }
        return true;
    }

    void rule(const std::vector<std::string>& t, std::size_t line) {
        const std::size_t k = g.counters.count;
        const std::size_t need = k > 0 ? 7 : 5;
        if (t.size() < need + 1) throw ParseError(line, "rule is missing parts (rhs may be 'eps')");
        Production p;
        std::size_t i = 1;
        p.from = state(t[i++], line);
        if (k > 0) {
            try {
                p.guard = parse_guards(bracketed(t[i++], line, "guards"));
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(line, e.what());
            }
            if (p.guard.size() != k) throw ParseError(line, "guard arity " + std::to_string(p.guard.size()) +
                                                                " does not match " + std::to_string(k) + " counters");
        }
        p.lhs = nonterminal(t[i++], line);
        if (t[i++] != "->") throw ParseError(line, "expected '->'");
        p.to = state(t[i++], line);
        if (k > 0) {
            try {
                p.update = parse_updates(bracketed(t[i++], line, "updates"));
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(line, e.what());
            }
            if (p.update.size() != k) throw ParseError(line, "update arity " + std::to_string(p.update.size()) +
                                                                 " does not match " + std::to_string(k) + " counters");
        }
        if (i >= t.size()) throw ParseError(line, "rule is missing its right-hand side (use 'eps')");
        if (!(t.size() == i + 1 && t[i] == "eps"))
            for (; i < t.size(); ++i) p.rhs.push_back(symbol(t[i], line));
        g.productions.push_back(std::move(p));
        rule_lines.push_back(line);
    }

    void finish(std::size_t line, bool check) {
        if (!have_kind) throw ParseError(line, "missing 'kind' directive");
        if (g.states.empty()) throw ParseError(line, "missing 'states' directive");
        if (!have_start) throw ParseError(line, "missing 'start_state' directive");
        if (!have_axiom) throw ParseError(line, "missing 'axiom' directive");
        auto report = check ? validate(g) : std::vector<std::string>{};
        if (!report.empty()) throw ParseError(line, "invalid grammar: " + report.front());
    }
};

std::string print_counters(const CounterSpec& cs) {
    std::string out = "counters " + std::to_string(cs.count);
    if (cs.discipline == CounterDiscipline::Monotonic) {
        out += " monotonic";
    } else if (cs.discipline == CounterDiscipline::ReversalBounded) {
        const auto& b = cs.reversal_bounds;
        out += " reversal ";
        if (std::all_of(b.begin(), b.end(), [&](auto r) { return r == b.front(); })) {
            out += std::to_string(b.front());
        } else {
            for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + std::to_string(b[i]);
        }
    }
    if (cs.update_style == UpdateStyle::Generalized) out += " generalized";
    return out;
}

template <class Extra>
StateGrammar read(std::string_view text, Extra&& extra, std::size_t& last_line, bool check = true) {
    Reader r;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto t = tokens(line);
        if (t.empty()) continue;
        // Rules and directives need the declarations above them; check header order lazily.
        if (t[0] == "rule" && !r.have_kind) throw ParseError(n, "'rule' before 'kind'");
        if (!r.directive(t, n) && !extra(r, t, n)) throw ParseError(n, "unknown directive '" + t[0] + "'");
    }
    last_line = n;
    r.finish(n, check);
    return r.g;
}

}  // namespace

StateGrammar parse_grammar(std::string_view text, bool check) {
    std::size_t last = 0;
    return read(text, [](Reader&, const std::vector<std::string>&, std::size_t) { return false; }, last, check);
}

std::string print_grammar(const StateGrammar& g) {
    std::ostringstream os;
    auto names = [&](const std::vector<StateId>& ids) {
        std::vector<std::string> out;
        for (StateId q : ids) out.push_back(g.states[q]);
        return out;
    };
    os << "kind " << to_string(g.kind) << "\n";
    os << print_counters(g.counters) << "\n";
    os << "states" << join(g.states) << "\n";
    os << "start_state " << quote(g.states[g.initial]) << "\n";
    os << "final" << join(names(g.finals)) << "\n";
    os << "nonterminals" << join(g.nonterminals) << "\n";
    if (g.control) {
        std::vector<std::string> v2;
        for (NonterminalId a : g.control->v2) v2.push_back(g.nonterminals[a]);
        os << "v2" << join(v2) << "\n";
        if (g.control->variant == V2Relaxation::TerminalsInV2Rules) os << "v2_rules sigma\n";
        if (g.control->variant == V2Relaxation::V1InV2Rules) os << "v2_rules v1\n";
    }
    os << "terminals" << join(g.terminals) << "\n";
    os << "axiom " << quote(g.nonterminals[g.axiom]) << "\n";
    const Acceptance implied = g.counters.discipline == CounterDiscipline::Monotonic ? Acceptance::AllCountersEqual
                                                                                     : Acceptance::FinalState;
    if (g.acceptance != implied) os << "accept " << to_string(g.acceptance) << "\n";
    const bool counted = g.counters.count > 0;
    for (const Production& p : g.productions) {
        os << "rule " << quote(g.states[p.from]);
        if (counted) os << " " << format_guards(p.guard);
        os << " " << quote(g.nonterminals[p.lhs]) << " -> " << quote(g.states[p.to]);
        if (counted) os << " " << format_updates(p.update);
        if (p.rhs.empty()) os << " eps";
        for (Sym s : p.rhs) os << " " << quote(g.name(s));
        os << "\n";
    }
    return os.str();
}

ControlledCfg parse_controlled(std::string_view text) {
    ControlAutomaton a;
    struct Pending {
        std::string from, label, to;
        std::size_t line;
    };
    std::vector<Pending> edges;
    std::vector<std::string> finals;
    std::optional<std::string> start;
    std::size_t start_line = 0, final_line = 0;
    auto extra = [&](Reader&, const std::vector<std::string>& t, std::size_t line) {
        if (t[0] == "control_states") {
            a.states.assign(t.begin() + 1, t.end());
        } else if (t[0] == "control_start") {
            if (t.size() != 2) throw ParseError(line, "'control_start' takes one argument");
            start = t[1];
            start_line = line;
        } else if (t[0] == "control_final") {
            finals.assign(t.begin() + 1, t.end());
            final_line = line;
        } else if (t[0] == "control") {
            if (t.size() != 4) throw ParseError(line, "control edges read 'control <q> p<i> <q'>'");
            edges.push_back({t[1], t[2], t[3], line});
        } else {
            return false;
        }
        return true;
    };
    std::size_t last = 0;
    ControlledCfg c;
    c.base = read(text, extra, last);
    auto state = [&](const std::string& n, std::size_t line) {
        auto it = std::find(a.states.begin(), a.states.end(), n);
        if (it == a.states.end()) throw ParseError(line, "undeclared control state '" + n + "'");
        return static_cast<StateId>(it - a.states.begin());
    };
    if (!start) throw ParseError(last, "missing 'control_start' directive");
    a.initial = state(*start, start_line);
    for (const auto& f : finals) a.finals.push_back(state(f, final_line));
    for (const auto& e : edges) {
        if (e.label.size() < 2 || e.label[0] != 'p') throw ParseError(e.line, "control labels are p<i>");
        const std::size_t i = number(e.label.substr(1), e.line);
        if (i == 0 || i > c.base.productions.size()) throw ParseError(e.line, "no rule " + e.label);
        a.edges.push_back({state(e.from, e.line), i - 1, state(e.to, e.line)});
    }
    c.control = std::move(a);
    return c;
}

std::string print_controlled(const ControlledCfg& c) {
    std::ostringstream os;
    os << print_grammar(c.base);
    const ControlAutomaton& a = c.control;
    os << "control_states" << join(a.states) << "\n";
    os << "control_start " << quote(a.states[a.initial]) << "\n";
    os << "control_final";
    for (StateId f : a.finals) os << " " << quote(a.states[f]);
    os << "\n";
    for (const auto& e : a.edges)
        os << "control " << quote(a.states[e.from]) << " p" << e.label + 1 << " " << quote(a.states[e.to]) << "\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

}  // namespace stategram
