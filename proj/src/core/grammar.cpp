#include "stategram/grammar.hpp"

#include <cctype>
#include <algorithm>
#include <charconv>

namespace stategram {

CounterSpec CounterSpec::reversal_bounded(std::vector<std::uint32_t> bounds, UpdateStyle style) {
    CounterSpec c;
    c.count = bounds.size();
    c.discipline = bounds.empty() ? CounterDiscipline::None : CounterDiscipline::ReversalBounded;
    c.reversal_bounds = std::move(bounds);
    c.update_style = style;
    return c;
}

CounterSpec CounterSpec::monotonic(std::size_t k) {
    CounterSpec c;
    c.count = k;
    c.discipline = CounterDiscipline::Monotonic;
    return c;
}

std::optional<std::uint32_t> CounterSpec::bound(std::size_t j) const {
    if (discipline == CounterDiscipline::ReversalBounded && j < reversal_bounds.size())
        return reversal_bounds[j];
    if (discipline == CounterDiscipline::Monotonic) return 0;
    return std::nullopt;
}

bool ControlPartition::contains(NonterminalId a) const { return position(a).has_value(); }

std::optional<std::size_t> ControlPartition::position(NonterminalId a) const {
    auto it = std::find(v2.begin(), v2.end(), a);
    if (it == v2.end()) return std::nullopt;
    return static_cast<std::size_t>(it - v2.begin());
}

bool StateGrammar::is_final(StateId q) const {
    return std::find(finals.begin(), finals.end(), q) != finals.end();
}

namespace {
template <class Names>
std::optional<std::uint32_t> find_in(const Names& names, std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it - names.begin());
}
}  // namespace

std::optional<NonterminalId> StateGrammar::find_nonterminal(std::string_view name) const {
    return find_in(nonterminals, name);
}
std::optional<TerminalId> StateGrammar::find_terminal(std::string_view name) const {
    return find_in(terminals, name);
}
std::optional<StateId> StateGrammar::find_state(std::string_view name) const {
    return find_in(states, name);
}

const std::string& StateGrammar::name(Sym s) const {
    return s.is_terminal() ? terminals.at(s.index()) : nonterminals.at(s.index());
}

std::string StateGrammar::spell(const Word& w, std::string_view sep) const {
    if (w.empty()) return "<eps>";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += sep;
        out += name(w[i]);
    }
    return out;
}

Word StateGrammar::parse_word(std::string_view text) const {
    Word out;
    for (const std::string& chunk : split_ws(text)) {
        if (chunk == "<eps>" || chunk == "eps") continue;
        // ways[i] counts segmentations of chunk[i..] (capped at 2), next[i] records one choice.
        const std::size_t n = chunk.size();
        std::vector<int> ways(n + 1, 0);
        std::vector<TerminalId> next(n + 1, 0);
        ways[n] = 1;
        for (std::size_t i = n; i-- > 0;) {
            for (TerminalId t = 0; t < terminals.size(); ++t) {
                const std::string& name = terminals[t];
                if (name.empty() || chunk.compare(i, name.size(), name) != 0) continue;
                int w = ways[i + name.size()];
                if (w == 0) continue;
                if (ways[i] == 0) next[i] = t;
                ways[i] = std::min(2, ways[i] + w);
            }
        }
        if (ways[0] == 0) throw Error("word '" + chunk + "' is not over the terminal alphabet");
        if (ways[0] > 1)
            throw Error("word '" + chunk + "' splits into terminals in more than one way; separate symbols with spaces");
        for (std::size_t i = 0; i < n; i += terminals[next[i]].size())
            out.push_back(Sym::terminal(next[i]));
    }
    return out;
}

std::string to_string(GrammarKind k) {
    switch (k) {
        case GrammarKind::Cfgs: return "cfgs";
        case GrammarKind::Lgs: return "lgs";
        case GrammarKind::Rlgs: return "rlgs";
        case GrammarKind::Cfgsc: return "cfgsc";
        case GrammarKind::Cfgmc: return "cfgmc";
        case GrammarKind::Ccfgs: return "ccfgs";
    }
    return "?";
}

std::string to_string(Shape s) {
    switch (s) {
        case Shape::ContextFree: return "context_free";
        case Shape::Linear: return "linear";
        case Shape::RightLinear: return "right_linear";
    }
    return "?";
}

std::string to_string(Guard g) {
    switch (g) {
        case Guard::Zero: return "z";
        case Guard::Positive: return "p";
        case Guard::Any: return "*";
    }
    return "?";
}

std::string to_string(Acceptance a) {
    switch (a) {
        case Acceptance::FinalState: return "final";
        case Acceptance::FinalStateZeroCounters: return "final-zero";
        case Acceptance::AllCountersEqual: return "equal";
    }
    return "?";
}

std::vector<std::string> split_ws(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) out.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

namespace {
std::vector<std::string> split_commas(std::string_view text) {
    std::vector<std::string> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            std::string item(text.substr(start, i - start));
            item.erase(0, item.find_first_not_of(' '));
            item.erase(item.find_last_not_of(' ') + 1);
            out.push_back(item);
            start = i + 1;
        }
    }
    return out;
}
}  // namespace

std::vector<Guard> parse_guards(std::string_view text) {
    std::vector<Guard> out;
    for (const std::string& item : split_commas(text)) {
        if (item == "z" || item == "0") out.push_back(Guard::Zero);
        else if (item == "p" || item == "1") out.push_back(Guard::Positive);
        else if (item == "*") out.push_back(Guard::Any);
        else throw Error("bad guard '" + item + "'");
    }
    return out;
}

std::vector<std::int64_t> parse_updates(std::string_view text) {
    std::vector<std::int64_t> out;
    for (const std::string& item : split_commas(text)) {
        std::string_view digits = item;
        bool negative = false;
        if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
            negative = digits[0] == '-';
            digits.remove_prefix(1);
        }
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
            throw Error("bad update '" + item + "'");
        out.push_back(negative ? -v : v);
    }
    return out;
}

std::string format_guards(const std::vector<Guard>& gs) {
    std::string out = "[";
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (i) out += ",";
        out += to_string(gs[i]);
    }
    return out + "]";
}

std::string format_updates(const std::vector<std::int64_t>& us) {
    std::string out = "[";
    for (std::size_t i = 0; i < us.size(); ++i) {
        if (i) out += ",";
        if (us[i] > 0) out += "+";
        out += std::to_string(us[i]);
    }
    return out + "]";
}

GrammarBuilder::GrammarBuilder(GrammarKind kind, CounterSpec counters) {
    g_.kind = kind;
    g_.counters = std::move(counters);
    g_.acceptance = g_.counters.discipline == CounterDiscipline::Monotonic ? Acceptance::AllCountersEqual
                                                                          : Acceptance::FinalState;
}

StateId GrammarBuilder::state(std::string_view name) {
    if (auto q = g_.find_state(name)) return *q;
    g_.states.emplace_back(name);
    return static_cast<StateId>(g_.states.size() - 1);
}

NonterminalId GrammarBuilder::nonterminal(std::string_view name) {
    if (auto a = g_.find_nonterminal(name)) return *a;
    g_.nonterminals.emplace_back(name);
    return static_cast<NonterminalId>(g_.nonterminals.size() - 1);
}

TerminalId GrammarBuilder::terminal(std::string_view name) {
    if (auto t = g_.find_terminal(name)) return *t;
    g_.terminals.emplace_back(name);
    return static_cast<TerminalId>(g_.terminals.size() - 1);
}

GrammarBuilder& GrammarBuilder::states(std::string_view names) {
    for (const auto& n : split_ws(names)) state(n);
    return *this;
}

GrammarBuilder& GrammarBuilder::nonterminals(std::string_view names) {
    for (const auto& n : split_ws(names)) nonterminal(n);
    return *this;
}

GrammarBuilder& GrammarBuilder::terminals(std::string_view names) {
    for (const auto& n : split_ws(names)) terminal(n);
    return *this;
}

GrammarBuilder& GrammarBuilder::initial(std::string_view name) {
    g_.initial = state(name);
    return *this;
}

GrammarBuilder& GrammarBuilder::final_states(std::string_view names) {
    for (const auto& n : split_ws(names)) {
        StateId q = state(n);
        if (!g_.is_final(q)) g_.finals.push_back(q);
    }
    return *this;
}

GrammarBuilder& GrammarBuilder::axiom(std::string_view name) {
    g_.axiom = nonterminal(name);
    return *this;
}

GrammarBuilder& GrammarBuilder::acceptance(Acceptance a) {
    g_.acceptance = a;
    return *this;
}

GrammarBuilder& GrammarBuilder::v2(std::string_view names, V2Relaxation variant) {
    ControlPartition cp;
    cp.variant = variant;
    for (const auto& n : split_ws(names)) cp.v2.push_back(nonterminal(n));
    g_.control = std::move(cp);
    return *this;
}

Word GrammarBuilder::word(std::string_view names) const {
    Word w;
    for (const auto& n : split_ws(names)) {
        if (n == "eps") continue;
        if (auto a = g_.find_nonterminal(n)) w.push_back(Sym::nonterminal(*a));
        else if (auto t = g_.find_terminal(n)) w.push_back(Sym::terminal(*t));
        else throw Error("undeclared symbol '" + n + "'");
    }
    return w;
}

GrammarBuilder& GrammarBuilder::rule(std::string_view from, std::string_view guards, std::string_view lhs,
                                     std::string_view to, std::string_view updates, std::string_view rhs) {
    Production p;
    p.from = state(from);
    p.guard = parse_guards(guards);
    auto a = g_.find_nonterminal(lhs);
    if (!a) throw Error("undeclared nonterminal '" + std::string(lhs) + "'");
    p.lhs = *a;
    p.to = state(to);
    p.update = parse_updates(updates);
    p.rhs = word(rhs);
    g_.productions.push_back(std::move(p));
    return *this;
}

GrammarBuilder& GrammarBuilder::rule(Production p) {
    g_.productions.push_back(std::move(p));
    return *this;
}

StateGrammar GrammarBuilder::build() const { return g_; }

}  // namespace stategram
