#include <algorithm>
#include <charconv>
#include <sstream>

#include "stategram/io.hpp"

namespace stategram {

namespace {

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
    if (name.empty() || name[0] == '#' || name[0] == '"' || name == "eps" || name == "." || name == "->")
        return '"' + name + '"';
    return name;
}

std::uint32_t number(const std::string& s, std::size_t line) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(line, "expected a number, got '" + s + "'");
    return v;
}

template <class T>
std::uint32_t find(const std::vector<std::string>& names, const std::string& n, std::size_t line, const char* what) {
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) throw ParseError(line, std::string("undeclared ") + what + " '" + n + "'");
    return static_cast<T>(it - names.begin());
}

}  // namespace

CounterMachine parse_machine(std::string_view text) {
    CounterMachine m;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t n = 0;
    bool header = false, have_start = false;
    std::optional<std::string> bottom;
    std::optional<std::uint32_t> stack_bound;
    std::vector<std::string> stack;
    bool has_stack = false;
    struct Pending {
        std::vector<std::string> t;
        std::size_t line;
    };
    std::vector<Pending> trans;
    std::vector<std::string> accepting;
    std::string start;
    std::size_t start_line = 0, accept_line = 0;
    while (std::getline(in, raw)) {
        ++n;
        auto t = tokens(raw);
        if (t.empty()) continue;
        const std::string& d = t[0];
        if (!header) {
            if (d != "machine") throw ParseError(n, "machine files start with 'machine'");
            header = true;
        } else if (d == "states") {
            m.states.assign(t.begin() + 1, t.end());
        } else if (d == "inputs") {
            m.inputs.assign(t.begin() + 1, t.end());
        } else if (d == "counters") {
            if (t.size() < 2) throw ParseError(n, "'counters' needs a count");
            const std::size_t k = number(t[1], n);
            if (k == 0) {
                m.counters = CounterSpec::none();
            } else {
                if (t.size() != 4 || t[2] != "reversal") throw ParseError(n, "machine counters read 'counters <k> reversal <r>'");
                std::vector<std::uint32_t> bounds;
                std::string list = t[3];
                for (std::size_t s = 0; s <= list.size();) {
                    std::size_t e = list.find(',', s);
                    if (e == std::string::npos) e = list.size();
                    bounds.push_back(number(list.substr(s, e - s), n));
                    s = e + 1;
                }
                if (bounds.size() == 1) bounds.assign(k, bounds[0]);
                if (bounds.size() != k) throw ParseError(n, "reversal bound list length differs from counter count");
                m.counters = CounterSpec::reversal_bounded(std::move(bounds));
            }
        } else if (d == "stack") {
            stack.assign(t.begin() + 1, t.end());
            has_stack = true;
        } else if (d == "bottom") {
            if (t.size() != 2) throw ParseError(n, "'bottom' takes one argument");
            bottom = t[1];
        } else if (d == "stack_reversal") {
            if (t.size() != 2) throw ParseError(n, "'stack_reversal' takes one argument");
            stack_bound = number(t[1], n);
        } else if (d == "start_state") {
            if (t.size() != 2) throw ParseError(n, "'start_state' takes one argument");
            start = t[1];
            start_line = n;
            have_start = true;
        } else if (d == "accept") {
            accepting.assign(t.begin() + 1, t.end());
            accept_line = n;
        } else if (d == "trans") {
            trans.push_back({t, n});
        } else {
            throw ParseError(n, "unknown directive '" + d + "'");
        }
    }
    if (!header) throw ParseError(n, "empty machine file");
    if (!have_start) throw ParseError(n, "missing 'start_state' directive");
    m.initial = find<StateId>(m.states, start, start_line, "state");
    for (const auto& a : accepting) m.accepting.push_back(find<StateId>(m.states, a, accept_line, "state"));
    if (has_stack) {
        Pushdown pd;
        pd.alphabet = stack;
        if (!bottom) throw ParseError(n, "stack without 'bottom'");
        pd.bottom = find<StackSym>(stack, *bottom, n, "stack symbol");
        pd.reversal_bound = stack_bound;
        m.pushdown = pd;
    }
    const std::size_t k = m.counters.count;
    for (const auto& [t, line] : trans) {
        // trans <from> <in|eps> [g] <top|.> -> <to> [u] <push...|eps>
        const std::size_t need = 6 + (k > 0 ? 2 : 0);
        if (t.size() < need + 1) throw ParseError(line, "transition is missing parts (push may be 'eps')");
        MachineTransition tr;
        std::size_t i = 1;
        tr.from = find<StateId>(m.states, t[i++], line, "state");
        if (t[i] != "eps") tr.input = find<TerminalId>(m.inputs, t[i], line, "input symbol");
        ++i;
        auto bracket = [&](const std::string& tok) {
            if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']')
                throw ParseError(line, "expected a bracketed list, got '" + tok + "'");
            return tok.substr(1, tok.size() - 2);
        };
        try {
            if (k > 0) tr.guard = parse_guards(bracket(t[i++]));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(line, e.what());
        }
        if (tr.guard.size() != k) throw ParseError(line, "guard arity does not match counters");
        if (t[i] != ".") {
            if (!m.pushdown) throw ParseError(line, "stack symbol in a stackless machine");
            tr.top = find<StackSym>(m.pushdown->alphabet, t[i], line, "stack symbol");
        }
        ++i;
        if (t[i++] != "->") throw ParseError(line, "expected '->'");
        tr.to = find<StateId>(m.states, t[i++], line, "state");
        try {
            if (k > 0) tr.update = parse_updates(bracket(t[i++]));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(line, e.what());
        }
        if (tr.update.size() != k) throw ParseError(line, "update arity does not match counters");
        if (i >= t.size()) throw ParseError(line, "missing push word (use 'eps')");
        if (!(t.size() == i + 1 && t[i] == "eps")) {
            if (!m.pushdown) throw ParseError(line, "push in a stackless machine");
            for (; i < t.size(); ++i) tr.push.push_back(find<StackSym>(m.pushdown->alphabet, t[i], line, "stack symbol"));
        }
        m.transitions.push_back(std::move(tr));
    }
    auto report = validate(m);
    if (!report.empty()) throw ParseError(n, "invalid machine: " + report.front());
    return m;
}

std::string print_machine(const CounterMachine& m) {
    std::ostringstream os;
    auto list = [&](const std::vector<std::string>& names) {
        for (const auto& s : names) os << " " << quote(s);
        os << "\n";
    };
    os << "machine\n";
    os << "states";
    list(m.states);
    os << "inputs";
    list(m.inputs);
    const std::size_t k = m.counters.count;
    os << "counters " << k;
    if (k > 0) {
        const auto& b = m.counters.reversal_bounds;
        os << " reversal ";
        if (std::all_of(b.begin(), b.end(), [&](auto r) { return r == b.front(); })) {
            os << b.front();
        } else {
            for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
        }
    }
    os << "\n";
    if (m.pushdown) {
        os << "stack";
        list(m.pushdown->alphabet);
        os << "bottom " << quote(m.pushdown->alphabet[m.pushdown->bottom]) << "\n";
        if (m.pushdown->reversal_bound) os << "stack_reversal " << *m.pushdown->reversal_bound << "\n";
    }
    os << "start_state " << quote(m.states[m.initial]) << "\n";
    os << "accept";
    for (StateId q : m.accepting) os << " " << quote(m.states[q]);
    os << "\n";
    for (const MachineTransition& t : m.transitions) {
        os << "trans " << quote(m.states[t.from]) << " " << (t.input ? quote(m.inputs[*t.input]) : "eps");
        if (k > 0) os << " " << format_guards(t.guard);
        os << " " << (t.top ? quote(m.pushdown->alphabet[*t.top]) : ".");
        os << " -> " << quote(m.states[t.to]);
        if (k > 0) os << " " << format_updates(t.update);
        if (t.push.empty()) os << " eps";
        for (StackSym s : t.push) os << " " << quote(m.pushdown->alphabet[s]);
        os << "\n";
    }
    return os.str();
}

}  // namespace stategram
