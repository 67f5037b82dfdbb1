#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "stategram/grammar.hpp"
#include "stategram/machine.hpp"
#include "stategram/transform.hpp"

namespace stategram {

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Parses and validates; with `check` false the validation step is skipped.
StateGrammar parse_grammar(std::string_view text, bool check = true);
std::string print_grammar(const StateGrammar& g);

/// Grammar file plus `control_states`, `control_start`, `control_final` and
/// `control <q> p<i> <q'>` lines; rule i of the file is label p<i>.
ControlledCfg parse_controlled(std::string_view text);
std::string print_controlled(const ControlledCfg& c);

CounterMachine parse_machine(std::string_view text);
std::string print_machine(const CounterMachine& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace stategram
