#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stategram/decide.hpp"
#include "stategram/grammar.hpp"

namespace stategram {

struct SubsetSumInstance {
    std::vector<std::uint64_t> values;
    std::uint64_t target = 0;
};

void check_instance(const SubsetSumInstance& inst);

/// Bits of x, least significant first.
std::vector<bool> to_bits(std::uint64_t x);

/// Monotonic one-counter grammar generating the empty word with the counter at the encoded value.
/// Bits are least significant first.
StateGrammar binary_gadget(const std::vector<bool>& bits);
/// Same, from a string of 0/1 characters, least significant first.
StateGrammar binary_gadget(std::string_view bits);

struct Reduction {
    StateGrammar grammar;
    /// Index and counter cap under which the emptiness pipeline decides the instance.
    std::size_t index = 1;
    std::uint64_t cap = 0;
};

/// One 1-reversal counter, gadgets spliced in optionally; language {a} iff solvable.
Reduction subset_sum_to_cfgsc(const SubsetSumInstance& inst);
/// Right-linear, two counters with binary increments; language {a} iff solvable.
Reduction subset_sum_to_rlgsc(const SubsetSumInstance& inst);

enum class Route : std::uint8_t { Cfgsc, Rlgsc };

struct SubsetSumAnswer {
    bool solvable = false;
    /// Positions (0-based) of the chosen values when solvable.
    std::vector<std::size_t> subset;
};

SubsetSumAnswer solve_subset_sum(const SubsetSumInstance& inst, Route route);

}  // namespace stategram
