#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stategram/grammar.hpp"

namespace stategram {

struct CorpusEntry {
    std::string name;
    std::string description;
    StateGrammar grammar;
    /// Known emptiness status under the free interpretation (control partitions ignored).
    bool nonempty = true;
    /// Index and counter cap under which the emptiness pipeline settles the status.
    std::size_t index = 1;
    std::uint64_t cap = 1;
};

const std::vector<CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(std::string_view name);
const StateGrammar& corpus_grammar(std::string_view name);

/// Two-state grammar generating a1^n b1^n ... ak^n bk^n, n >= 1 (k >= 2).
StateGrammar block_grammar(std::size_t k);

}  // namespace stategram
