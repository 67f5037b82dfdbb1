#pragma once

#include <cstdint>
#include <initializer_list>
#include <set>
#include <string_view>

#include "stategram/derive.hpp"
#include "stategram/grammar.hpp"

namespace support {

inline stategram::ExplorationBudget budget(std::size_t steps, std::size_t form, std::int64_t counter) {
    stategram::ExplorationBudget b;
    b.max_steps = steps;
    b.max_form_len = form;
    b.max_counter = counter;
    return b;
}

/// Words spelled in the grammar's terminals; "" is the empty word.
template <class HasParse>
std::set<stategram::Word> words(const HasParse& g, std::initializer_list<const char*> spelled) {
    std::set<stategram::Word> out;
    for (const char* s : spelled) out.insert(std::string_view(s).empty() ? stategram::Word{} : g.parse_word(s));
    return out;
}

}  // namespace support
