#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stategram/grammar.hpp"
#include "stategram/machine.hpp"

namespace stategram {

/// Deletes every terminal from every right-hand side.
StateGrammar erase_terminals(const StateGrammar& g);

/// Stackless machine whose states [q, w] hold the state and the nonterminal content of a
/// sentential form with at most m nonterminals. Without terminals, whether a rule applies never
/// depends on where its nonterminal sits, so in free order w is kept sorted and stands for all
/// its orderings. In leftmost order only the first nonterminal is rewritten.
struct IndexMachine {
    CounterMachine machine;
    /// (q, w) for each machine state that stands for a sentential form; w is sorted in free order.
    std::vector<std::pair<StateId, Word>> labels;
    /// Some rule application was dropped because it would exceed the index.
    bool index_cut = false;
    /// Every rule application from the initial form was dropped by the index.
    bool initial_cut = false;
};

/// Which occurrences the machine may rewrite: any of them, or only the first.
enum class IndexOrder : std::uint8_t { Free, Leftmost };

IndexMachine index_grammar_to_ncm(const StateGrammar& g, std::size_t m, IndexOrder order = IndexOrder::Free);

enum class Verdict : std::uint8_t { NonEmpty, EmptyWithinBound, IndexInsufficientWarning };

std::string to_string(Verdict v);

struct EmptinessReport {
    Verdict verdict = Verdict::EmptyWithinBound;
    /// Index actually given to the machine: m plus the symbols the normalization adds.
    std::size_t machine_index = 0;
    bool index_cut = false;
    bool cap_cut = false;
    StateGrammar normalized;
    IndexMachine machine;
    std::optional<MachineRun> run;
};

/// Emptiness of g restricted to derivations of index m with counters at most cap.
/// Monotonic grammars are drained first, generalized ones degeneralized, and control partitions ignored.
EmptinessReport cfgsc_index_emptiness(const StateGrammar& g, std::size_t m, std::uint64_t cap,
                                      IndexOrder order = IndexOrder::Free);

}  // namespace stategram
