#include <algorithm>
#include <map>
#include <set>

#include "stategram/transform.hpp"

namespace stategram {

namespace {

// Phase-tagged copies of a state for one split counter with n one-reversal replacements:
// zero states z0..zn, rising states u1..un, falling states d1..dn, and transfer states b2..bn.
class PhaseStates {
public:
    PhaseStates(const StateGrammar& g, std::size_t n) : n_(n) {
        for (const auto& q : g.states) {
            for (std::size_t i = 0; i <= n; ++i) names_.push_back(q + "@z" + std::to_string(i));
            for (std::size_t i = 1; i <= n; ++i) names_.push_back(q + "@u" + std::to_string(i));
            for (std::size_t i = 1; i <= n; ++i) names_.push_back(q + "@d" + std::to_string(i));
            for (std::size_t i = 2; i <= n; ++i) names_.push_back(q + "@b" + std::to_string(i));
        }
    }
    std::size_t per_state() const { return (n_ + 1) + n_ + n_ + (n_ - 1); }
    StateId zero(StateId q, std::size_t i) const { return base(q) + static_cast<StateId>(i); }
    StateId up(StateId q, std::size_t i) const { return base(q) + static_cast<StateId>(n_ + i); }
    StateId down(StateId q, std::size_t i) const { return base(q) + static_cast<StateId>(2 * n_ + i); }
    StateId transfer(StateId q, std::size_t i) const { return base(q) + static_cast<StateId>(3 * n_ + i - 1); }
    std::vector<std::string> take_names() { return std::move(names_); }

private:
    StateId base(StateId q) const { return static_cast<StateId>(q * per_state()); }
    std::size_t n_;
    std::vector<std::string> names_;
};

struct Block {
    std::vector<Guard> guard;
    std::vector<std::int64_t> update;
};

// Block guards: counter `active` (1-based, 0 = none) gets `g`, all others are zero.
Block block(std::size_t n, std::size_t active, Guard g) {
    Block b{std::vector<Guard>(n, Guard::Zero), std::vector<std::int64_t>(n, 0)};
    if (active) b.guard[active - 1] = g;
    return b;
}

// Replaces counter c of g by n = floor(r/2)+1 one-reversal counters.
StateGrammar split_counter(const StateGrammar& g, std::size_t c) {
    const std::uint32_t r = g.counters.reversal_bounds[c];
    const std::size_t n = r / 2 + 1;
    // With an even bound the last replacement counter may rise but must never fall.
    const bool last_rises_only = r % 2 == 0;

    PhaseStates ps(g, n);
    StateGrammar out = g;
    out.states = ps.take_names();
    out.productions.clear();
    out.initial = ps.zero(g.initial, 0);
    out.finals.clear();
    for (StateId f : g.finals) {
        for (std::size_t i = 0; i <= n; ++i) out.finals.push_back(ps.zero(f, i));
        for (std::size_t i = 1; i <= n; ++i) {
            out.finals.push_back(ps.up(f, i));
            out.finals.push_back(ps.down(f, i));
        }
    }
    std::sort(out.finals.begin(), out.finals.end());

    std::vector<std::uint32_t> bounds = g.counters.reversal_bounds;
    bounds.erase(bounds.begin() + static_cast<std::ptrdiff_t>(c));
    bounds.insert(bounds.begin() + static_cast<std::ptrdiff_t>(c), n, 1U);
    out.counters = CounterSpec::reversal_bounded(std::move(bounds));

    std::optional<NonterminalId> transfer_symbol;
    std::set<std::pair<StateId, std::size_t>> transfer_targets;

    auto emit = [&](StateId from, const Production& t, const Block& b, StateId to, Word rhs) {
        Production p;
        p.from = from;
        p.lhs = t.lhs;
        p.to = to;
        p.rhs = std::move(rhs);
        p.guard = t.guard;
        p.update = t.update;
        p.guard.erase(p.guard.begin() + static_cast<std::ptrdiff_t>(c));
        p.update.erase(p.update.begin() + static_cast<std::ptrdiff_t>(c));
        p.guard.insert(p.guard.begin() + static_cast<std::ptrdiff_t>(c), b.guard.begin(), b.guard.end());
        p.update.insert(p.update.begin() + static_cast<std::ptrdiff_t>(c), b.update.begin(), b.update.end());
        out.productions.push_back(std::move(p));
    };

    for (const Production& orig : g.productions) {
        std::vector<Guard> variants;
        if (orig.guard[c] == Guard::Any) {
            if (orig.update[c] >= 0) variants.push_back(Guard::Zero);
            variants.push_back(Guard::Positive);
        } else {
            variants.push_back(orig.guard[c]);
        }
        const std::int64_t z = orig.update[c];
        const StateId p = orig.from;
        const StateId q = orig.to;
        for (Guard gc : variants) {
            if (gc == Guard::Zero) {
                if (z == 0) {
                    for (std::size_t i = 0; i <= n; ++i) emit(ps.zero(p, i), orig, block(n, 0, Guard::Zero), ps.zero(q, i), orig.rhs);
                    for (std::size_t i = 1; i <= n; ++i) emit(ps.down(p, i), orig, block(n, 0, Guard::Zero), ps.zero(q, i), orig.rhs);
                } else if (z == 1) {
                    for (std::size_t i = 0; i < n; ++i) {
                        Block b = block(n, 0, Guard::Zero);
                        b.update[i] = 1;
                        emit(ps.zero(p, i), orig, b, ps.up(q, i + 1), orig.rhs);
                        if (i >= 1) emit(ps.down(p, i), orig, b, ps.up(q, i + 1), orig.rhs);
                    }
                }
                continue;
            }
            // Positive guard on the split counter.
            for (std::size_t i = 1; i <= n; ++i) {
                Block b = block(n, i, Guard::Positive);
                b.update[i - 1] = z;
                if (z >= 0) emit(ps.up(p, i), orig, b, ps.up(q, i), orig.rhs);
                if (z <= 0) emit(ps.down(p, i), orig, b, ps.down(q, i), orig.rhs);
                if (z == -1 && !(last_rises_only && i == n)) emit(ps.up(p, i), orig, b, ps.down(q, i), orig.rhs);
                if (z == 1 && i < n) {
                    if (!transfer_symbol) {
                        auto taken = [&](const std::string& s) {
                            return std::find(out.nonterminals.begin(), out.nonterminals.end(), s) != out.nonterminals.end();
                        };
                        out.nonterminals.push_back(fresh_name("X", taken));
                        transfer_symbol = static_cast<NonterminalId>(out.nonterminals.size() - 1);
                    }
                    Block t = block(n, i, Guard::Positive);
                    t.update[i] = 1;
                    Word rhs{Sym::nonterminal(*transfer_symbol)};
                    rhs.insert(rhs.end(), orig.rhs.begin(), orig.rhs.end());
                    emit(ps.down(p, i), orig, t, ps.transfer(q, i + 1), std::move(rhs));
                    transfer_targets.insert({q, i + 1});
                }
            }
        }
    }

    // Transfer states move counter i-1 into counter i through X, then erase X.
    const std::size_t k = out.counters.count;
    for (auto [q, i] : transfer_targets) {
        Production move;
        move.from = move.to = ps.transfer(q, i);
        move.lhs = *transfer_symbol;
        move.rhs = {Sym::nonterminal(*transfer_symbol)};
        move.guard.assign(k, Guard::Any);
        move.update.assign(k, 0);
        for (std::size_t j = 1; j <= n; ++j) move.guard[c + j - 1] = Guard::Zero;
        move.guard[c + i - 2] = Guard::Positive;
        move.guard[c + i - 1] = Guard::Any;
        move.update[c + i - 2] = -1;
        move.update[c + i - 1] = 1;
        out.productions.push_back(move);

        Production done = move;
        done.to = ps.up(q, i);
        done.rhs.clear();
        done.update.assign(k, 0);
        for (std::size_t j = 1; j <= n; ++j) done.guard[c + j - 1] = Guard::Zero;
        done.guard[c + i - 1] = Guard::Positive;
        out.productions.push_back(done);
    }
    return out;
}

// Adds a unique accepting state reached through a trailing end marker, draining counters if needed.
StateGrammar add_unique_final(const StateGrammar& g) {
    StateGrammar out = g;
    const std::size_t k = g.counters.count;
    auto nt_taken = [&](const std::string& s) {
        return std::find(out.nonterminals.begin(), out.nonterminals.end(), s) != out.nonterminals.end() ||
               std::find(out.terminals.begin(), out.terminals.end(), s) != out.terminals.end() ||
               std::find(out.states.begin(), out.states.end(), s) != out.states.end();
    };
    out.nonterminals.push_back(fresh_name(g.nonterminals[g.axiom] + "'", nt_taken));
    const NonterminalId start = static_cast<NonterminalId>(out.nonterminals.size() - 1);
    out.nonterminals.push_back(fresh_name("D", nt_taken));
    const NonterminalId end = static_cast<NonterminalId>(out.nonterminals.size() - 1);
    out.states.push_back(fresh_name("f", nt_taken));
    const StateId f = static_cast<StateId>(out.states.size() - 1);
    out.axiom = start;
    out.finals = {f};
    out.acceptance = Acceptance::FinalStateZeroCounters;
    out.control.reset();
    out.kind = k ? GrammarKind::Cfgsc : GrammarKind::Cfgs;

    const std::vector<Guard> any(k, Guard::Any);
    const std::vector<Guard> zero(k, Guard::Zero);
    const std::vector<std::int64_t> still(k, 0);
    out.productions.push_back(
        {g.initial, any, start, g.initial, still, {Sym::nonterminal(g.axiom), Sym::nonterminal(end)}});
    const bool drain = g.acceptance == Acceptance::FinalState && k > 0;
    for (StateId p : g.finals) {
        if (drain) out.productions.push_back({p, any, end, f, still, {Sym::nonterminal(end)}});
        else out.productions.push_back({p, zero, end, f, still, {}});
    }
    if (drain) {
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<Guard> gj = any;
            gj[j] = Guard::Positive;
            std::vector<std::int64_t> uj = still;
            uj[j] = -1;
            out.productions.push_back({f, gj, end, f, uj, {Sym::nonterminal(end)}});
        }
        out.productions.push_back({f, zero, end, f, still, {}});
    }
    return out;
}

}  // namespace

std::vector<StateGrammar> normal_form_stages(const StateGrammar& g) {
    const CounterSpec& cs = g.counters;
    if (cs.count > 0 && cs.discipline != CounterDiscipline::ReversalBounded)
        throw PreconditionError("normal form needs reversal-bounded counters");
    if (cs.update_style != UpdateStyle::Unit)
        throw PreconditionError("normal form needs unit updates (degeneralize first)");
    if (g.acceptance == Acceptance::AllCountersEqual)
        throw PreconditionError("normal form is undefined for monotonic acceptance");

    std::vector<StateGrammar> stages;
    StateGrammar cur = g;
    // Each pass inserts its replacement counters in place, so track the position of the next original.
    std::size_t pos = 0;
    for (std::size_t j = 0; j < cs.count; ++j) {
        const std::size_t n = cur.counters.reversal_bounds[pos] / 2 + 1;
        cur = split_counter(cur, pos);
        stages.push_back(cur);
        pos += n;
    }
    stages.push_back(add_unique_final(cur));
    return stages;
}

StateGrammar to_normal_form(const StateGrammar& g) { return normal_form_stages(g).back(); }

bool is_normal_form(const StateGrammar& g) {
    const CounterSpec& cs = g.counters;
    if (cs.update_style != UpdateStyle::Unit) return false;
    if (cs.count > 0) {
        if (cs.discipline != CounterDiscipline::ReversalBounded) return false;
        if (std::any_of(cs.reversal_bounds.begin(), cs.reversal_bounds.end(), [](auto r) { return r != 1; }))
            return false;
    }
    return g.acceptance == Acceptance::FinalStateZeroCounters && g.finals.size() == 1;
}

}  // namespace stategram
