#include "stategram/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

#include "stategram/corpus.hpp"
#include "stategram/decide.hpp"
#include "stategram/derive.hpp"
#include "stategram/io.hpp"
#include "stategram/machine.hpp"
#include "stategram/reduce.hpp"
#include "stategram/transform.hpp"

namespace stategram {

namespace {

struct Budget {
    std::size_t max_len = 8;
    std::size_t max_steps = 64;
    std::int64_t max_counter = 16;
    std::size_t max_form = 0;

    void attach(CLI::App& cmd) {
        cmd.add_option("--max-len", max_len, "longest word reported")->capture_default_str();
        cmd.add_option("--max-steps", max_steps, "longest derivation or run explored")->capture_default_str();
        cmd.add_option("--max-counter", max_counter, "largest counter value explored")->capture_default_str();
        cmd.add_option("--max-form", max_form, "longest sentential form or stack (default 2*max-len+4)");
    }
    ExplorationBudget get() const {
        ExplorationBudget b;
        b.max_steps = max_steps;
        b.max_counter = max_counter;
        b.max_form_len = max_form ? max_form : 2 * max_len + 4;
        return b;
    }
};

// Shortlex order on spelled words, so shorter words come first.
template <class Spell>
std::vector<std::string> shortlex(const std::set<Word>& words, std::size_t max_len, Spell&& spell) {
    std::vector<std::pair<std::size_t, std::string>> keyed;
    for (const Word& w : words)
        if (w.size() <= max_len) keyed.emplace_back(w.size(), spell(w));
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::string> out;
    for (auto& [n, s] : keyed) out.push_back(std::move(s));
    return out;
}

DerivationMode mode_of(const std::string& text) {
    auto m = parse_mode(text);
    if (!m) throw PreconditionError("unknown mode '" + text + "'");
    return *m;
}

StateGrammar load(const std::string& path) { return parse_grammar(read_file(path)); }

std::vector<std::uint64_t> parse_list(const std::string& text) {
    std::vector<std::uint64_t> xs;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        std::uint64_t x = 0;
        try {
            x = std::stoull(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw PreconditionError("bad number '" + item + "' in list");
        xs.push_back(x);
    }
    return xs;
}

std::string join(const std::vector<std::uint64_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Derive, transform and decide state grammars with counters", "sgtool"};
    app.require_subcommand(1);
    int status = 0;
    std::function<void()> action;

    std::string file, word, mode = "free", output, pass, target, route = "cfgsc", xs, bits;
    std::size_t index = 1;
    std::uint64_t cap = 16, sum = 0;
    bool trace = false, list = false;
    Budget budget;

    auto* validate_cmd = app.add_subcommand("validate", "check a grammar file");
    validate_cmd->add_option("FILE", file)->required();
    validate_cmd->callback([&] {
        action = [&] {
            const StateGrammar g = parse_grammar(read_file(file), false);
            const auto report = validate(g);
            if (report.empty()) {
                out << "valid\n";
                return;
            }
            for (const auto& line : report) out << line << "\n";
            status = 1;
        };
    });

    auto* classify_cmd = app.add_subcommand("classify", "report rule shape and lambda-freeness");
    classify_cmd->add_option("FILE", file)->required();
    classify_cmd->callback([&] {
        action = [&] {
            const StateGrammar g = load(file);
            const GrammarClass c = classify(g);
            out << "kind: " << to_string(g.kind) << "\n"
                << "shape: " << to_string(c.shape) << "\n"
                << "lambda_free: " << (c.lambda_free ? "true" : "false") << "\n";
        };
    });

    auto* enumerate_cmd = app.add_subcommand("enumerate", "list generated words within a budget");
    enumerate_cmd->add_option("FILE", file)->required();
    enumerate_cmd->add_option("--mode", mode, "free|leftmost|leftish|circular|controlled")->capture_default_str();
    budget.attach(*enumerate_cmd);
    enumerate_cmd->callback([&] {
        action = [&] {
            const StateGrammar g = load(file);
            const auto words = enumerate(g, mode_of(mode), budget.get());
            for (const auto& w : shortlex(words, budget.max_len, [&](const Word& x) { return g.spell(x); }))
                out << w << "\n";
        };
    });

    auto* member_cmd = app.add_subcommand("member", "search for a derivation of a word");
    member_cmd->add_option("FILE", file)->required();
    member_cmd->add_option("WORD", word)->required();
    member_cmd->add_option("--mode", mode, "free|leftmost|leftish|circular|controlled")->capture_default_str();
    member_cmd->add_flag("--trace", trace, "print the derivation found");
    budget.attach(*member_cmd);
    member_cmd->callback([&] {
        action = [&] {
            const StateGrammar g = load(file);
            const Word w = word == "eps" || word == "<eps>" ? Word{} : g.parse_word(word);
            ExplorationBudget b = budget.get();
            b.max_form_len = std::max(b.max_form_len, 2 * w.size() + 4);
            const auto d = member(g, mode_of(mode), w, b);
            if (!d) {
                out << "no derivation of " << g.spell(w) << " within budget\n";
                status = 1;
                return;
            }
            out << "member\n";
            if (trace) out << format_derivation(g, *d);
        };
    });

    auto* transform_cmd = app.add_subcommand("transform", "apply a grammar transformation");
    transform_cmd->add_option("FILE", file)->required();
    transform_cmd
        ->add_option("--pass", pass,
                     "lgs-to-lg|to-regctrl|from-regctrl|normal-form|strip-counters|cfgmc-to-cfgsc|"
                     "cfgmc-to-ccfgs|expand-ccfgs|degeneralize")
        ->required();
    transform_cmd->add_option("-o,--output", output)->required();
    transform_cmd->callback([&] {
        action = [&] {
            const std::string text = read_file(file);
            if (pass == "from-regctrl") {
                write_file(output, print_grammar(regctrl_to_cfgs(parse_controlled(text))));
            } else if (pass == "to-regctrl") {
                write_file(output, print_controlled(cfgs_to_regctrl(parse_grammar(text))));
            } else if (pass == "strip-counters") {
                const StrippedGrammar s = strip_counters(parse_grammar(text));
                write_file(output, print_grammar(s.grammar));
                std::string pairs;
                for (auto [c, d] : s.filter.pairs)
                    pairs += s.grammar.terminals[c] + " " + s.grammar.terminals[d] + "\n";
                write_file(output + ".filter", pairs);
            } else {
                static const std::vector<std::pair<std::string, StateGrammar (*)(const StateGrammar&)>> passes{
                    {"lgs-to-lg", lgs_to_lg},
                    {"normal-form", to_normal_form},
                    {"cfgmc-to-cfgsc", cfgmc_to_cfgsc},
                    {"cfgmc-to-ccfgs", cfgmc_to_ccfgs},
                    {"expand-ccfgs", expand_ccfgs_states},
                    {"degeneralize", degeneralize},
                };
                auto it = std::find_if(passes.begin(), passes.end(), [&](const auto& p) { return p.first == pass; });
                if (it == passes.end()) throw PreconditionError("unknown pass '" + pass + "'");
                write_file(output, print_grammar(it->second(parse_grammar(text))));
            }
            out << "wrote " << output << "\n";
        };
    });

    auto* machine_cmd_out = app.add_subcommand("to-machine", "build an equivalent machine");
    machine_cmd_out->add_option("FILE", file)->required();
    machine_cmd_out->add_option("--target", target, "npcm-lm|ccfgs-npcm|ncm|npcm1")->required();
    machine_cmd_out->add_option("-o,--output", output)->required();
    machine_cmd_out->callback([&] {
        action = [&] {
            const StateGrammar g = load(file);
            CounterMachine m;
            if (target == "npcm-lm") m = cfgsc_lm_to_npcm(g);
            else if (target == "ccfgs-npcm") m = ccfgs_to_npcm(g);
            else if (target == "ncm") m = rlgsc_to_ncm(g);
            else if (target == "npcm1") m = lgsc_to_npcm1(g);
            else throw PreconditionError("unknown target '" + target + "'");
            write_file(output, print_machine(m));
            out << "wrote " << output << " (" << m.states.size() << " states, " << m.transitions.size()
                << " transitions)\n";
        };
    });

    auto* machine_cmd = app.add_subcommand("machine", "run, enumerate or test a machine file");
    machine_cmd->require_subcommand(1);
    auto* run_cmd = machine_cmd->add_subcommand("run", "search for an accepting run on a word");
    run_cmd->add_option("FILE", file)->required();
    run_cmd->add_option("WORD", word)->required();
    run_cmd->add_flag("--trace", trace, "print the run found");
    budget.attach(*run_cmd);
    run_cmd->callback([&] {
        action = [&] {
            const CounterMachine m = parse_machine(read_file(file));
            const Word w = word == "eps" || word == "<eps>" ? Word{} : m.parse_word(word);
            ExplorationBudget b = budget.get();
            b.max_form_len = std::max(b.max_form_len, 2 * w.size() + 4);
            const auto run = accepts(m, w, b);
            if (!run) {
                out << "no accepting run on " << m.spell(w) << " within budget\n";
                status = 1;
                return;
            }
            out << "accepted\n";
            if (trace) out << format_run(m, *run);
        };
    });
    auto* menum_cmd = machine_cmd->add_subcommand("enumerate", "list accepted words within a budget");
    menum_cmd->add_option("FILE", file)->required();
    budget.attach(*menum_cmd);
    menum_cmd->callback([&] {
        action = [&] {
            const CounterMachine m = parse_machine(read_file(file));
            const auto words = enumerate_machine(m, budget.get());
            for (const auto& w : shortlex(words, budget.max_len, [&](const Word& x) { return m.spell(x); }))
                out << w << "\n";
        };
    });
    auto* mempty_cmd = machine_cmd->add_subcommand("empty", "reachability with counters capped");
    mempty_cmd->add_option("FILE", file)->required();
    mempty_cmd->add_option("--cap", cap, "largest counter value explored")->capture_default_str();
    mempty_cmd->add_flag("--trace", trace, "print the accepting run found");
    mempty_cmd->callback([&] {
        action = [&] {
            const CounterMachine m = parse_machine(read_file(file));
            const EmptinessResult r = ncm_empty_bounded(m, cap);
            if (r.nonempty) {
                out << "NONEMPTY witness " << m.spell(r.witness->word) << "\n";
                if (trace) out << format_run(m, *r.witness);
                return;
            }
            out << "EMPTY within cap " << cap << (r.cap_reached ? " (cap reached)" : "") << "\n";
            status = 1;
        };
    });

    auto* empty_cmd = app.add_subcommand("empty", "bounded-index emptiness of a counter grammar");
    empty_cmd->add_option("FILE", file)->required();
    empty_cmd->add_option("--index", index, "derivation index")->required();
    empty_cmd->add_option("--cap", cap, "largest counter value explored")->required();
    empty_cmd->add_flag("--trace", trace, "print the accepting machine run");
    empty_cmd->callback([&] {
        action = [&] {
            const EmptinessReport r = cfgsc_index_emptiness(load(file), index, cap);
            out << to_string(r.verdict) << "\n"
                << "machine_index: " << r.machine_index << "\n"
                << "index_cut: " << (r.index_cut ? "true" : "false") << "\n"
                << "cap_cut: " << (r.cap_cut ? "true" : "false") << "\n";
            if (trace && r.run) out << format_run(r.machine.machine, *r.run);
            if (r.verdict != Verdict::NonEmpty) status = 1;
        };
    });

    auto* subset_cmd = app.add_subcommand("subset-sum", "decide a subset-sum instance through a grammar");
    subset_cmd->add_option("--xs", xs, "comma-separated positive values")->required();
    subset_cmd->add_option("--target", sum, "positive target")->required();
    subset_cmd->add_option("--route", route, "cfgsc|rlgsc")->capture_default_str();
    subset_cmd->callback([&] {
        action = [&] {
            SubsetSumInstance inst{parse_list(xs), sum};
            Route r;
            if (route == "cfgsc") r = Route::Cfgsc;
            else if (route == "rlgsc") r = Route::Rlgsc;
            else throw PreconditionError("unknown route '" + route + "'");
            const SubsetSumAnswer a = solve_subset_sum(inst, r);
            if (!a.solvable) {
                out << "EMPTY (no subset sums to " << sum << ")\n";
                status = 1;
                return;
            }
            std::vector<std::uint64_t> chosen;
            for (std::size_t i : a.subset) chosen.push_back(inst.values[i]);
            out << "NONEMPTY (subset {" << join(chosen) << "} sums to " << sum << ")\n";
        };
    });

    auto* gadget_cmd = app.add_subcommand("gadget", "write the binary counter gadget for a number");
    gadget_cmd->add_option("--binary", bits, "bit string, most significant bit first")->required();
    gadget_cmd->add_option("-o,--output", output)->required();
    gadget_cmd->callback([&] {
        action = [&] {
            std::string lsb(bits.rbegin(), bits.rend());
            write_file(output, print_grammar(binary_gadget(std::string_view(lsb))));
            out << "wrote " << output << "\n";
        };
    });

    auto* corpus_cmd = app.add_subcommand("corpus", "list the built-in grammars or write one to a file");
    corpus_cmd->add_option("NAME", word);
    corpus_cmd->add_option("-o,--output", output);
    corpus_cmd->add_flag("--list", list, "list names and descriptions");
    corpus_cmd->callback([&] {
        action = [&] {
            if (list || word.empty()) {
                for (const auto& e : corpus()) out << e.name << "  " << e.description << "\n";
                return;
            }
            const std::string text = print_grammar(corpus_grammar(word));
            if (output.empty()) out << text;
            else write_file(output, text);
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (action) action();
    } catch (const ParseError& e) {
        err << "error: " << (file.empty() ? std::string() : file + ": ") << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return status;
}

}  // namespace stategram
