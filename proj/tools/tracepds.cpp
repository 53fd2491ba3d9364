#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tracepds/io.hpp"
#include "tracepds/lc.hpp"
#include "tracepds/reach.hpp"
#include "tracepds/tpds.hpp"
#include "tracepds/trace.hpp"
#include "tracepds/transducer.hpp"

using namespace tracepds;
using nlohmann::json;

namespace {

// Exit codes: 0 success/true, 1 false/violation, 2 input error,
// 3 precondition failure.
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;

struct Options {
    std::string alphabet_path;
    std::string system_path;
    std::string nfa_path;
    std::string transducer_path;
    int src = 0;
    int dst = 0;
    std::size_t max_stack = 8;
    std::size_t max_steps = SIZE_MAX;
    int maxlen = 3;
    std::string out_path;
    std::string dot_path;
    int jobs = 1;
};

DependenceAlphabet load_alphabet(const Options& opt) {
    if (opt.alphabet_path.empty()) throw InputError("--alphabet is required");
    return io::alphabet_from_json(io::load_json_file(opt.alphabet_path));
}

Tpds load_system(const Options& opt, const DependenceAlphabet& da) {
    if (opt.system_path.empty()) throw InputError("--system is required");
    return io::tpds_from_json(io::load_json_file(opt.system_path), da);
}

Tpds load_validated_system(const Options& opt, const DependenceAlphabet& da) {
    Tpds p = load_system(opt, da);
    if (!validate(p, da).ok())
        throw PreconditionError("system violates (P1)/(P2); run `validate` for the report");
    return p;
}

Nfa load_nfa(const Options& opt, const DependenceAlphabet& da) {
    if (opt.nfa_path.empty()) throw InputError("--nfa is required");
    return io::nfa_from_json(io::load_json_file(opt.nfa_path), da);
}

void check_state(int q, const Tpds& p, const char* what) {
    if (q < 0 || q >= p.num_states)
        throw InputError(std::string(what) + " state out of range");
}

json transition_to_json(const TpdsTransition& t, const DependenceAlphabet& da) {
    return json{t.from, da.name(t.pop), io::word_to_json(t.push, da), t.to};
}

void emit(const Options& opt, const json& doc) {
    if (opt.out_path.empty())
        std::cout << doc.dump(2) << '\n';
    else
        io::save_json_file(opt.out_path, doc);
}

int cmd_validate(const Options& opt) {
    DependenceAlphabet da = load_alphabet(opt);
    Tpds p = load_system(opt, da);
    ValidationReport report = validate(p, da);
    for (const auto& t : report.p1_violations)
        std::cout << json{{"violation", "P1"}, {"transition", transition_to_json(t, da)}}.dump()
                  << '\n';
    for (const auto& v : report.p2_violations)
        std::cout << json{{"violation", "P2"},
                          {"first", transition_to_json(v.first, da)},
                          {"second", transition_to_json(v.second, da)}}
                         .dump()
                  << '\n';
    return report.ok() ? kExitTrue : kExitFalse;
}

int cmd_saturate(const Options& opt) {
    DependenceAlphabet da = load_alphabet(opt);
    Tpds p = load_validated_system(opt, da);
    SaturationResult sat = saturate(p, da);
    json rounds = json::array();
    for (const auto& round : sat.rounds) {
        json added = json::array();
        for (const auto& t : round) added.push_back(transition_to_json(t, da));
        rounds.push_back(json{{"added", added}, {"count", round.size()}});
    }
    std::cout << json{{"rounds", rounds}}.dump(2) << '\n';
    if (!opt.out_path.empty())
        io::save_json_file(opt.out_path, io::tpds_to_json(sat.system, da));
    return kExitTrue;
}

int cmd_lnf(const Options& opt, const std::string& word_text) {
    DependenceAlphabet da = load_alphabet(opt);
    Word w = io::word_from_json(word_text.starts_with("[") ? json::parse(word_text)
                                                           : json(word_text),
                                da);
    std::cout << io::word_to_json(lnf(da, w), da).dump() << '\n';
    return kExitTrue;
}

int cmd_equiv(const Options& opt, const std::string& u_text, const std::string& v_text) {
    DependenceAlphabet da = load_alphabet(opt);
    auto parse = [&](const std::string& s) {
        return io::word_from_json(s.starts_with("[") ? json::parse(s) : json(s), da);
    };
    bool eq = equivalent(da, parse(u_text), parse(v_text));
    std::cout << (eq ? "true" : "false") << '\n';
    return eq ? kExitTrue : kExitFalse;
}

int cmd_check_closed(const Options& opt) {
    DependenceAlphabet da = load_alphabet(opt);
    Nfa a = load_nfa(opt, da);
    bool closed = is_closed(a, da);
    std::cout << json{{"closed", closed}}.dump() << '\n';
    return closed ? kExitTrue : kExitFalse;
}

int cmd_check_leftclosed(const Options& opt) {
    DependenceAlphabet da = load_alphabet(opt);
    if (opt.transducer_path.empty()) throw InputError("--transducer is required");
    Transducer t = io::transducer_from_json(io::load_json_file(opt.transducer_path), da);
    LcCheckResult res = is_left_closed_bruteforce(t, da, opt.maxlen, -1, opt.jobs);
    json doc{{"left_closed", res.left_closed}, {"maxlen", res.maxlen}};
    if (res.counterexample) {
        doc["counterexample"] = {
            {"u", io::word_to_json(res.counterexample->u, da)},
            {"u_equiv", io::word_to_json(res.counterexample->u_equiv, da)},
            {"v", io::word_to_json(res.counterexample->v, da)}};
    }
    std::cout << doc.dump(2) << '\n';
    return res.left_closed ? kExitTrue : kExitFalse;
}

int cmd_relation(const Options& opt) {
    DependenceAlphabet da = load_alphabet(opt);
    Tpds p = load_validated_system(opt, da);
    check_state(opt.src, p, "--src");
    check_state(opt.dst, p, "--dst");
    ReachRelation rel = reach_relation(p, da, opt.src, opt.dst);
    emit(opt, io::transducer_to_json(rel.transducer.t, da));
    return kExitTrue;
}

int cmd_prestar(const Options& opt) {
    DependenceAlphabet da = load_alphabet(opt);
    Tpds p = load_validated_system(opt, da);
    check_state(opt.src, p, "--src");
    check_state(opt.dst, p, "--dst");
    Nfa b = load_nfa(opt, da);
    ClosedNfa closed = ClosedNfa::checked(b, da);  // exit 3 when not closed
    ClosedNfa result = pre_star(p, da, opt.src, opt.dst, closed);
    emit(opt, io::nfa_to_json(result.nfa(), da));
    return kExitTrue;
}

int cmd_poststar(const Options& opt) {
    DependenceAlphabet da = load_alphabet(opt);
    Tpds p = load_validated_system(opt, da);
    check_state(opt.src, p, "--src");
    check_state(opt.dst, p, "--dst");
    Nfa b = load_nfa(opt, da);
    Nfa result = post_star(p, da, opt.src, opt.dst, b);
    emit(opt, io::nfa_to_json(result, da));
    return kExitTrue;
}

int cmd_decide(const Options& opt, const std::string& from_path, const std::string& to_path) {
    DependenceAlphabet da = load_alphabet(opt);
    Tpds p = load_validated_system(opt, da);
    std::map<int, Nfa> from = io::config_set_from_json(io::load_json_file(from_path), da);
    json to_doc = io::load_json_file(to_path);
    // The target side must denote a recognizable set: singleton configs are
    // closed up to their commutation class; explicit NFAs must be closed.
    std::map<int, Nfa> to_raw;
    std::set<int> needs_check;  // states with explicit NFAs must be verified closed
    auto merge_to = [&](int state, const Nfa& a) {
        check_state(state, p, "target");
        auto it = to_raw.find(state);
        if (it == to_raw.end())
            to_raw.emplace(state, a);
        else
            it->second = nfa_union(it->second, a);
    };
    if (to_doc.contains("configs"))
        for (const auto& c : to_doc.at("configs")) {
            Config cfg = io::config_from_json(c, da);
            merge_to(cfg.state, class_automaton(da, cfg.stack));
        }
    if (to_doc.contains("nfas"))
        for (const auto& [key, doc] : to_doc.at("nfas").items()) {
            int state = std::stoi(key);
            merge_to(state, io::nfa_from_json(doc, da));
            needs_check.insert(state);
        }
    if (to_raw.empty()) throw InputError("target configuration set is empty");
    std::map<int, ClosedNfa> to;
    for (const auto& [state, a] : to_raw)
        to.emplace(state, needs_check.count(state) ? ClosedNfa::checked(a, da)
                                                   : ClosedNfa::by_construction(a));
    for (const auto& [state, nfa] : from) check_state(state, p, "source");
    bool reachable = decide_reach(p, da, from, to);
    std::cout << (reachable ? "REACHABLE" : "UNREACHABLE") << '\n';
    return reachable ? kExitTrue : kExitFalse;
}

int cmd_oracle(const Options& opt, const std::string& state_text, const std::string& word_text) {
    DependenceAlphabet da = load_alphabet(opt);
    Tpds p = load_validated_system(opt, da);
    int state = std::stoi(state_text);
    check_state(state, p, "start");
    Word stack = io::word_from_json(
        word_text.starts_with("[") ? json::parse(word_text) : json(word_text), da);
    OracleResult result =
        reach_oracle(p, da, Config{state, lnf(da, stack)}, opt.max_stack, opt.max_steps);
    json configs = json::array();
    for (const auto& c : result.configs) configs.push_back(io::config_to_json(c, da));
    emit(opt, json{{"configs", configs}});
    if (!opt.dot_path.empty()) {
        std::ofstream dot(opt.dot_path);
        if (!dot) throw InputError("cannot open " + opt.dot_path);
        dot << "digraph configurations {\n";
        for (std::size_t i = 0; i < result.configs.size(); ++i) {
            const auto& c = result.configs[i];
            dot << "  n" << i << " [label=\"(" << c.state << ", "
                << da.format_word(c.stack) << ")\"];\n";
        }
        for (auto [from, to] : result.edges) dot << "  n" << from << " -> n" << to << ";\n";
        dot << "}\n";
    }
    return kExitTrue;
}

int cmd_realize(const Options& opt) {
    DependenceAlphabet da = load_alphabet(opt);
    Nfa a = load_nfa(opt, da);
    RealizedRational r = realize_rational(a, da);
    json doc{{"alphabet", io::alphabet_to_json(r.alphabet)},
             {"system", io::tpds_to_json(r.system, r.alphabet)},
             {"config", io::config_to_json(r.start, r.alphabet)},
             {"target", r.target_state}};
    emit(opt, doc);
    return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reachability toolkit for pushdown systems over Mazurkiewicz traces"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--alphabet", opt.alphabet_path, "alphabet JSON file");
        cmd->add_option("--system", opt.system_path, "tPDS JSON file");
        cmd->add_option("--nfa", opt.nfa_path, "NFA JSON file");
        cmd->add_option("--transducer", opt.transducer_path, "transducer JSON file");
        cmd->add_option("--src", opt.src, "source state");
        cmd->add_option("--dst", opt.dst, "target state");
        cmd->add_option("--max-stack", opt.max_stack, "oracle stack bound");
        cmd->add_option("--max-steps", opt.max_steps, "oracle BFS layer bound");
        cmd->add_option("--maxlen", opt.maxlen, "brute-force word length bound");
        cmd->add_option("--out", opt.out_path, "output file (stdout otherwise)");
        cmd->add_option("--jobs", opt.jobs, "worker threads for brute-force checks");
        return cmd;
    };

    std::string word1, word2, from_path, to_path;

    auto* validate_cmd = add_common(app.add_subcommand("validate", "check (P1) and (P2)"));
    auto* saturate_cmd =
        add_common(app.add_subcommand("saturate", "shortcut fixpoint, with per-round report"));
    auto* lnf_cmd = add_common(app.add_subcommand("lnf", "lexicographic normal form of a word"));
    lnf_cmd->add_option("word", word1, "input word")->required();
    auto* equiv_cmd = add_common(app.add_subcommand("equiv", "trace equivalence of two words"));
    equiv_cmd->add_option("u", word1, "first word")->required();
    equiv_cmd->add_option("v", word2, "second word")->required();
    auto* closed_cmd =
        add_common(app.add_subcommand("check-closed", "is the NFA language commutation-closed"));
    auto* lc_cmd = add_common(
        app.add_subcommand("check-leftclosed", "bounded left-closure check of a transducer"));
    auto* relation_cmd =
        add_common(app.add_subcommand("relation", "reachability-relation transducer"));
    auto* prestar_cmd = add_common(app.add_subcommand("prestar", "backwards reachability of a closed NFA"));
    auto* poststar_cmd = add_common(app.add_subcommand("poststar", "forwards reachability of an NFA"));
    auto* decide_cmd = add_common(app.add_subcommand("decide", "can D be reached from C"));
    decide_cmd->add_option("from", from_path, "source configuration set (JSON file)")->required();
    decide_cmd->add_option("to", to_path, "target configuration set (JSON file)")->required();
    auto* oracle_cmd = add_common(app.add_subcommand("oracle", "bounded configuration-space BFS"));
    oracle_cmd->add_option("state", word1, "start state")->required();
    oracle_cmd->add_option("stack", word2, "start stack word")->required();
    oracle_cmd->add_option("--dot", opt.dot_path, "also write the configuration graph as DOT");
    auto* realize_cmd =
        add_common(app.add_subcommand("realize", "tPDS whose post* realizes the NFA's traces"));

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(opt);
        if (saturate_cmd->parsed()) return cmd_saturate(opt);
        if (lnf_cmd->parsed()) return cmd_lnf(opt, word1);
        if (equiv_cmd->parsed()) return cmd_equiv(opt, word1, word2);
        if (closed_cmd->parsed()) return cmd_check_closed(opt);
        if (lc_cmd->parsed()) return cmd_check_leftclosed(opt);
        if (relation_cmd->parsed()) return cmd_relation(opt);
        if (prestar_cmd->parsed()) return cmd_prestar(opt);
        if (poststar_cmd->parsed()) return cmd_poststar(opt);
        if (decide_cmd->parsed()) return cmd_decide(opt, from_path, to_path);
        if (oracle_cmd->parsed()) return cmd_oracle(opt, word1, word2);
        if (realize_cmd->parsed()) return cmd_realize(opt);
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const LimitError& e) {
        std::cerr << "limit exceeded: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
