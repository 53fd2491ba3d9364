#include "tracepds/io.hpp"

#include <fstream>

#include "tracepds/trace.hpp"

namespace tracepds::io {

namespace {

int state_from_json(const json& j) {
    if (!j.is_number_integer()) throw InputError("expected a state id");
    return j.get<int>();
}

/// "" = ε, otherwise a letter name.
int label_from_json(const json& j, const DependenceAlphabet& da) {
    if (!j.is_string()) throw InputError("expected a letter or \"\"");
    std::string s = j.get<std::string>();
    if (s.empty()) return kEpsilon;
    return da.require(s);
}

json label_to_json(int label, const DependenceAlphabet& da) {
    return label == kEpsilon ? std::string{} : da.name(static_cast<Letter>(label));
}

}  // namespace

DependenceAlphabet alphabet_from_json(const json& j) {
    if (!j.is_object() || !j.contains("letters"))
        throw InputError("alphabet document needs a \"letters\" array");
    std::vector<std::string> letters;
    for (const auto& l : j.at("letters")) {
        if (!l.is_string()) throw InputError("letters must be strings");
        letters.push_back(l.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    if (j.contains("dependence"))
        for (const auto& p : j.at("dependence")) {
            if (!p.is_array() || p.size() != 2) throw InputError("dependence entries are pairs");
            pairs.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
        }
    return DependenceAlphabet(letters, pairs);
}

json alphabet_to_json(const DependenceAlphabet& da) {
    json pairs = json::array();
    for (Letter a = 0; a < da.size(); ++a)
        for (Letter b = a; b < da.size(); ++b)
            if (a != b && da.dependent(a, b)) pairs.push_back({da.name(a), da.name(b)});
    return json{{"letters", da.names()}, {"dependence", pairs}};
}

Word word_from_json(const json& j, const DependenceAlphabet& da) {
    if (j.is_string()) return da.parse_word(j.get<std::string>());
    if (j.is_array()) {
        Word w;
        for (const auto& l : j) {
            if (!l.is_string()) throw InputError("word array entries must be letter names");
            w.push_back(static_cast<char>(da.require(l.get<std::string>())));
        }
        return w;
    }
    throw InputError("expected a word (string or array of letters)");
}

json word_to_json(const Word& w, const DependenceAlphabet& da) {
    if (da.all_single_char_names()) return da.format_word(w);
    json arr = json::array();
    for (char c : w) arr.push_back(da.name(static_cast<Letter>(c)));
    return arr;
}

Nfa nfa_from_json(const json& j, const DependenceAlphabet& da) {
    if (!j.is_object() || !j.contains("states")) throw InputError("NFA document needs \"states\"");
    Nfa a;
    a.num_states = j.at("states").get<int>();
    if (a.num_states < 0) throw InputError("negative state count");
    for (const auto& q : j.value("initial", json::array())) a.initial.push_back(state_from_json(q));
    for (const auto& q : j.value("final", json::array()))
        a.final_states.push_back(state_from_json(q));
    for (const auto& t : j.value("transitions", json::array())) {
        if (!t.is_array() || t.size() != 3) throw InputError("NFA transitions are [p, label, q]");
        a.transitions.push_back(
            {state_from_json(t.at(0)), label_from_json(t.at(1), da), state_from_json(t.at(2))});
    }
    try {
        a.normalize();
    } catch (const InputError&) {
        throw;
    }
    return a;
}

json nfa_to_json(const Nfa& a, const DependenceAlphabet& da) {
    json trs = json::array();
    for (const auto& t : a.transitions)
        trs.push_back({t.from, label_to_json(t.label, da), t.to});
    return json{{"states", a.num_states},
                {"initial", a.initial},
                {"final", a.final_states},
                {"transitions", trs}};
}

Transducer transducer_from_json(const json& j, const DependenceAlphabet& da) {
    if (!j.is_object() || !j.contains("states"))
        throw InputError("transducer document needs \"states\"");
    Transducer t;
    t.num_states = j.at("states").get<int>();
    if (t.num_states < 0) throw InputError("negative state count");
    for (const auto& q : j.value("initial", json::array())) t.initial.push_back(state_from_json(q));
    for (const auto& q : j.value("final", json::array()))
        t.final_states.push_back(state_from_json(q));
    for (const auto& tr : j.value("transitions", json::array())) {
        if (!tr.is_array() || tr.size() != 4)
            throw InputError("transducer transitions are [p, in, out, q]");
        t.transitions.push_back({state_from_json(tr.at(0)), label_from_json(tr.at(1), da),
                                 label_from_json(tr.at(2), da), state_from_json(tr.at(3))});
    }
    t.normalize();
    return t;
}

json transducer_to_json(const Transducer& t, const DependenceAlphabet& da) {
    json trs = json::array();
    for (const auto& tr : t.transitions)
        trs.push_back(
            {tr.from, label_to_json(tr.in, da), label_to_json(tr.out, da), tr.to});
    return json{{"states", t.num_states},
                {"initial", t.initial},
                {"final", t.final_states},
                {"transitions", trs}};
}

Tpds tpds_from_json(const json& j, const DependenceAlphabet& da) {
    if (!j.is_object() || !j.contains("states")) throw InputError("tPDS document needs \"states\"");
    Tpds p;
    p.num_states = j.at("states").get<int>();
    if (p.num_states <= 0) throw InputError("tPDS needs at least one state");
    for (const auto& t : j.value("transitions", json::array())) {
        if (!t.is_array() || t.size() != 4) throw InputError("tPDS transitions are [p,a,w,q]");
        int pop = label_from_json(t.at(1), da);
        if (pop == kEpsilon) throw InputError("tPDS transitions must pop a letter");
        p.transitions.push_back({state_from_json(t.at(0)), static_cast<Letter>(pop),
                                 word_from_json(t.at(2), da), state_from_json(t.at(3))});
    }
    p.normalize(da);
    return p;
}

json tpds_to_json(const Tpds& p, const DependenceAlphabet& da) {
    json trs = json::array();
    for (const auto& t : p.transitions)
        trs.push_back({t.from, da.name(t.pop), word_to_json(t.push, da), t.to});
    return json{{"states", p.num_states}, {"transitions", trs}};
}

Config config_from_json(const json& j, const DependenceAlphabet& da) {
    if (!j.is_array() || j.size() != 2) throw InputError("configurations are [state, word]");
    return Config{state_from_json(j.at(0)), lnf(da, word_from_json(j.at(1), da))};
}

json config_to_json(const Config& c, const DependenceAlphabet& da) {
    return json{c.state, word_to_json(c.stack, da)};
}

std::map<int, Nfa> config_set_from_json(const json& j, const DependenceAlphabet& da) {
    if (!j.is_object()) throw InputError("configuration sets are objects");
    std::map<int, Nfa> out;
    auto merge = [&](int state, const Nfa& a) {
        auto it = out.find(state);
        if (it == out.end())
            out.emplace(state, a);
        else
            it->second = nfa_union(it->second, a);
    };
    if (j.contains("configs"))
        for (const auto& c : j.at("configs")) {
            Config cfg = config_from_json(c, da);
            merge(cfg.state, word_nfa(cfg.stack));
        }
    if (j.contains("nfas"))
        for (const auto& [key, doc] : j.at("nfas").items())
            merge(std::stoi(key), nfa_from_json(doc, da));
    if (out.empty()) throw InputError("configuration set needs \"configs\" or \"nfas\"");
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("parse error in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

}  // namespace tracepds::io
