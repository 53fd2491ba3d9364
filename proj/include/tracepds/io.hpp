#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "tracepds/alphabet.hpp"
#include "tracepds/nfa.hpp"
#include "tracepds/tpds.hpp"
#include "tracepds/transducer.hpp"

namespace tracepds::io {

using nlohmann::json;

/// {"letters": ["a","b","c"], "dependence": [["a","c"],["b","c"]]}
DependenceAlphabet alphabet_from_json(const json& j);
json alphabet_to_json(const DependenceAlphabet& da);

/// Word document: a plain string of single-character letter names, or an
/// array of letter names (required for multi-character letters).
Word word_from_json(const json& j, const DependenceAlphabet& da);
json word_to_json(const Word& w, const DependenceAlphabet& da);

/// {"states": n, "initial": [...], "final": [...],
///  "transitions": [[p,"a",q], [p,"",q]]} with "" denoting ε.
Nfa nfa_from_json(const json& j, const DependenceAlphabet& da);
json nfa_to_json(const Nfa& a, const DependenceAlphabet& da);

/// {"states": n, "initial": [...], "final": [...],
///  "transitions": [[p,"a","",q], [p,"","b",q], [p,"","",q]]}
Transducer transducer_from_json(const json& j, const DependenceAlphabet& da);
json transducer_to_json(const Transducer& t, const DependenceAlphabet& da);

/// {"states": n, "transitions": [[p,"a","w",q]]} with "w" a word document.
Tpds tpds_from_json(const json& j, const DependenceAlphabet& da);
json tpds_to_json(const Tpds& p, const DependenceAlphabet& da);

/// [state, "word"]
Config config_from_json(const json& j, const DependenceAlphabet& da);
json config_to_json(const Config& c, const DependenceAlphabet& da);

/// A set of configurations for decide: either singleton configurations
///   {"configs": [[0,"a"], [3,"bc"]]}
/// or per-state NFAs
///   {"nfas": {"0": {<nfa document>}}}
/// (both keys may be combined; configurations union).
std::map<int, Nfa> config_set_from_json(const json& j, const DependenceAlphabet& da);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace tracepds::io
