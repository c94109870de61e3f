#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "tvmc/automata.hpp"
#include "tvmc/engine.hpp"
#include "tvmc/pks.hpp"
#include "tvmc/proof.hpp"

namespace tvmc::io {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Model document:
/// { "atoms": [..], "states": [ { "id", "labels": { atom: "T"|"F"|"U" } } ],
///   "initial": [..], "transitions": [ [from, to], .. ] }
/// Atom names must not carry the complement marker (user boundary).
pks::Pks pks_from_json(std::string_view text);
std::string pks_to_json(const pks::Pks& m);

/// Automaton document:
/// { "states": [..], "initial": q, "accepting": [..],
///   "edges": [ { "from", "guard", "to" } ], "eta": {q: f}, "mu": {q: f} }
/// Formulas and guards are strings in the LTL grammar; eta/mu are
/// normalized to negation normal form on load.
automata::BuchiAutomaton automaton_from_json(std::string_view text);
std::string automaton_to_json(const automata::BuchiAutomaton& a);

/// Proof document: { "property", "model", "automaton", "steps": [ { "kind",
/// "component", "exit"?, "premises", "conclusions" } ], "conclusion" }.
proof::Proof proof_from_json(std::string_view text);
std::string proof_to_json(const proof::Proof& pf);

std::string product_to_json(const product::ProductAutomaton& p);

struct ResultOptions {
    bool emit_proof = true;
    bool emit_counterexample = true;
    bool emit_product = false;
};

/// Result document: verdict + evidence + provenance (tool version, content
/// fingerprints). Byte-identical across identical inputs.
std::string result_to_json(const engine::Verdict& v, const std::string& property_text,
                           const ResultOptions& opt);
std::string result_to_markdown(const engine::Verdict& v, const std::string& property_text,
                               const ResultOptions& opt);
std::string result_to_plain(const engine::Verdict& v, const std::string& property_text,
                            const ResultOptions& opt);

/// "s0, s2, s5, (s7)^ω" for a lasso's canonical model projection.
std::string projection_text(const std::vector<std::string>& stem, const std::vector<std::string>& cycle);

std::string load_file(const std::string& path); // IoError on failure
void save_file(const std::string& path, std::string_view content);

/// FNV-1a 64-bit hex digest.
std::string fingerprint_hex(std::string_view bytes);

} // namespace tvmc::io
