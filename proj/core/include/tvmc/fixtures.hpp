#pragma once

#include <string>
#include <vector>

#include "tvmc/automata.hpp"
#include "tvmc/ltl.hpp"
#include "tvmc/pks.hpp"

namespace tvmc::fixtures {

/// Eight-state review-workflow model with four unknown labels (fl, sl at
/// s6 and s7). Mirrors data/stereo.pks byte-for-byte in meaning.
pks::Pks stereo_model();

/// Pinned three-state automaton for the negation of the reference property;
/// accepts words where edb eventually holds with cert and fl false from the
/// following position onward. Mirrors data/a_ref.ba.
automata::BuchiAutomaton reference_automaton();

/// G (edb -> F (cert | fl)) — the reference property.
ltl::FormulaPtr reference_property();
std::string reference_property_text();

/// One-state model over {p} with p unknown; "p | !p" comes out Maybe while
/// every completion satisfies it (documents that Maybe is one-sided).
pks::Pks maybe_all_agree_model();

struct ExpectedArtifacts {
    std::vector<std::string> product_prefix;   // node names
    std::vector<std::string> product_cycle;    // node names
    std::vector<std::string> projection_stem;  // model state ids
    std::vector<std::string> projection_cycle; // model state ids
    std::vector<std::string> fail_conclusion_nodes;      // sorted node names
    std::vector<std::vector<std::string>> induction_components; // as sets
    std::vector<std::vector<std::string>> induction_exits;      // aligned
    std::vector<std::string> successors_nodes; // in expected step order
};

ExpectedArtifacts expected_artifacts();

/// Full replay: runs the pipeline + independent oracles over the fixture
/// and compares every pinned artifact. Returns an empty string on success,
/// otherwise the first mismatch.
std::string verify_fixture();

} // namespace tvmc::fixtures
