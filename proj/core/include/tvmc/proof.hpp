#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tvmc/product.hpp"

namespace tvmc::proof {

enum class StepKind { Fail, Induction, Successors, Conclusion };

std::string to_string(StepKind k);

/// One deduction. All content is canonical text so a proof is portable and
/// the checker genuinely re-derives everything from the product:
///   node          "<s1,q1>"
///   judgment      "s1 |= mu(q1) = F (cert | fl)"
///   transition    "s5 -> {s6, s7}"
///   dead end      "<s1,q1> has no successors"
///   conclusion    "M |= G (edb -> F (cert | fl))"
struct ProofStep {
    StepKind kind = StepKind::Fail;
    std::vector<std::string> component; // covered nodes; initial nodes for Conclusion
    std::vector<std::string> exit_set;  // Induction only: Exit(component)
    std::vector<std::string> premises;
    std::vector<std::string> conclusions;
};

struct Proof {
    std::string property;     // original property text
    std::string model_id;     // content fingerprint
    std::string automaton_id; // content fingerprint
    std::vector<ProofStep> steps;
};

/// Derives a proof from an empty product: Fail steps for every dead-end node
/// (sorted), then one Induction step per acceptance-free nontrivial SCC and
/// one Successors step per remaining trivial node, walking components in
/// reverse topological order, then a Conclusion over the initial nodes.
/// Throws std::invalid_argument on a nonempty product and std::runtime_error
/// if some node cannot be discharged (rule-coverage breach).
Proof generate_proof(const product::ProductAutomaton& p, const std::string& property_text);

struct CheckResult {
    bool accepted = false;
    std::size_t failing_step = npos; // npos with !accepted = proof-level fault
    std::string reason;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Independent checker. Recomputes, per step, dead-endness, component
/// strong connectivity and maximality (plain forward/backward searches, no
/// SCC library reuse), acceptance freedom, exit sets, and premise
/// availability; enforces forward ordering, judgment text fidelity against
/// the automaton's mu annotations, initial-node coverage, and fingerprint
/// agreement with the product. Reports the first failing step.
CheckResult check_proof(const product::ProductAutomaton& p, const Proof& pf);

/// Three-column table (Step | Component | Rule) in proof order; consecutive
/// Fail steps are merged into one row.
std::string render_proof_markdown(const Proof& pf);

} // namespace tvmc::proof
