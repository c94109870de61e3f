#include "tvmc/engine.hpp"

#include <algorithm>

namespace tvmc::engine {

std::string to_string(VerdictValue v) {
    switch (v) {
        case VerdictValue::True: return "true";
        case VerdictValue::False: return "false";
        case VerdictValue::Maybe: return "maybe";
    }
    return "?";
}

const product::ProductAutomaton& Verdict::lasso_product() const {
    return lasso_from == "optimistic" ? optimistic_product : pessimistic_product;
}

namespace {

void require_clean_inputs(const pks::Pks& m, const ltl::FormulaPtr& property) {
    for (const auto& violation : pks::validate(m))
        if (violation.error) throw InputError("invalid model: " + violation.message);
    for (const auto& atom : m.atoms)
        if (ltl::is_barred(atom)) throw InputError("model already declares complement atom " + atom);
    for (const auto& atom : ltl::atoms(property)) {
        if (ltl::is_barred(atom)) throw InputError("property uses reserved complement atom " + atom);
        if (!std::binary_search(m.atoms.begin(), m.atoms.end(), atom))
            throw InputError("property atom not declared by the model: " + atom);
    }
}

void require_guard_atoms(const automata::BuchiAutomaton& a, const pks::Pks& closed) {
    for (const auto& e : a.edges)
        for (const auto& lit : e.guard.literals())
            if (!std::binary_search(closed.atoms.begin(), closed.atoms.end(), lit.atom))
                throw InputError("automaton guard uses undeclared atom " + lit.atom);
}

proof::Proof checked_proof(const product::ProductAutomaton& materialized, const std::string& property_text) {
    proof::Proof pf;
    try {
        pf = proof::generate_proof(materialized, property_text);
    } catch (const std::exception& e) {
        throw InternalError(std::string{"proof generation failed: "} + e.what());
    }
    const auto res = proof::check_proof(materialized, pf);
    if (!res.accepted) {
        std::string where = res.failing_step == proof::CheckResult::npos
                                ? std::string{"(proof level)"}
                                : "step " + std::to_string(res.failing_step);
        throw InternalError("proof self-check failed at " + where + ": " + res.reason);
    }
    return pf;
}

} // namespace

Verdict check(const pks::Pks& m, const ltl::FormulaPtr& property,
              const automata::BuchiAutomaton* negated_automaton, const std::string& property_text) {
    require_clean_inputs(m, property);
    const std::string text = property_text.empty() ? ltl::to_string(property) : property_text;

    const pks::Pks closed = pks::complement_close(m);
    const pks::Pks pes = pks::pessimistic(closed);
    const pks::Pks opt = pks::optimistic(closed);

    const ltl::FormulaPtr closed_property = ltl::complement_close(ltl::to_nnf(property));
    automata::BuchiAutomaton a;
    if (negated_automaton) {
        a = *negated_automaton;
        for (const auto& violation : automata::validate(a))
            throw InputError("invalid automaton: " + violation);
    } else {
        a = automata::ltl_to_buchi(ltl::negate(closed_property));
        for (const auto& violation : automata::validate(a))
            throw InternalError("generated automaton failed validation: " + violation);
    }
    require_guard_atoms(a, closed);

    Verdict v;
    v.pessimistic_product = product::intersect(pes, a);
    v.optimistic_product = product::intersect(opt, a);

    const auto pes_lasso = product::find_accepting_lasso(v.pessimistic_product);
    const auto opt_lasso = product::find_accepting_lasso(v.optimistic_product);

    if (!pes_lasso && opt_lasso)
        throw InternalError("contradictory approximation runs: pessimistic product is empty "
                            "but the optimistic product is not (automaton does not respect the "
                            "label ordering)");

    if (!pes_lasso) {
        v.value = VerdictValue::True;
        v.proof_from = "pessimistic";
        v.proof_product = product::materialize_for_proof(v.pessimistic_product);
        v.proof = checked_proof(*v.proof_product, text);
    } else if (opt_lasso) {
        v.value = VerdictValue::False;
        v.lasso = *opt_lasso;
        v.lasso_from = "optimistic";
    } else {
        v.value = VerdictValue::Maybe;
        v.lasso = *pes_lasso;
        v.lasso_from = "pessimistic";
        v.proof_from = "optimistic";
        v.proof_product = product::materialize_for_proof(v.optimistic_product);
        v.proof = checked_proof(*v.proof_product, text);
    }

    if (v.lasso) {
        if (const auto err = product::validate_lasso(v.lasso_product(), *v.lasso))
            throw InternalError("lasso self-check failed: " + *err);
    }
    return v;
}

} // namespace tvmc::engine
