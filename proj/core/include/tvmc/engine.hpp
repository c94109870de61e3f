#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "tvmc/automata.hpp"
#include "tvmc/ltl.hpp"
#include "tvmc/pks.hpp"
#include "tvmc/product.hpp"
#include "tvmc/proof.hpp"

namespace tvmc::engine {

enum class VerdictValue { True, False, Maybe };

std::string to_string(VerdictValue v);

/// Bad user input (validation failure, unknown atom, ...).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The engine's own evidence failed its self-check; indicates a defect, not
/// bad input.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Verdict {
    VerdictValue value = VerdictValue::Maybe;

    /// Violation witness on the named approximation ("pessimistic" for
    /// Maybe, "optimistic" for False); absent for True.
    std::optional<product::Lasso> lasso;
    std::string lasso_from;

    /// Satisfaction witness from the empty product ("pessimistic" for True,
    /// "optimistic" for Maybe); absent for False. Refers to proof_product.
    std::optional<proof::Proof> proof;
    std::string proof_from;

    product::ProductAutomaton pessimistic_product; // reachable part
    product::ProductAutomaton optimistic_product;  // reachable part
    std::optional<product::ProductAutomaton> proof_product; // materialized

    /// Index into the product named by lasso_from.
    const product::ProductAutomaton& lasso_product() const;
};

/// Three-valued check: closes the model and property over complement atoms,
/// translates the negated closed property, and runs the classical check on
/// both approximations. True iff the pessimistic product is empty; False
/// iff the optimistic product is nonempty; Maybe otherwise. Evidence is
/// always materialized and self-checked (lasso validator / proof checker);
/// a self-check failure raises InternalError.
///
/// `negated_automaton`, when given, replaces the translation of the negated
/// property (it is trusted to encode it; contradictory approximation runs
/// are detected and raise InternalError). `property_text` overrides the
/// text recorded in proofs (defaults to the canonical print of the
/// property).
Verdict check(const pks::Pks& m, const ltl::FormulaPtr& property,
              const automata::BuchiAutomaton* negated_automaton = nullptr,
              const std::string& property_text = "");

} // namespace tvmc::engine
