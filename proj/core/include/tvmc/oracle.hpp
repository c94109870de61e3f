#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tvmc/automata.hpp"
#include "tvmc/ltl.hpp"
#include "tvmc/pks.hpp"
#include "tvmc/product.hpp"

/// Brute-force reference implementations. Everything here is deliberately
/// naive and capped: these functions exist so the main pipeline can be
/// cross-checked against independently derived answers, not for production
/// use on large inputs.
namespace tvmc::oracle {

/// Ultimately periodic word: prefix then period repeated forever. Each
/// position is the set of true atoms; `atoms` is the full alphabet (atoms
/// absent from a position are false).
struct Word {
    std::vector<std::set<std::string>> prefix;
    std::vector<std::set<std::string>> period; // nonempty
    std::set<std::string> atoms;
};

/// Exact LTL truth at position 0 by per-subformula fixpoints over the lasso
/// (two backward passes around the cycle for U/R). Handles full LTL
/// including Not/Implies. Throws when the formula mentions an atom outside
/// the word's alphabet or the period is empty.
bool eval_ltl_on_word(const ltl::FormulaPtr& f, const Word& w);

/// True iff every lasso-shaped path of the complete model with
/// stem+cycle <= max_len satisfies f; max_len 0 picks
/// min(|S| * (closure(f) + 1), 10). Exhaustive walk enumeration with early
/// exit on the first violation. Throws on incomplete models or > 8 states.
bool model_satisfies(const pks::Pks& m, const ltl::FormulaPtr& f, std::size_t max_len = 0);

/// Word membership via an independent route from direct evaluation: the
/// word is turned into a one-path model and run through the product +
/// emptiness machinery.
bool accepts_word(const automata::BuchiAutomaton& a, const Word& w);

/// Emptiness by plain reachability + per-accepting-node cycle search
/// (breadth-first), no nested DFS. Ignores materialized nodes.
bool product_nonempty_bruteforce(const product::ProductAutomaton& p);

/// The ultimately periodic word read along a lasso (source-state labels).
Word lasso_word(const product::ProductAutomaton& p, const product::Lasso& l);

} // namespace tvmc::oracle
