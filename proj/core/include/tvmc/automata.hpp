#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tvmc/ltl.hpp"
#include "tvmc/three_value.hpp"

namespace tvmc::automata {

struct Literal {
    std::string atom;
    bool positive = true;

    auto operator<=>(const Literal&) const = default;
};

/// Conjunction of literals over (possibly barred) atoms; empty means true.
/// A guard may be contradictory (p & !p); it then never fires.
class Guard {
public:
    Guard() = default; // true

    static Guard true_guard() { return Guard{}; }
    static Guard from_literals(std::vector<Literal> lits); // sorts + dedups

    const std::vector<Literal>& literals() const { return literals_; }
    bool is_true() const { return literals_.empty(); }

    /// Evaluation over a complete label given as the set of true atoms.
    bool eval(const std::set<std::string>& true_atoms) const;

    std::string to_string() const; // "true", "edb", "!cert & !fl"

    auto operator<=>(const Guard&) const = default;

private:
    std::vector<Literal> literals_;
};

/// Parses the conjunction-of-literals fragment of the LTL grammar
/// ("true", atoms, "!atom", "&"). Throws ltl::ParseError otherwise.
Guard parse_guard(std::string_view text);

/// Checked evaluation: every guard atom must be assigned and two-valued.
bool guard_eval(const Guard& g, const std::map<std::string, ThreeValue>& label);

struct Edge {
    std::size_t from = 0;
    Guard guard;
    std::size_t to = 0;
};

/// Büchi automaton with guarded edges and per-state formula annotations:
/// eta(q) holds on exactly the words accepted from q; mu(q) = nnf(!eta(q))
/// is what a model state is proved to satisfy when no accepting run
/// continues from <s,q>.
struct BuchiAutomaton {
    std::vector<std::string> states; // names, index = id
    std::size_t initial = 0;
    std::set<std::size_t> accepting;
    std::vector<Edge> edges; // sorted by (from, to, guard)
    std::vector<ltl::FormulaPtr> eta;
    std::vector<ltl::FormulaPtr> mu;

    std::vector<Edge> out_edges(std::size_t q) const;
};

/// Tableau translation. Input must be in NNF (barred atoms allowed).
/// States are obligation sets; eta is their conjunction; acceptance is
/// degeneralized to state-based Büchi, one level per eventuality, with all
/// states accepting when there is none. States are named q0, q1, ... in
/// breadth-first discovery order. No minimization.
BuchiAutomaton ltl_to_buchi(const ltl::FormulaPtr& f);

/// Structural checks: state names unique/nonempty, initial and accepting in
/// range, edge endpoints in range, annotation arrays sized to the state
/// count with mu(q) structurally equal to nnf(negate(eta(q))).
std::vector<std::string> validate(const BuchiAutomaton& a);

/// Content fingerprint (FNV-1a over a canonical dump), stable across runs.
std::string fingerprint(const BuchiAutomaton& a);

} // namespace tvmc::automata
