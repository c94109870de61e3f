#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tvmc/automata.hpp"
#include "tvmc/pks.hpp"

namespace tvmc::product {

struct Node {
    std::size_t s = 0; // model state index
    std::size_t q = 0; // automaton state index

    auto operator<=>(const Node&) const = default;
};

/// Synchronous product of a complete model and a Büchi automaton. An edge
/// <s,q> -> <s',q'> exists iff s -> s' in the model and some automaton edge
/// q -> q' has a guard true on the label of the SOURCE state s. Nodes hold
/// the reachable part plus any nodes materialized for proof generation
/// (flagged; never produced or traversed by the emptiness search).
struct ProductAutomaton {
    pks::Pks model;                // complete (two-valued)
    automata::BuchiAutomaton automaton;
    std::vector<Node> nodes;       // sorted by (s, q)
    std::vector<std::vector<std::size_t>> successors; // per node, sorted node indices
    std::vector<std::size_t> initial_nodes;           // sorted node indices
    std::vector<bool> accepting;   // per node: automaton state accepting
    std::vector<bool> flagged;     // per node: materialized, not reachable

    std::size_t index_of(Node n) const; // npos when absent
    std::string node_name(std::size_t index) const; // "<s,q>"

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Builds the reachable product (no materialized nodes). The model must be
/// complete and must declare every atom used in a guard.
ProductAutomaton intersect(const pks::Pks& m, const automata::BuchiAutomaton& a);

/// Stem + cycle witness of a nonempty product. The prefix starts at an
/// initial node and is never empty; the cycle contains an accepting node,
/// follows edges, and closes on itself; prefix.back() steps to
/// cycle.front().
struct Lasso {
    std::vector<std::size_t> prefix; // node indices
    std::vector<std::size_t> cycle;  // node indices, nonempty
};

/// Nested depth-first search (iterative). Deterministic: at every node the
/// successors are visited in (model index descending, automaton index
/// ascending) order; the first accepting cycle found is returned.
std::optional<Lasso> find_accepting_lasso(const ProductAutomaton& p);

/// Re-checks a lasso against the product from scratch. Empty result = valid;
/// otherwise the first failed requirement.
std::optional<std::string> validate_lasso(const ProductAutomaton& p, const Lasso& l);

/// Model-state projection of a lasso in canonical form: trailing stem states
/// equal to the cycle's tail are folded into the cycle (s0 s2 s5 s7 | s7
/// becomes s0 s2 s5 | s7). Returned as state ids.
std::pair<std::vector<std::string>, std::vector<std::string>> project_lasso(const ProductAutomaton& p,
                                                                            const Lasso& l);

struct Scc {
    std::vector<std::size_t> nodes; // sorted node indices
    bool trivial = false;           // single node without self-loop
    bool has_accepting = false;
};

/// Tarjan decomposition over all nodes (materialized included), emitted in
/// reverse topological order of the condensation; deterministic.
std::vector<Scc> scc_decomposition(const ProductAutomaton& p);

/// Nodes with zero outgoing edges, materialized nodes included; sorted.
std::vector<std::size_t> fail_nodes(const ProductAutomaton& p);

/// Returns a copy of p extended with materialized nodes for proof purposes:
/// nodes reachable under the target-label convention (guards read the
/// destination state's label), closed under real (source-convention)
/// successors, minus any addition that can reach an accepting cycle (adding
/// those would make the proof claim judgments that do not hold). On an empty
/// product the result supports a full proof; reachable nodes and edges are
/// unchanged.
ProductAutomaton materialize_for_proof(const ProductAutomaton& p);

} // namespace tvmc::product
