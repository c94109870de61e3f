#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tvmc/product.hpp"

#include "tvmc/fixtures.hpp"
#include "tvmc/oracle.hpp"
#include "support/generators.hpp"

#include <algorithm>
#include <set>

using namespace tvmc;

namespace {

struct Fixture {
    pks::Pks model = fixtures::stereo_model();
    automata::BuchiAutomaton automaton = fixtures::reference_automaton();
    product::ProductAutomaton pes, opt;

    Fixture() {
        const auto closed = pks::complement_close(model);
        pes = product::intersect(pks::pessimistic(closed), automaton);
        opt = product::intersect(pks::optimistic(closed), automaton);
    }
};

std::vector<std::string> names(const product::ProductAutomaton& p, const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(p.node_name(i));
    return out;
}

bool has_edge(const product::ProductAutomaton& p, product::Node a, product::Node b) {
    const auto i = p.index_of(a), j = p.index_of(b);
    if (i == product::ProductAutomaton::npos || j == product::ProductAutomaton::npos) return false;
    return std::binary_search(p.successors[i].begin(), p.successors[i].end(), j);
}

} // namespace

TEST_CASE("product sizes on the pinned inputs") {
    Fixture f;
    CHECK(f.pes.nodes.size() == 16);
    CHECK(f.opt.nodes.size() == 14);
    CHECK(f.pes.initial_nodes.size() == 1);
    CHECK(f.pes.node_name(f.pes.initial_nodes[0]) == "<s0,q0>");
    CHECK(std::none_of(f.opt.flagged.begin(), f.opt.flagged.end(), [](bool b) { return b; }));
}

TEST_CASE("edges read the guard on the source state's label") {
    Fixture f;
    // s2 has edb=T, so the q0 -> q1 edge (guard "edb") fires on the step s2 -> s5.
    CHECK(has_edge(f.opt, {2, 0}, {5, 1}));
    // s0 has edb=F: the q0 -> q1 edge (guard "edb") cannot fire when leaving s0.
    CHECK(!has_edge(f.opt, {0, 0}, {1, 1}));
    CHECK(has_edge(f.opt, {0, 0}, {1, 0}));
    // q1 -> q2 needs !cert & !fl on the source; s7 is cert=F fl=F in the
    // pessimistic completion but fl=T in the optimistic one.
    CHECK(has_edge(f.pes, {7, 1}, {7, 2}));
    CHECK(!has_edge(f.opt, {7, 1}, {7, 2}));
}

TEST_CASE("emptiness search returns the pinned pessimistic witness") {
    Fixture f;
    const auto l = product::find_accepting_lasso(f.pes);
    REQUIRE(l.has_value());
    CHECK(names(f.pes, l->prefix) ==
          std::vector<std::string>{"<s0,q0>", "<s2,q0>", "<s5,q0>", "<s7,q0>", "<s7,q1>"});
    CHECK(names(f.pes, l->cycle) == std::vector<std::string>{"<s7,q2>"});
    CHECK(!product::validate_lasso(f.pes, *l).has_value());

    const auto [stem, cycle] = product::project_lasso(f.pes, *l);
    CHECK(stem == std::vector<std::string>{"s0", "s2", "s5"});
    CHECK(cycle == std::vector<std::string>{"s7"});
}

TEST_CASE("the optimistic product is empty") {
    Fixture f;
    CHECK(!product::find_accepting_lasso(f.opt).has_value());
    CHECK(!oracle::product_nonempty_bruteforce(f.opt));
}

TEST_CASE("lasso validation rejects each corruption") {
    Fixture f;
    const auto good = *product::find_accepting_lasso(f.pes);

    const auto reason = [&](product::Lasso l) {
        const auto r = product::validate_lasso(f.pes, l);
        return r ? *r : std::string{};
    };

    CHECK(reason(good).empty());

    auto l = good;
    l.cycle.clear();
    CHECK(reason(l) == "cycle is empty");

    l = good;
    l.prefix.clear();
    CHECK(reason(l) == "prefix is empty");

    l = good;
    l.prefix[0] = f.pes.index_of({1, 0}); // reachable but not initial
    CHECK(reason(l) == "prefix does not start at an initial node");

    l = good;
    l.prefix.insert(l.prefix.begin() + 1, f.pes.index_of({1, 0})); // s0 -> s1 exists, s1 -> s2 does not
    CHECK(reason(l).starts_with("missing edge <s1,q0> ->"));

    l = good;
    l.cycle = {f.pes.index_of({7, 0})}; // prefix ends at <s7,q1>, no edge back up
    CHECK(reason(l).starts_with("missing edge <s7,q1> -> <s7,q0>"));

    l = good;
    l.cycle = {f.pes.index_of({7, 1})}; // <s7,q1> -> <s7,q1> is not an edge
    CHECK(!reason(l).empty());

    l = good;
    l.prefix.pop_back();          // now ends at <s7,q0>, which does step to <s7,q2>? no: q0 has no edge to q2
    CHECK(!reason(l).empty());

    l = good;
    l.prefix.push_back(12345);
    CHECK(reason(l) == "prefix node index out of range");

    l = good;
    l.cycle.push_back(12345);
    CHECK(reason(l) == "cycle node index out of range");
}

TEST_CASE("non-accepting cycles are rejected") {
    // One-state model satisfying G p checked against the automaton for G p:
    // the only cycle is accepting; flipping acceptance off must be caught.
    pks::Pks m;
    m.atoms = {"p"};
    m.states = {{"s0", {{"p", ThreeValue::True}}}};
    m.initial = {0};
    m.successors = {{0}};
    auto a = automata::ltl_to_buchi(ltl::to_nnf(ltl::parse("G p")));
    auto p = product::intersect(m, a);
    const auto l = product::find_accepting_lasso(p);
    REQUIRE(l.has_value());
    CHECK(names(p, l->prefix) == std::vector<std::string>{"<s0,q0>"});
    CHECK(names(p, l->cycle) == std::vector<std::string>{"<s0,q0>"});

    const auto [stem, cycle] = product::project_lasso(p, *l);
    CHECK(stem.empty()); // trailing stem state folds into the cycle
    CHECK(cycle == std::vector<std::string>{"s0"});

    p.accepting.assign(p.accepting.size(), false);
    CHECK(product::validate_lasso(p, *l) == "cycle has no accepting node");
    CHECK(!product::find_accepting_lasso(p).has_value());
}

TEST_CASE("materialization on the pinned optimistic product") {
    Fixture f;
    const auto m = product::materialize_for_proof(f.opt);
    CHECK(m.nodes.size() == 15);

    std::vector<std::string> added;
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
        if (m.flagged[i]) added.push_back(m.node_name(i));
    CHECK(added == std::vector<std::string>{"<s2,q1>"});

    // nothing reaches the materialized node
    const auto j = m.index_of({2, 1});
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
        if (i != j)
            CHECK(!std::binary_search(m.successors[i].begin(), m.successors[i].end(), j));

    CHECK(names(f.opt, product::fail_nodes(f.opt)) ==
          std::vector<std::string>{"<s1,q1>", "<s3,q1>", "<s4,q1>", "<s5,q1>", "<s6,q1>", "<s7,q1>"});
    CHECK(names(m, product::fail_nodes(m)) ==
          std::vector<std::string>{"<s1,q1>", "<s2,q1>", "<s3,q1>", "<s4,q1>", "<s5,q1>",
                                   "<s6,q1>", "<s7,q1>"});
}

TEST_CASE("component decomposition is reverse topological") {
    Fixture f;
    const auto m = product::materialize_for_proof(f.opt);
    const auto sccs = product::scc_decomposition(m);
    CHECK(sccs.size() == 15); // every component is a single node here

    std::vector<std::size_t> component_of(m.nodes.size());
    for (std::size_t c = 0; c < sccs.size(); ++c) {
        CHECK(sccs[c].nodes.size() == 1);
        for (auto n : sccs[c].nodes) component_of[n] = c;
    }
    for (std::size_t u = 0; u < m.nodes.size(); ++u)
        for (auto v : m.successors[u])
            if (component_of[u] != component_of[v])
                CHECK(component_of[v] < component_of[u]); // successors emitted first

    // self-loop components are not trivial; dead ends are
    const auto at = [&](product::Node n) { return sccs[component_of[m.index_of(n)]]; };
    CHECK(!at({1, 0}).trivial);
    CHECK(at({1, 1}).trivial);
    CHECK(!at({7, 0}).trivial);
    CHECK(!at({7, 0}).has_accepting);
}

TEST_CASE("materialization properties on random empty products") {
    testing::Rng rng(61803);
    int checked = 0;
    while (checked < 40) {
        const auto model = testing::random_complete_pks(rng, 5, {"a", "b"});
        const auto f = testing::random_nnf_formula(rng, 2, {"a", "b"});
        const auto a = automata::ltl_to_buchi(f);
        const auto p = product::intersect(model, a);
        if (product::find_accepting_lasso(p).has_value()) continue;
        ++checked;

        const auto m = product::materialize_for_proof(p);

        // the reachable part is untouched
        for (std::size_t i = 0; i < p.nodes.size(); ++i) {
            const auto j = m.index_of(p.nodes[i]);
            REQUIRE(j != product::ProductAutomaton::npos);
            CHECK(!m.flagged[j]);
            std::set<std::string> before, after;
            for (auto t : p.successors[i]) before.insert(p.node_name(t));
            for (auto t : m.successors[j]) after.insert(m.node_name(t));
            CHECK(before == after);
        }
        CHECK(names(m, m.initial_nodes) == names(p, p.initial_nodes));

        // no materialized node can reach an accepting cycle
        const auto sccs = product::scc_decomposition(m);
        std::set<std::size_t> bad;
        for (const auto& c : sccs)
            if (!c.trivial && c.has_accepting) bad.insert(c.nodes.begin(), c.nodes.end());
        for (std::size_t i = 0; i < m.nodes.size(); ++i) {
            if (!m.flagged[i]) continue;
            std::vector<std::size_t> stack{i};
            std::set<std::size_t> seen{i};
            while (!stack.empty()) {
                const auto u = stack.back();
                stack.pop_back();
                CHECK(bad.count(u) == 0);
                for (auto v : m.successors[u])
                    if (seen.insert(v).second) stack.push_back(v);
            }
        }
    }
}

TEST_CASE("emptiness search agrees with brute force on random products") {
    testing::Rng rng(271828);
    for (int i = 0; i < 120; ++i) {
        const auto model = testing::random_complete_pks(rng, 5, {"a", "b"});
        const auto f = testing::random_nnf_formula(rng, 2, {"a", "b"});
        const auto p = product::intersect(model, automata::ltl_to_buchi(f));
        const auto l = product::find_accepting_lasso(p);
        CHECK(l.has_value() == oracle::product_nonempty_bruteforce(p));
        if (l) CHECK(!product::validate_lasso(p, *l).has_value());
    }
}
