#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tvmc/oracle.hpp"

#include "tvmc/engine.hpp"
#include "tvmc/fixtures.hpp"
#include "support/generators.hpp"

using namespace tvmc;

namespace {

oracle::Word word(std::vector<std::set<std::string>> prefix,
                  std::vector<std::set<std::string>> period,
                  std::set<std::string> atoms = {"a", "b"}) {
    return {std::move(prefix), std::move(period), std::move(atoms)};
}

bool ev(const char* text, const oracle::Word& w) {
    return oracle::eval_ltl_on_word(ltl::parse(text), w);
}

} // namespace

TEST_CASE("word evaluation, hand-checked") {
    const auto w1 = word({{"a"}}, {{}});           // a; then nothing forever
    CHECK(ev("a", w1));
    CHECK(!ev("b", w1));
    CHECK(!ev("X a", w1));
    CHECK(ev("X !a", w1));
    CHECK(!ev("G a", w1));
    CHECK(ev("F !a", w1));
    CHECK(ev("a U !a", w1));
    CHECK(!ev("F b", w1));
    CHECK(ev("G !b", w1));

    const auto w2 = word({}, {{"a"}, {"b"}});      // (a b)^w
    CHECK(ev("G (a | b)", w2));
    CHECK(ev("G F a", w2));
    CHECK(ev("G F b", w2));
    CHECK(!ev("F G a", w2));
    CHECK(ev("a U b", w2));
    CHECK(ev("G (a -> X b)", w2));
    CHECK(ev("G (b -> X a)", w2));
    CHECK(!ev("G (a -> b)", w2));
    CHECK(ev("!b R a", w2)); // releases immediately: !b and a both hold at position 0
    CHECK(ev("b R (a | b)", w2));

    // release with nothing ever releasing = G
    const auto w3 = word({{"a"}, {}}, {{"a", "b"}});
    CHECK(!ev("false R a", w3));
    CHECK(ev("false R (a | !a)", w3));
    CHECK(ev("F G (a & b)", w3));
    CHECK(ev("X X G a", w3));
    CHECK(!ev("X G a", w3));

    // the period is evaluated as a genuine cycle, not a truncation:
    // F a must look past the prefix into later turns of the loop
    const auto w4 = word({{}}, {{}, {"a"}});
    CHECK(ev("F a", w4));
    CHECK(ev("G F a", w4));
    CHECK(!ev("a", w4));
    CHECK(ev("X X a", w4));
    CHECK(ev("X X X !a", w4));

    // until whose witness sits exactly on the loopback position
    const auto w5 = word({{"a"}, {"a"}}, {{"b"}});
    CHECK(ev("a U b", w5));
    CHECK(ev("a U (b & X b)", w5));
    CHECK(ev("b U a", w5));                        // witness at position 0, no b needed
    CHECK(!ev("a U b", word({}, {{"a"}})));        // b never arrives
    CHECK(ev("b U a", word({}, {{"a"}})));

    CHECK(ev("true", w1));
    CHECK(!ev("false", w1));
    CHECK(ev("a -> a", w1));
    CHECK(ev("!(a & b)", w1));
}

TEST_CASE("word evaluation rejects bad inputs") {
    CHECK_THROWS((void)ev("a", word({{"a"}}, {})));           // empty period
    CHECK_THROWS((void)ev("c", word({}, {{"a"}})));           // alien atom
    CHECK_NOTHROW((void)ev("a", word({}, {{"c"}}, {"a", "c"})));
}

TEST_CASE("word evaluation agrees with NNF rewriting") {
    testing::Rng rng(1618);
    for (int i = 0; i < 200; ++i) {
        const auto f = testing::random_formula(rng, 3, {"a", "b"});
        oracle::Word w;
        w.atoms = {"a", "b"};
        const auto letter = [&] {
            std::set<std::string> l;
            if (testing::coin(rng)) l.insert("a");
            if (testing::coin(rng)) l.insert("b");
            return l;
        };
        for (std::size_t k = testing::pick(rng, 0, 3); k-- > 0;) w.prefix.push_back(letter());
        for (std::size_t k = testing::pick(rng, 1, 3); k-- > 0;) w.period.push_back(letter());
        CHECK(oracle::eval_ltl_on_word(f, w) == oracle::eval_ltl_on_word(ltl::to_nnf(f), w));
        CHECK(oracle::eval_ltl_on_word(f, w) != oracle::eval_ltl_on_word(ltl::negate(f), w));
    }
}

TEST_CASE("model satisfaction, hand-checked") {
    // two-state flip-flop: p, !p, p, !p ...
    pks::Pks flip;
    flip.atoms = {"p"};
    flip.states = {{"s0", {{"p", ThreeValue::True}}}, {"s1", {{"p", ThreeValue::False}}}};
    flip.initial = {0};
    flip.successors = {{1}, {0}};
    CHECK(oracle::model_satisfies(flip, ltl::parse("G F p")));
    CHECK(oracle::model_satisfies(flip, ltl::parse("G (p -> X !p)")));
    CHECK(!oracle::model_satisfies(flip, ltl::parse("G p")));
    CHECK(oracle::model_satisfies(flip, ltl::parse("p")));

    // branching: one branch violates
    pks::Pks branch;
    branch.atoms = {"p"};
    branch.states = {{"s0", {{"p", ThreeValue::True}}},
                     {"s1", {{"p", ThreeValue::True}}},
                     {"s2", {{"p", ThreeValue::False}}}};
    branch.initial = {0};
    branch.successors = {{1, 2}, {1}, {2}};
    CHECK(!oracle::model_satisfies(branch, ltl::parse("G p")));
    CHECK(oracle::model_satisfies(branch, ltl::parse("F G (p | !p)")));
    CHECK(oracle::model_satisfies(branch, ltl::parse("G (!p -> X !p)")));
}

TEST_CASE("model satisfaction guards its preconditions") {
    auto m = fixtures::stereo_model(); // has unknowns
    CHECK_THROWS((void)oracle::model_satisfies(m, ltl::parse("true")));

    pks::Pks big;
    big.atoms = {"p"};
    for (int i = 0; i < 9; ++i) {
        big.states.push_back({"s" + std::to_string(i), {{"p", ThreeValue::True}}});
        big.successors.push_back({static_cast<std::size_t>((i + 1) % 9)});
    }
    big.initial = {0};
    CHECK_THROWS((void)oracle::model_satisfies(big, ltl::parse("true")));

    pks::Pks ok = pks::pessimistic(fixtures::stereo_model());
    CHECK_THROWS((void)oracle::model_satisfies(ok, ltl::parse("zzz")));
    CHECK_NOTHROW((void)oracle::model_satisfies(ok, ltl::parse("true")));
}

TEST_CASE("model satisfaction crosses over with the verdict engine") {
    testing::Rng rng(5882353);
    for (int i = 0; i < 60; ++i) {
        const auto m = testing::random_complete_pks(rng, 4, {"a", "b"});
        const auto f = testing::random_formula(rng, 2, {"a", "b"});
        const auto v = engine::check(m, f);
        REQUIRE(v.value != engine::VerdictValue::Maybe); // complete model: no third value
        CHECK((v.value == engine::VerdictValue::True) == oracle::model_satisfies(m, f));
    }
}

TEST_CASE("automaton membership agrees with direct evaluation") {
    testing::Rng rng(99991);
    for (int i = 0; i < 25; ++i) {
        const auto f = testing::random_nnf_formula(rng, 2, {"a", "b"});
        const auto a = automata::ltl_to_buchi(f);
        testing::for_each_word({"a", "b"}, 3, [&](const oracle::Word& w) {
            CHECK(oracle::accepts_word(a, w) == oracle::eval_ltl_on_word(f, w));
        });
    }
}

TEST_CASE("bruteforce emptiness matches the nested search") {
    testing::Rng rng(31337);
    for (int i = 0; i < 80; ++i) {
        const auto m = testing::random_complete_pks(rng, 5, {"a", "b"});
        const auto f = testing::random_nnf_formula(rng, 2, {"a", "b"});
        const auto p = product::intersect(m, automata::ltl_to_buchi(f));
        CHECK(oracle::product_nonempty_bruteforce(p) ==
              product::find_accepting_lasso(p).has_value());
    }
}

TEST_CASE("the word along the pinned counterexample lasso") {
    const auto closed = pks::complement_close(fixtures::stereo_model());
    const auto pes = pks::pessimistic(closed);
    const auto a = fixtures::reference_automaton();
    const auto p = product::intersect(pes, a);
    const auto l = product::find_accepting_lasso(p);
    REQUIRE(l.has_value());

    const auto w = oracle::lasso_word(p, *l);
    REQUIRE(w.prefix.size() == 5);
    REQUIRE(w.period.size() == 1);
    CHECK(w.prefix[0].count("edb") == 0);            // s0
    CHECK(w.prefix[3].count("edb") == 1);            // s7 triggers the eventuality
    CHECK(w.period[0].count("cert") == 0);           // pessimistic s7: unknowns read false
    CHECK(w.period[0].count("fl") == 0);

    // the automaton's own annotations hold/fail on its witness word
    CHECK(oracle::eval_ltl_on_word(a.eta[0], w));
    CHECK(!oracle::eval_ltl_on_word(a.mu[0], w));
    CHECK(oracle::accepts_word(a, w));

    // reading a word off a partial structure is refused
    const auto raw = product::ProductAutomaton{fixtures::stereo_model(), a, p.nodes,
                                               p.successors, p.initial_nodes, p.accepting,
                                               p.flagged};
    CHECK_THROWS((void)oracle::lasso_word(raw, *l));
}
