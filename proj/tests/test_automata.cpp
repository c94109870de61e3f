#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tvmc/automata.hpp"

#include "tvmc/fixtures.hpp"
#include "tvmc/oracle.hpp"
#include "support/generators.hpp"

using namespace tvmc;

namespace {

ltl::FormulaPtr nnf(const char* text) { return ltl::to_nnf(ltl::parse(text)); }

automata::BuchiAutomaton rebased(automata::BuchiAutomaton a, std::size_t q) {
    a.initial = q;
    return a;
}

} // namespace

TEST_CASE("guards are canonical literal conjunctions") {
    CHECK(automata::parse_guard("true").is_true());
    const auto g = automata::parse_guard("!fl & !cert");
    CHECK(g.to_string() == "!cert & !fl"); // sorted
    CHECK(g == automata::parse_guard("!cert & !fl & !cert")); // dedup
    CHECK(g.eval({"edb"}));
    CHECK(!g.eval({"cert"}));
    CHECK(automata::parse_guard("edb").eval({"edb", "fl"}));
    CHECK_THROWS_AS((void)automata::parse_guard("a | b"), ltl::ParseError);
    CHECK_THROWS_AS((void)automata::parse_guard("F a"), ltl::ParseError);
    CHECK_THROWS_AS((void)automata::parse_guard("!!a"), ltl::ParseError);

    // contradictory guard is legal and never fires
    const auto contradiction = automata::parse_guard("a & !a");
    CHECK(!contradiction.eval({}));
    CHECK(!contradiction.eval({"a"}));

    // barred atoms pass through
    CHECK(automata::parse_guard("!edb~").literals()[0].atom == "edb~");
}

TEST_CASE("checked guard evaluation") {
    const auto g = automata::parse_guard("a & !b");
    CHECK(automata::guard_eval(g, {{"a", ThreeValue::True}, {"b", ThreeValue::False}}));
    CHECK_THROWS((void)automata::guard_eval(g, {{"a", ThreeValue::True}}));
    CHECK_THROWS((void)automata::guard_eval(g, {{"a", ThreeValue::Unknown}, {"b", ThreeValue::False}}));
}

TEST_CASE("translation of G of a literal is the one-state loop") {
    const auto a = automata::ltl_to_buchi(nnf("G p"));
    REQUIRE(a.states.size() == 1);
    CHECK(a.states[0] == "q0");
    CHECK(a.accepting.count(0) == 1);
    REQUIRE(a.edges.size() == 1);
    CHECK(a.edges[0].from == 0);
    CHECK(a.edges[0].to == 0);
    CHECK(a.edges[0].guard.to_string() == "p");
    CHECK(ltl::to_string(a.eta[0]) == "G p");
}

TEST_CASE("translation of false has the empty language") {
    const auto a = automata::ltl_to_buchi(ltl::Formula::make_false());
    testing::for_each_word({"p"}, 3, [&](const oracle::Word& w) { CHECK(!oracle::accepts_word(a, w)); });
}

TEST_CASE("translation of true accepts everything") {
    const auto a = automata::ltl_to_buchi(ltl::Formula::make_true());
    testing::for_each_word({"p"}, 3, [&](const oracle::Word& w) { CHECK(oracle::accepts_word(a, w)); });
}

TEST_CASE("translated language matches direct evaluation on handpicked formulas") {
    for (const char* text : {"F a", "G a", "a U b", "a R b", "X a", "G F a", "F G a",
                             "G F a & G F b", "(a U b) | G !a", "F (a & X !b)"}) {
        const auto f = nnf(text);
        const auto a = automata::ltl_to_buchi(f);
        CAPTURE(text);
        testing::for_each_word(ltl::atoms(f), 4, [&](const oracle::Word& w) {
            CHECK(oracle::accepts_word(a, w) == oracle::eval_ltl_on_word(f, w));
        });
    }
}

TEST_CASE("every state's annotation characterizes acceptance from that state") {
    for (const char* text : {"F a & G b", "a U b", "G (a -> X b)"}) {
        const auto f = nnf(text);
        const auto a = automata::ltl_to_buchi(f);
        CAPTURE(text);
        for (std::size_t q = 0; q < a.states.size(); ++q) {
            const auto from_q = rebased(a, q);
            testing::for_each_word(ltl::atoms(f), 4, [&](const oracle::Word& w) {
                CHECK(oracle::accepts_word(from_q, w) == oracle::eval_ltl_on_word(a.eta[q], w));
            });
        }
    }
}

TEST_CASE("mu is the normalized negation of eta, structurally") {
    testing::Rng rng(5150);
    for (int i = 0; i < 30; ++i) {
        const auto f = testing::random_nnf_formula(rng, 3, {"a", "b"});
        const auto a = automata::ltl_to_buchi(f);
        CHECK(automata::validate(a).empty());
        for (std::size_t q = 0; q < a.states.size(); ++q)
            CHECK(ltl::equal(a.mu[q], ltl::negate(a.eta[q])));
        CHECK(ltl::equal(a.eta[a.initial], f)); // initial state carries the formula itself
    }
}

TEST_CASE("translation is deterministic") {
    const auto f = nnf("G (a -> F (b | c))");
    CHECK(automata::fingerprint(automata::ltl_to_buchi(f)) ==
          automata::fingerprint(automata::ltl_to_buchi(f)));
}

TEST_CASE("validate catches structural defects") {
    auto a = fixtures::reference_automaton();
    CHECK(automata::validate(a).empty());

    SUBCASE("mu inconsistent with eta") {
        a.mu[1] = ltl::parse("true");
        CHECK(!automata::validate(a).empty());
    }
    SUBCASE("edge endpoint out of range") {
        a.edges.push_back({0, automata::Guard::true_guard(), 17});
        CHECK(!automata::validate(a).empty());
    }
    SUBCASE("accepting out of range") {
        a.accepting.insert(9);
        CHECK(!automata::validate(a).empty());
    }
    SUBCASE("duplicate state name") {
        a.states[1] = "q0";
        CHECK(!automata::validate(a).empty());
    }
    SUBCASE("eta not in normal form") {
        a.eta[0] = ltl::parse("!(a U b)");
        CHECK(!automata::validate(a).empty());
    }
}

// The pinned three-state automaton and the translator's own output are not
// isomorphic, but they accept the same words of the shifted eventuality;
// exhaustive comparison over every ultimately periodic word with
// prefix+period <= 5 over the three atoms involved.
TEST_CASE("pinned reference automaton is language-equal to the translated shifted formula") {
    const auto generated = automata::ltl_to_buchi(nnf("F (edb & X G (!cert & !fl))"));
    const auto pinned = fixtures::reference_automaton();
    std::size_t words = 0, accepted = 0;
    testing::for_each_word({"cert", "edb", "fl"}, 5, [&](const oracle::Word& w) {
        ++words;
        const bool lhs = oracle::accepts_word(generated, w);
        const bool rhs = oracle::accepts_word(pinned, w);
        if (lhs) ++accepted;
        CHECK(lhs == rhs);
    });
    CHECK(words == 181896); // sum over L<=5 of L * 8^L
    CHECK(accepted > 0);
    CHECK(accepted < words);
}

TEST_CASE("out_edges filters by source") {
    const auto a = fixtures::reference_automaton();
    CHECK(a.out_edges(0).size() == 2);
    CHECK(a.out_edges(1).size() == 1);
    CHECK(a.out_edges(1)[0].to == 2);
}
