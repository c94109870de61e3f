#include "tvmc/fixtures.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "tvmc/engine.hpp"
#include "tvmc/oracle.hpp"
#include "tvmc/product.hpp"
#include "tvmc/proof.hpp"

namespace tvmc::fixtures {

namespace {

pks::State state_of(std::string id, ThreeValue edb, ThreeValue cert, ThreeValue fl, ThreeValue sl) {
    return {std::move(id), {{"edb", edb}, {"cert", cert}, {"fl", fl}, {"sl", sl}}};
}

} // namespace

pks::Pks stereo_model() {
    constexpr auto T = ThreeValue::True;
    constexpr auto F = ThreeValue::False;
    constexpr auto U = ThreeValue::Unknown;
    pks::Pks m;
    m.atoms = {"cert", "edb", "fl", "sl"};
    m.states = {
        state_of("s0", F, F, F, F),
        state_of("s1", T, T, F, F),
        state_of("s2", T, F, T, F),
        state_of("s3", T, T, F, T),
        state_of("s4", T, T, T, F),
        state_of("s5", T, F, T, F),
        state_of("s6", T, F, U, U),
        state_of("s7", T, F, U, U),
    };
    m.initial = {0};
    m.successors = {{1, 2}, {1}, {3, 4, 5}, {3}, {4}, {6, 7}, {6}, {7}};
    return m;
}

automata::BuchiAutomaton reference_automaton() {
    automata::BuchiAutomaton a;
    a.states = {"q0", "q1", "q2"};
    a.initial = 0;
    a.accepting = {2};
    const auto not_cert_not_fl = automata::Guard::from_literals({{"cert", false}, {"fl", false}});
    a.edges = {
        {0, automata::Guard::true_guard(), 0},
        {0, automata::Guard::from_literals({{"edb", true}}), 1},
        {1, not_cert_not_fl, 2},
        {2, not_cert_not_fl, 2},
    };
    const auto eta0 = ltl::to_nnf(ltl::parse("F (edb & X G (!cert & !fl))"));
    const auto eta12 = ltl::to_nnf(ltl::parse("G (!cert & !fl)"));
    a.eta = {eta0, eta12, eta12};
    a.mu = {ltl::negate(eta0), ltl::negate(eta12), ltl::negate(eta12)};
    return a;
}

ltl::FormulaPtr reference_property() { return ltl::parse(reference_property_text()); }

std::string reference_property_text() { return "G (edb -> F (cert | fl))"; }

pks::Pks maybe_all_agree_model() {
    pks::Pks m;
    m.atoms = {"p"};
    m.states = {{"s0", {{"p", ThreeValue::Unknown}}}};
    m.initial = {0};
    m.successors = {{0}};
    return m;
}

ExpectedArtifacts expected_artifacts() {
    ExpectedArtifacts e;
    e.product_prefix = {"<s0,q0>", "<s2,q0>", "<s5,q0>", "<s7,q0>", "<s7,q1>"};
    e.product_cycle = {"<s7,q2>"};
    e.projection_stem = {"s0", "s2", "s5"};
    e.projection_cycle = {"s7"};
    e.fail_conclusion_nodes = {"<s1,q1>", "<s2,q1>", "<s3,q1>", "<s4,q1>",
                               "<s5,q1>", "<s6,q1>", "<s7,q1>"};
    e.induction_components = {{"<s1,q0>"}, {"<s3,q0>"}, {"<s4,q0>"}, {"<s6,q0>"}, {"<s7,q0>"}};
    e.induction_exits = {{"<s1,q1>"}, {"<s3,q1>"}, {"<s4,q1>"}, {"<s6,q1>"}, {"<s7,q1>"}};
    e.successors_nodes = {"<s5,q0>", "<s2,q0>", "<s0,q0>"};
    return e;
}

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& part : parts) {
        if (!out.empty()) out += " ";
        out += part;
    }
    return out;
}

std::vector<std::string> names_of(const product::ProductAutomaton& p, const std::vector<std::size_t>& nodes) {
    std::vector<std::string> out;
    for (auto i : nodes) out.push_back(p.node_name(i));
    return out;
}

} // namespace

std::string verify_fixture() {
    const auto m = stereo_model();
    const auto a = reference_automaton();
    const auto expected = expected_artifacts();

    engine::Verdict v;
    try {
        v = engine::check(m, reference_property(), &a, reference_property_text());
    } catch (const std::exception& e) {
        return std::string{"pipeline threw: "} + e.what();
    }

    if (v.value != engine::VerdictValue::Maybe)
        return "verdict: expected maybe, got " + engine::to_string(v.value);
    if (!v.lasso || v.lasso_from != "pessimistic") return "violation witness missing or from the wrong run";
    if (!v.proof || v.proof_from != "optimistic" || !v.proof_product)
        return "satisfaction witness missing or from the wrong run";

    const auto& pp = v.pessimistic_product;
    if (const auto got = names_of(pp, v.lasso->prefix); got != expected.product_prefix)
        return "lasso prefix: expected " + join(expected.product_prefix) + ", got " + join(got);
    if (const auto got = names_of(pp, v.lasso->cycle); got != expected.product_cycle)
        return "lasso cycle: expected " + join(expected.product_cycle) + ", got " + join(got);

    const auto [stem, cycle] = product::project_lasso(pp, *v.lasso);
    if (stem != expected.projection_stem)
        return "projection stem: expected " + join(expected.projection_stem) + ", got " + join(stem);
    if (cycle != expected.projection_cycle)
        return "projection cycle: expected " + join(expected.projection_cycle) + ", got " + join(cycle);

    // proof shape: Fail* Induction* Successors* interleaved per the component
    // walk, one Conclusion at the end
    std::vector<std::string> fail_nodes;
    std::vector<std::vector<std::string>> inductions, exits;
    std::vector<std::string> successors;
    std::size_t conclusions = 0;
    for (const auto& step : v.proof->steps) {
        switch (step.kind) {
            case proof::StepKind::Fail:
                fail_nodes.insert(fail_nodes.end(), step.component.begin(), step.component.end());
                break;
            case proof::StepKind::Induction:
                inductions.push_back(step.component);
                exits.push_back(step.exit_set);
                break;
            case proof::StepKind::Successors:
                successors.insert(successors.end(), step.component.begin(), step.component.end());
                break;
            case proof::StepKind::Conclusion:
                ++conclusions;
                break;
        }
    }
    if (fail_nodes != expected.fail_conclusion_nodes)
        return "Fail nodes: expected " + join(expected.fail_conclusion_nodes) + ", got " + join(fail_nodes);
    if (inductions.size() != expected.induction_components.size())
        return "Induction count: expected " + std::to_string(expected.induction_components.size()) +
               ", got " + std::to_string(inductions.size());
    for (std::size_t i = 0; i < inductions.size(); ++i) {
        if (inductions[i] != expected.induction_components[i])
            return "Induction component " + std::to_string(i) + ": expected " +
                   join(expected.induction_components[i]) + ", got " + join(inductions[i]);
        if (exits[i] != expected.induction_exits[i])
            return "Induction exits " + std::to_string(i) + ": expected " +
                   join(expected.induction_exits[i]) + ", got " + join(exits[i]);
    }
    if (successors != expected.successors_nodes)
        return "Successors nodes: expected " + join(expected.successors_nodes) + ", got " + join(successors);
    if (conclusions != 1 || v.proof->steps.back().kind != proof::StepKind::Conclusion)
        return "proof must end with its single Conclusion step";

    const auto res = proof::check_proof(*v.proof_product, *v.proof);
    if (!res.accepted) return "proof checker rejected the replayed proof: " + res.reason;

    // independent emptiness + witness-word cross-checks
    if (!oracle::product_nonempty_bruteforce(v.pessimistic_product))
        return "brute-force emptiness disagrees on the pessimistic product";
    if (oracle::product_nonempty_bruteforce(v.optimistic_product))
        return "brute-force emptiness disagrees on the optimistic product";
    const auto w = oracle::lasso_word(pp, *v.lasso);
    if (!oracle::eval_ltl_on_word(a.eta[a.initial], w))
        return "lasso word does not satisfy the automaton's initial annotation";
    if (oracle::eval_ltl_on_word(a.mu[a.initial], w))
        return "lasso word fails to violate the property annotation";

    return "";
}

} // namespace tvmc::fixtures
