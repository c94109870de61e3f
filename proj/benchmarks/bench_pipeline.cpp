#include <benchmark/benchmark.h>

#include "tvmc/engine.hpp"
#include "tvmc/fixtures.hpp"
#include "tvmc/product.hpp"
#include "tvmc/proof.hpp"

using namespace tvmc;

namespace {

ltl::FormulaPtr negated_reference() {
    return ltl::negate(ltl::complement_close(ltl::to_nnf(fixtures::reference_property())));
}

void bm_parse(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(ltl::parse("G (edb -> F (cert | fl)) & (a U (b R !c)) -> X F G d"));
}
BENCHMARK(bm_parse);

void bm_translate_reference(benchmark::State& state) {
    const auto f = negated_reference();
    for (auto _ : state) benchmark::DoNotOptimize(automata::ltl_to_buchi(f));
}
BENCHMARK(bm_translate_reference);

void bm_translate_nested(benchmark::State& state) {
    const auto f = ltl::to_nnf(ltl::parse("G (a -> F (b & X (c U a))) & (b R (a U c))"));
    for (auto _ : state) benchmark::DoNotOptimize(automata::ltl_to_buchi(f));
}
BENCHMARK(bm_translate_nested);

void bm_intersect(benchmark::State& state) {
    const auto pes = pks::pessimistic(pks::complement_close(fixtures::stereo_model()));
    const auto a = fixtures::reference_automaton();
    for (auto _ : state) benchmark::DoNotOptimize(product::intersect(pes, a));
}
BENCHMARK(bm_intersect);

void bm_emptiness(benchmark::State& state) {
    const auto pes = pks::pessimistic(pks::complement_close(fixtures::stereo_model()));
    const auto p = product::intersect(pes, fixtures::reference_automaton());
    for (auto _ : state) benchmark::DoNotOptimize(product::find_accepting_lasso(p));
}
BENCHMARK(bm_emptiness);

void bm_proof_generation(benchmark::State& state) {
    const auto opt = pks::optimistic(pks::complement_close(fixtures::stereo_model()));
    const auto p = product::materialize_for_proof(product::intersect(opt, fixtures::reference_automaton()));
    for (auto _ : state)
        benchmark::DoNotOptimize(proof::generate_proof(p, fixtures::reference_property_text()));
}
BENCHMARK(bm_proof_generation);

void bm_full_check(benchmark::State& state) {
    const auto m = fixtures::stereo_model();
    const auto f = fixtures::reference_property();
    const auto a = fixtures::reference_automaton();
    for (auto _ : state) benchmark::DoNotOptimize(engine::check(m, f, &a));
}
BENCHMARK(bm_full_check);

} // namespace

BENCHMARK_MAIN();
