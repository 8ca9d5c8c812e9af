// Serial vs OpenMP timings for the enumeration kernels. Argument 0 runs the
// serial reference, 1 the parallel kernel, on the same inputs.

#include <benchmark/benchmark.h>

#include "strata/aas.hpp"
#include "strata/enumerators.hpp"
#include "strata/generate.hpp"
#include "strata/semantics.hpp"

using namespace strata;

namespace {

const KnowledgeBase& dense_program() {
    static const KnowledgeBase kb = [] {
        gen::Rng rng(11);
        gen::MixedParams p;
        p.atoms = 18;
        p.rules = 40;
        p.negative = 0.5;
        return gen::mixed_program(rng, p);
    }();
    return kb;
}

const KnowledgeBase& layered() {
    static const KnowledgeBase kb = [] {
        gen::Rng rng(12);
        gen::LayeredParams p;
        p.atoms = 20000;
        return gen::layered_program(rng, p);
    }();
    return kb;
}

const KnowledgeBase& clustered() {
    // Independent small cyclic blocks: many super-graph nodes with real work.
    static const KnowledgeBase kb = [] {
        gen::Rng rng(13);
        gen::MixedParams p;
        p.atoms = 10;
        p.rules = 18;
        p.negative = 0.5;
        KnowledgeBase out;
        for (int b = 0; b < 64; ++b) {
            const auto block = gen::mixed_program(rng, p);
            for (const auto& r : block.rules()) {
                auto rename = [&](AtomId a) {
                    return out.intern("b" + std::to_string(b) + "_" + std::string(block.atoms().name(a)));
                };
                Rule copy{rename(r.head), {}, {}};
                for (AtomId a : r.pos) copy.pos.push_back(rename(a));
                for (AtomId a : r.neg) copy.neg.push_back(rename(a));
                out.add_rule(std::move(copy));
            }
        }
        return out;
    }();
    return kb;
}

ExecPolicy policy(const benchmark::State& s) { return ExecPolicy{s.range(0) != 0}; }

void BM_brute(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(brute_force_stable_models(dense_program(), 20, policy(s)));
}

void BM_all_stable1(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(all_stable1(dense_program(), policy(s)));
}

void BM_all_stable2(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(all_stable2(dense_program(), policy(s)));
}

void BM_aas_layered(benchmark::State& s) {
    AasOptions o;
    o.policy = policy(s);
    for (auto _ : s) benchmark::DoNotOptimize(aas_solve(layered(), {}, o));
}

void BM_aas_clustered(benchmark::State& s) {
    AasOptions o;
    o.policy = policy(s);
    for (auto _ : s) benchmark::DoNotOptimize(aas_solve(clustered(), {}, o));
}

}  // namespace

BENCHMARK(BM_brute)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_all_stable1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_all_stable2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_aas_layered)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_aas_clustered)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
