#include <benchmark/benchmark.h>

#include <random>

#include "ibifsa/harness.hpp"
#include "ibifsa/machine.hpp"
#include "ibifsa/substructures.hpp"

using namespace ibifsa;

namespace {

Machine random_machine(const FiniteGroup& g, int letters, int den, unsigned seed) {
    std::mt19937_64 rng(seed);
    const int n = g.order();
    std::vector<std::string> alphabet;
    for (int l = 0; l < letters; ++l) {
        alphabet.push_back(std::string(1, static_cast<char>('u' + l)));
    }
    std::vector<std::vector<std::vector<TruthValue>>> mu, nu;
    for (int l = 0; l < letters; ++l) {
        std::vector<std::vector<TruthValue>> ma(n, std::vector<TruthValue>(n));
        std::vector<std::vector<TruthValue>> mb(n, std::vector<TruthValue>(n));
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                const long long a = static_cast<long long>(rng() % (den + 1));
                const long long b = static_cast<long long>(rng() % (den - a + 1));
                ma[r][c] = TruthValue::fraction(a, den);
                mb[r][c] = TruthValue::fraction(b, den);
            }
        }
        mu.push_back(std::move(ma));
        nu.push_back(std::move(mb));
    }
    return Machine::create(g, std::move(alphabet), std::move(mu), std::move(nu),
                           TruthValue::one(), StructureMode::none);
}

void BM_compose(benchmark::State& state) {
    const auto g = FiniteGroup::symmetric(static_cast<int>(state.range(0)));
    const auto m = random_machine(g, 2, 6, 7);
    const auto p = m.letter_matrices(0);
    const auto q = m.letter_matrices(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose(p, q));
    }
    state.SetLabel("order " + std::to_string(g.order()));
}
BENCHMARK(BM_compose)->Arg(3)->Arg(4);

void BM_word_extension(benchmark::State& state) {
    const auto m = random_machine(FiniteGroup::klein4(), 2, 6, 11);
    const Word w = m.parse_word("u v u v u");
    for (auto _ : state) {
        WordExtender extender(m); // fresh cache: measures the fold itself
        benchmark::DoNotOptimize(extender.extend(w));
    }
}
BENCHMARK(BM_word_extension);

void BM_subsemi_degree(benchmark::State& state) {
    const auto g = FiniteGroup::symmetric(3);
    const auto m = random_machine(g, 1, 6, 13);
    std::vector<TruthValue> mu, nu;
    std::mt19937_64 rng(17);
    for (int x = 0; x < g.order(); ++x) {
        const long long a = static_cast<long long>(rng() % 7);
        mu.push_back(TruthValue::fraction(a, 6));
        nu.push_back(TruthValue::fraction(rng() % (7 - a), 6));
    }
    const auto s = IFSubset::create(mu, nu);
    for (auto _ : state) {
        benchmark::DoNotOptimize(subsemi_degree(m, s));
    }
}
BENCHMARK(BM_subsemi_degree);

void BM_kernel_star_degree(benchmark::State& state) {
    const auto g = FiniteGroup::symmetric(3);
    const auto m = random_machine(g, 1, 6, 19);
    const auto s = IFSubset::crisp(g.order(), {g.identity()});
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_star_degree(m, s, 4));
    }
}
BENCHMARK(BM_kernel_star_degree);

void BM_grid_search_thm_ext(benchmark::State& state) {
    SearchParams params;
    params.theorem = TheoremId::thm_ext;
    InstanceGrid grid;
    grid.group_spec = "cyclic:2";
    grid.denominator = static_cast<int>(state.range(0));
    params.source = SourceSpec::from_grid(grid);
    params.workers = 1;
    unsigned long long instances = 0;
    for (auto _ : state) {
        const auto report = search_counterexamples(params);
        instances = report.instances_examined;
        benchmark::DoNotOptimize(report);
    }
    state.counters["instances/s"] =
        benchmark::Counter(static_cast<double>(instances) * state.iterations(),
                           benchmark::Counter::kIsRate);
}
BENCHMARK(BM_grid_search_thm_ext)->Arg(2)->Arg(3);

void BM_sampler_subsemi_star(benchmark::State& state) {
    SearchParams params;
    params.theorem = TheoremId::thm_subsemi_star;
    SamplerSpec spec;
    spec.group_spec = "symmetric:3";
    spec.denominator = 4;
    spec.count = 200;
    params.source = SourceSpec::from_sample(spec);
    params.workers = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(search_counterexamples(params));
    }
}
BENCHMARK(BM_sampler_subsemi_star);

} // namespace

BENCHMARK_MAIN();
