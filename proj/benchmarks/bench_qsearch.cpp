#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "qsearch/grover.hpp"
#include "qsearch/qdam.hpp"
#include "qsearch/resources.hpp"
#include "qsearch/schedule.hpp"

using namespace qsearch;

namespace {

Database scrambled_db(std::size_t n)
{
    const std::size_t N = std::size_t{1} << n;
    std::vector<Record> records;
    for (std::size_t i = 0; i < N; ++i) {
        const std::size_t v = (5 * i + 3) % N;
        std::string key(n, '0');
        for (std::size_t b = 0; b < n; ++b) {
            if ((v >> b) & 1U) key[n - 1 - b] = '1';
        }
        Record r;
        r.values["key"] = key;
        records.push_back(std::move(r));
    }
    return Database({{"key", n}}, "key", std::move(records));
}

void BM_LowerQdam(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto l = QdamLayout::optimized(n, 4);
    const auto macro = build_qdam(l, zero_keys(n, 4));
    for (auto _ : state) {
        auto c = lower_with(macro, l);
        benchmark::DoNotOptimize(c.size());
    }
}
BENCHMARK(BM_LowerQdam)->DenseRange(2, 8, 2);

void BM_MeasureOptimized(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(measure_layout(n, 8, ReportMode::Measured).t_cost);
}
BENCHMARK(BM_MeasureOptimized)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

void BM_MeasureNaive(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(measure_layout(n, 8, ReportMode::NaiveMeasured).t_cost);
}
BENCHMARK(BM_MeasureNaive)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_Search(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto db = scrambled_db(n);
    const auto plan = SearchPlan::for_database(db);
    const SearchQuery q{db.key_of(1), "key"};
    for (auto _ : state) benchmark::DoNotOptimize(run_search(db, q, plan).success_probability);
    state.counters["N"] = static_cast<double>(db.size());
}
BENCHMARK(BM_Search)->DenseRange(2, 7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
