#include <benchmark/benchmark.h>

#include <qseries/bailey.hpp>
#include <qseries/factory.hpp>
#include <qseries/identities.hpp>
#include <qseries/series.hpp>

using namespace qseries;

namespace {

void BM_euler_product(benchmark::State &state) {
	std::int64_t order = state.range(0);
	for (auto _ : state)
		benchmark::DoNotOptimize(eulerq(1, order));
}
BENCHMARK(BM_euler_product)->Arg(100)->Arg(400)->Arg(1600);

void BM_series_mul(benchmark::State &state) {
	std::int64_t order = state.range(0);
	QSeries a = div(QSeries::constant(1, 1, order), eulerq(1, order));
	QSeries b = phi_neg_q(1, order);
	for (auto _ : state)
		benchmark::DoNotOptimize(mul(a, b));
}
BENCHMARK(BM_series_mul)->Arg(100)->Arg(400)->Arg(1600);

void BM_series_div(benchmark::State &state) {
	std::int64_t order = state.range(0);
	QSeries one = QSeries::constant(1, 1, order);
	QSeries e = eulerq(1, order);
	for (auto _ : state)
		benchmark::DoNotOptimize(div(one, e));
}
BENCHMARK(BM_series_div)->Arg(100)->Arg(400)->Arg(1600);

void BM_qbinomial_row(benchmark::State &state) {
	std::int64_t n = state.range(0);
	for (auto _ : state)
		benchmark::DoNotOptimize(qbinomial_row(n, 1, n * n + 1));
}
BENCHMARK(BM_qbinomial_row)->Arg(20)->Arg(40)->Arg(60);

void BM_h_series(benchmark::State &state) {
	std::int64_t order = state.range(0);
	for (auto _ : state)
		benchmark::DoNotOptimize(h_series(5, 1, order));
}
BENCHMARK(BM_h_series)->Arg(100)->Arg(400)->Arg(1600);

void BM_verify_mod24(benchmark::State &state) {
	const Identity *ident = find_identity("mod24");
	std::int64_t order = state.range(0);
	for (auto _ : state)
		benchmark::DoNotOptimize(verify(*ident, Params(), order));
}
BENCHMARK(BM_verify_mod24)->Arg(60)->Arg(120);

} // namespace
