#include <benchmark/benchmark.h>

#include <fgl/fgl.hpp>
#include <fgl/grouprings.hpp>
#include <fgl/weierstrass.hpp>

using namespace fgl;

namespace
{

CoeffRingPtr lt_ring()
{
    return CoeffRing::make(CoeffRingSpec::truncated(2, 8, 1, 6));
}

} // namespace

static void BM_SeriesMultiply(benchmark::State &state)
{
    const int cap = static_cast<int>(state.range(0));
    auto R = lt_ring();
    auto f = series_zero(R, {"x", "y"}, cap);
    for (int i = 0; i < cap; ++i) {
        for (int j = 0; i + j < cap; ++j) {
            f.add_term(Monomial{i, j}, CoeffElem(R, 3 * i + j + 1) + CoeffElem::u(R, 0).scaled(i + 2 * j));
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(f * f);
    }
}
BENCHMARK(BM_SeriesMultiply)->Arg(8)->Arg(12)->Arg(16);

static void BM_LubinTateConstruction(benchmark::State &state)
{
    auto R = lt_ring();
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_lubin_tate_height2(R, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_LubinTateConstruction)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_NSeries(benchmark::State &state)
{
    const auto F = make_lubin_tate_height2(lt_ring(), 20);
    for (auto _ : state) {
        benchmark::DoNotOptimize(n_series(F, state.range(0)));
    }
}
BENCHMARK(BM_NSeries)->Arg(2)->Arg(4)->Arg(27)->Unit(benchmark::kMillisecond);

static void BM_PrepareLubinTate(benchmark::State &state)
{
    const auto F = make_lubin_tate_height2(lt_ring(), 20);
    const auto f = n_series(F, state.range(0)).series;
    for (auto _ : state) {
        benchmark::DoNotOptimize(weierstrass_prepare(f));
    }
}
BENCHMARK(BM_PrepareLubinTate)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_LevelRing(benchmark::State &state)
{
    const AbelianPType A(std::vector<int>(static_cast<std::size_t>(state.range(0)), 1));
    const auto spec = CoeffRingSpec::truncated(2, 4, 1, 3);
    const auto F = make_lubin_tate_height2(CoeffRing::make(spec), recommended_trunc(spec, 2, A));
    for (auto _ : state) {
        benchmark::DoNotOptimize(level_ring(F, A));
    }
}
BENCHMARK(BM_LevelRing)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_CyclotomicLevelRing(benchmark::State &state)
{
    const AbelianPType A({static_cast<int>(state.range(0))});
    const auto spec = CoeffRingSpec::exact(3);
    const auto F = make_multiplicative(CoeffRing::make(spec), recommended_trunc(spec, 1, A));
    for (auto _ : state) {
        benchmark::DoNotOptimize(level_ring(F, A));
    }
}
BENCHMARK(BM_CyclotomicLevelRing)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
