// Serial-vs-parallel comparison of the hot kernels: the sector matvec and
// the diagonal build. Run with --benchmark_filter=... to narrow.

#include <complex>
#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "qwgi/hilbert.hpp"
#include "qwgi/rng.hpp"

using namespace qwgi;
using cplx = std::complex<double>;

namespace {

const ScheduleHamiltonian& ham_for(int n)
{
    static std::vector<std::unique_ptr<ScheduleHamiltonian>> cache(13);
    if (!cache[n]) {
        const GiInstance inst = n >= 6 ? random_instance(n, 7)
                                       : GiInstance(Graph::path(n), Graph::path(n));
        cache[n] = std::make_unique<ScheduleHamiltonian>(inst);
    }
    return *cache[n];
}

std::vector<cplx> random_state(std::uint64_t dim)
{
    Rng rng(3);
    std::vector<cplx> psi(dim);
    for (auto& a : psi)
        a = cplx(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    return psi;
}

void bm_apply_hi_serial(benchmark::State& state)
{
    const auto& ham = ham_for(static_cast<int>(state.range(0)));
    const auto in = random_state(ham.index().dim());
    std::vector<cplx> out(in.size());
    for (auto _ : state) {
        ham.apply_hi_serial<cplx>(in, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()));
}

void bm_apply_hi_parallel(benchmark::State& state)
{
    const auto& ham = ham_for(static_cast<int>(state.range(0)));
    const auto in = random_state(ham.index().dim());
    std::vector<cplx> out(in.size());
    for (auto _ : state) {
        ham.apply_hi<cplx>(in, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()));
}

void bm_diag_serial(benchmark::State& state)
{
    const auto& ham = ham_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto d = build_diagonal_serial(ham.index(), ham.pair_penalty());
        benchmark::DoNotOptimize(d.data());
    }
}

void bm_diag_parallel(benchmark::State& state)
{
    const auto& ham = ham_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto d = build_diagonal_parallel(ham.index(), ham.pair_penalty());
        benchmark::DoNotOptimize(d.data());
    }
}

} // namespace

BENCHMARK(bm_apply_hi_serial)->Arg(5)->Arg(6)->Arg(7);
BENCHMARK(bm_apply_hi_parallel)->Arg(5)->Arg(6)->Arg(7);
BENCHMARK(bm_diag_serial)->Arg(6)->Arg(7);
BENCHMARK(bm_diag_parallel)->Arg(6)->Arg(7);

BENCHMARK_MAIN();
