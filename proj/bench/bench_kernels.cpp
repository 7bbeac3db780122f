#include <benchmark/benchmark.h>
#include <omp.h>

#include <memory>
#include <vector>

#include "gdicke/basis.hpp"
#include "gdicke/hamiltonian.hpp"
#include "gdicke/model.hpp"
#include "gdicke/symmetry.hpp"

namespace {

using namespace gdicke;

struct fixture {
    model m = model::validate(presets::xi(4, 2.0, 4.0));
    symmetry_set sym = find_constants(m);
    basis b = build_truncated({{0, 0}, {78, 50}, {24, 50}, cutoff_rule::excitation}, m, sym);
    sparse_hamiltonian h = assemble_serial(b, m, model_kind::dicke);
};

const fixture& shared() {
    static fixture f;
    return f;
}

void bm_matvec_serial(benchmark::State& st) {
    const auto& f = shared();
    std::vector<double> x(f.h.dim, 1.0), y(f.h.dim);
    for (auto _ : st) {
        matvec_serial(f.h, x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
    st.SetItemsProcessed(st.iterations() * f.h.nnz());
}

void bm_matvec_omp(benchmark::State& st) {
    const auto& f = shared();
    omp_set_num_threads(static_cast<int>(st.range(0)));
    std::vector<double> x(f.h.dim, 1.0), y(f.h.dim);
    for (auto _ : st) {
        matvec(f.h, x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
    st.SetItemsProcessed(st.iterations() * f.h.nnz());
}

void bm_assemble_serial(benchmark::State& st) {
    const auto& f = shared();
    for (auto _ : st) benchmark::DoNotOptimize(build_pattern_serial(f.b, f.m, model_kind::dicke));
}

void bm_assemble_omp(benchmark::State& st) {
    const auto& f = shared();
    omp_set_num_threads(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(build_pattern(f.b, f.m, model_kind::dicke));
}

}  // namespace

BENCHMARK(bm_matvec_serial);
BENCHMARK(bm_matvec_omp)->Arg(1)->Arg(2)->Arg(4);
BENCHMARK(bm_assemble_serial);
BENCHMARK(bm_assemble_omp)->Arg(1)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
