#include "hhks/deformation.hpp"
#include "hhks/family.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace hhks;

namespace {

const Registry &registry() {
    static const Registry reg = load_registry(HHKS_BENCH_REGISTRY);
    return reg;
}

const FamilySpec &family(const std::string &name) { return registry().find(name)->spec; }

const std::vector<std::string> kFamilies = {"B", "kq", "sklyanin", "polynomial", "sl2", "cext_s2"};

Mat random_matrix(std::size_t n, const CyclotomicField &F, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    Mat m(F, n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<mpq_class> coeffs;
            for (std::size_t k = 0; k < F.degree(); ++k) {
                mpq_class q(num(rng), den(rng));
                q.canonicalize();
                coeffs.push_back(q);
            }
            m(r, c) = FieldElement(F, std::move(coeffs));
        }
    return m;
}

void BM_RankRational(benchmark::State &state) {
    const Mat m = random_matrix(static_cast<std::size_t>(state.range(0)),
                                CyclotomicField::rationals(), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RankRational)->Arg(16)->Arg(32);

void BM_RankCyclotomic(benchmark::State &state) {
    const Mat m = random_matrix(static_cast<std::size_t>(state.range(0)), CyclotomicField::get(12), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RankCyclotomic)->Arg(8)->Arg(16);

void BM_QuadraticDual(benchmark::State &state) {
    const FamilySpec &f = family(kFamilies[static_cast<std::size_t>(state.range(0))]);
    const QuadraticAlgebra a = evaluate_family(f, default_point(f));
    state.SetLabel(f.name);
    for (auto _ : state)
        benchmark::DoNotOptimize(quadratic_dual(a));
}
BENCHMARK(BM_QuadraticDual)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_Cohomology(benchmark::State &state) {
    const FamilySpec &f = family(kFamilies[static_cast<std::size_t>(state.range(0))]);
    const QuadraticAlgebra a = evaluate_family(f, default_point(f));
    state.SetLabel(f.name);
    for (auto _ : state) {
        const Fibre fibre = build_fibre(a);
        benchmark::DoNotOptimize(cohomology_dims(fibre.strand));
    }
}
BENCHMARK(BM_Cohomology)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_KSReport(benchmark::State &state) {
    const FamilySpec &f = family(kFamilies[static_cast<std::size_t>(state.range(0))]);
    const Point p = default_point(f);
    state.SetLabel(f.name);
    for (auto _ : state)
        benchmark::DoNotOptimize(ks_report(f, p));
}
BENCHMARK(BM_KSReport)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_SkewOracle(benchmark::State &state) {
    std::vector<FieldElement> upper;
    for (long v : {2, 3, 5, 7, 11, 13})
        upper.push_back(CyclotomicField::rationals().from_int(v));
    const SkewParams q(CyclotomicField::rationals(), 4, upper);
    for (auto _ : state)
        benchmark::DoNotOptimize(skew_oracle(q));
}
BENCHMARK(BM_SkewOracle)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
