#include "weyllab/box_search.hpp"
#include "weyllab/fuchsian.hpp"
#include "weyllab/geodesics.hpp"
#include "weyllab/kernel.hpp"
#include "weyllab/riccati.hpp"
#include "weyllab/separation.hpp"
#include "weyllab/trace_sums.hpp"

#include <benchmark/benchmark.h>

using namespace weyllab;

namespace {

const GeneratorSet& gs() {
    static GeneratorSet g = bolza_surface();
    return g;
}

const LengthSpectrum& spectrum6() {
    static LengthSpectrum ls = [] {
        LengthSpectrum s = build_length_spectrum(gs(), 6.0);
        fill_poincare_data(s, RiccatiOptions{}, 2);
        return s;
    }();
    return ls;
}

const SmoothingKernel& kernel() {
    static SmoothingKernel k = SmoothingKernel::build(4096, 256.0);
    return k;
}

void BM_HypDistance(benchmark::State& state) {
    PlanePoint p(0.3, 1.2), q(-1.1, 0.4);
    for (auto _ : state) benchmark::DoNotOptimize(hyp_distance(p, q));
}
BENCHMARK(BM_HypDistance);

void BM_SasakiDistance(benchmark::State& state) {
    UnitTangent u(PlanePoint(0.3, 1.2), 0.7), v(PlanePoint(-1.1, 0.4), 2.1);
    for (auto _ : state) benchmark::DoNotOptimize(sasaki_distance(u, v));
}
BENCHMARK(BM_SasakiDistance);

void BM_OrbitBall(benchmark::State& state) {
    double radius = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(orbit_ball(gs(), radius).size());
}
BENCHMARK(BM_OrbitBall)->Arg(8)->Arg(10)->Arg(11);

void BM_LengthSpectrum(benchmark::State& state) {
    double T = static_cast<double>(state.range(0));
    for (auto _ : state) {
        LengthSpectrum ls = build_length_spectrum(gs(), T);
        benchmark::DoNotOptimize(ls.entries.size());
    }
}
BENCHMARK(BM_LengthSpectrum)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_RiccatiIntegrate(benchmark::State& state) {
    ConformalMetric base = ConformalMetric::base();
    ClosedGeodesic axis = axis_geodesic(gs().generators[0], 256);
    for (auto _ : state) benchmark::DoNotOptimize(integrate_unstable(base, axis).detTerm);
}
BENCHMARK(BM_RiccatiIntegrate)->Unit(benchmark::kMicrosecond);

void BM_SigmaGeometric(benchmark::State& state) {
    const LengthSpectrum& ls = spectrum6();
    TimeCutoff tc = TimeCutoff::from_geometry(ls.entries.front().length / 2.0);
    double lambda = 100.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sigma_geometric(ls, tc, kernel(), lambda, 6.0));
        lambda += 0.001;
    }
}
BENCHMARK(BM_SigmaGeometric)->Unit(benchmark::kMicrosecond);

void BM_KappaCircle(benchmark::State& state) {
    SpectrumData c = circle_spectrum(2.0 * std::numbers::pi, 160.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(kappa_spectral(c, kernel(), 100.0, 10.0));
}
BENCHMARK(BM_KappaCircle)->Unit(benchmark::kMicrosecond);

void BM_ResonanceScan(benchmark::State& state) {
    std::vector<double> lens;
    for (const auto& d : spectrum6().distinct_lengths(6.0)) lens.push_back(d.length);
    for (auto _ : state) {
        ResonanceProblem rp = ResonanceProblem::from_lengths(lens, 50.0);
        benchmark::DoNotOptimize(find_resonant_lambda(rp).lambda);
    }
}
BENCHMARK(BM_ResonanceScan)->Unit(benchmark::kMicrosecond);

void BM_RefineGeodesic(benchmark::State& state) {
    ConformalMetric base = ConformalMetric::base();
    ClosedGeodesic axis = axis_geodesic(gs().generators[0], 256);
    RefineOptions opts;
    opts.samplesPerUnitLength = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(refine_closed_geodesic(base, axis, opts).length);
}
BENCHMARK(BM_RefineGeodesic)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
