// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 10 reruns the computations of 1-9 at thread counts 1 and
// 8 and requires byte-identical serialized artifacts.

#include "weyllab/box_search.hpp"
#include "weyllab/errors.hpp"
#include "weyllab/geodesics.hpp"
#include "weyllab/kernel.hpp"
#include "weyllab/reports.hpp"
#include "weyllab/riccati.hpp"
#include "weyllab/riesz.hpp"
#include "weyllab/separation.hpp"
#include "weyllab/spectra.hpp"
#include "weyllab/thermo.hpp"
#include "weyllab/trace_sums.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

using namespace weyllab;

namespace {

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

struct Artifacts {
    CriterionResult crit[10];
    std::string serialized[9]; // criteria 1..9 artifacts for the determinism check
};

double rel_dev(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

Artifacts run_all(int threads) {
    Artifacts art;
    const GeneratorSet gs = bolza_surface();
    gs.validate();

    // --- shared state ---
    SpectrumOptions sopts;
    sopts.threads = threads;
    LengthSpectrum ls8 = build_length_spectrum(gs, 8.0, sopts);
    fill_poincare_data(ls8, RiccatiOptions{}, threads);
    const double systole = ls8.entries.front().length;
    const double inj = systole / 2.0;
    SmoothingKernel kern = SmoothingKernel::build(4096, 256.0);
    TimeCutoff tc = TimeCutoff::from_geometry(inj);

    // --- 1 & 2: pressure and entropy exponents ---
    OrbitSumSeries series = orbit_sums(ls8, make_grid(3.5, 8.0, 0.25));
    ExponentFit pres = pressure_fit(series, 3.5, 8.0);
    ExponentFit entr = entropy_fit(series, 4.0, 8.0);
    {
        std::ostringstream d;
        d << "slope=" << format_sig(pres.slope, 4) << " target 0.5+-0.1";
        art.crit[0] = {std::fabs(pres.slope - 0.5) <= 0.1, d.str()};
    }
    {
        double ratio = pres.slope / entr.slope;
        std::ostringstream d;
        d << "slope=" << format_sig(entr.slope, 4) << " (ln(count*T) fit) target 1.0+-0.15"
          << ", ratio=" << format_sig(ratio, 4) << " in [0.38,0.62]";
        art.crit[1] = {std::fabs(entr.slope - 1.0) <= 0.15 && ratio >= 0.38 && ratio <= 0.62,
                       d.str()};
    }
    art.serialized[0] = orbit_series_to_csv(series);
    art.serialized[1] = fits_json(pres, entr, "acceptance");

    // --- 3: Riccati determinant term vs the constant-curvature closed form ---
    {
        double worst = 0.0;
        for (const auto& e : ls8.entries) {
            double sh = std::sinh(e.length / 2.0);
            worst = std::max(worst, rel_dev(e.detTerm, 4.0 * sh * sh));
        }
        std::ostringstream d;
        d << "max relative deviation " << format_sig(worst, 3) << " over "
          << ls8.entries.size() << " geodesics, tol 1e-6";
        art.crit[2] = {worst <= 1e-6, d.str()};
        art.serialized[2] = spectrum_to_csv(ls8);
    }

    // --- 4: circle trace vs the Poisson closed form ---
    {
        double L = 2.0 * std::numbers::pi;
        double worst = 0.0;
        std::ostringstream ser;
        for (double lambda : {50.0, 100.0, 200.0}) {
            for (double T : {5.0, 10.0}) {
                SpectrumData c = circle_spectrum(L, lambda + kern.table_range() / T + 1.0);
                double diff = std::fabs(kappa_spectral(c, kern, lambda, T) -
                                        poisson_oracle_circle(kern, L, lambda, T));
                worst = std::max(worst, diff);
                ser << format_sig(diff) << "\n";
            }
        }
        std::ostringstream d;
        d << "max |kappa - oracle| = " << format_sig(worst, 3) << ", tol 1e-6";
        art.crit[3] = {worst < 1e-6, d.str()};
        art.serialized[3] = ser.str();
    }

    // --- 5: resonance search and amplitude inequality at T = 4.5 ---
    {
        const double T = 4.5, eps = 0.5;
        ProofSchedule sched = schedule_parameters(T, eps, entr.slope, pres.slope);
        std::vector<double> lens;
        for (const auto& dl : ls8.distinct_lengths(T))
            if (dl.length > tc.T0) lens.push_back(dl.length);
        ResonanceProblem rp = ResonanceProblem::from_lengths(lens, sched.M1, 0.5);
        ResonanceOptions ropts;
        ropts.threads = threads;
        ResonanceResult rr = find_resonant_lambda(rp, ropts);
        double phase = max_phase_distance(rr.lambda, lens); // independent check
        double scale = kernel_scale_for_window(ls8, tc, kern, T, eps);
        AmplitudeReport amp =
            amplitude_check(ls8, rr.lambda, T, eps, tc, kern.scaled(scale), pres.slope);
        bool ok = phase <= 0.5 && rr.lambda >= sched.M1 - 1e-9 &&
                  rr.lambda <= rp.cap + 1e-9 && amp.pass;
        std::ostringstream d;
        d << "lambda=" << format_sig(rr.lambda, 8) << " in [" << format_sig(sched.M1, 6) << ","
          << format_sig(rp.cap, 6) << "], maxPhase=" << format_sig(phase, 4)
          << ", Sigma=" << format_sig(amp.sigma, 4) << " >= " << format_sig(amp.rhs, 4);
        art.crit[4] = {ok, d.str()};
        art.serialized[4] =
            box_report_json(sched, rr, amp, static_cast<int>(lens.size()), "acceptance");
    }

    // --- 6: separation at T = 6 ---
    {
        SeparationOptions sep;
        sep.threads = threads;
        SeparationReport rep = separation_report(ls8, 6.0, inj / 4.0, 2.0, inj, 1.0, sep);
        std::ostringstream d;
        d << "min=" << format_sig(rep.minDistance, 4) << " over " << rep.pairCount
          << " pairs, threshold=" << format_sig(rep.threshold, 4);
        art.crit[5] = {rep.pass && !rep.emptyWindow, d.str()};
        art.serialized[5] = separation_report_json(rep, 6.0, inj / 4.0, 2.0);
    }

    // --- 7: Riesz means on the sphere and the flat torus ---
    {
        SpectrumData s3 = sphere3_spectrum(455.0);
        std::vector<double> vals;
        std::ostringstream ser;
        for (double lam = 100.0; lam <= 400.0; lam += 25.0) {
            vals.push_back(riesz_remainder(s3, lam, 2) / lam);
            ser << format_sig(vals.back()) << "\n";
        }
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(vals.size());
        double var = 0.0;
        for (double v : vals) var += (v - mean) * (v - mean);
        double rsd = std::sqrt(var / static_cast<double>(vals.size())) / std::fabs(mean);

        double side = 2.0 * std::numbers::pi;
        SpectrumData t3 = torus_spectrum({side, side, side}, 410.0);
        double early = std::fabs(riesz_remainder(t3, 50.0, 2)) / 50.0;
        double late = std::fabs(riesz_remainder(t3, 400.0, 2)) / 400.0;
        ser << format_sig(early) << "\n" << format_sig(late) << "\n";

        bool ok = rsd < 0.10 && std::fabs(mean) > 1e-3 && late < 0.1 * early &&
                  t3.heatA1() == 0.0;
        std::ostringstream d;
        d << "S3 R2R/lambda mean=" << format_sig(mean, 4) << " rsd=" << format_sig(rsd, 3)
          << "; torus |R2R|/lambda " << format_sig(late, 3) << " < 0.1 * "
          << format_sig(early, 3);
        art.crit[6] = {ok, d.str()};
        art.serialized[6] = ser.str();
    }

    // --- 8: variable-curvature pipeline ---
    {
        // (a) flat refinement reproduces axes
        ConformalMetric base = ConformalMetric::base();
        RefineOptions ropts;
        ropts.samplesPerUnitLength = 512;
        double axisDev = 0.0;
        for (int gi = 0; gi < 3; ++gi) {
            ClosedGeodesic refined =
                refine_closed_geodesic(base, axis_geodesic(gs.generators[gi], 128), ropts);
            for (const auto& u : refined.samples)
                axisDev = std::max(axisDev, distance_to_axis(gs.generators[gi], u.base));
        }

        // certified-pinched perturbation
        double maxDisp = hyp_distance(apply_moebius(gs.generators[0], PlanePoint(0, 1)),
                                      PlanePoint(0, 1));
        auto ball = orbit_ball(gs, 4 * maxDisp + 1e-9);
        std::vector<PlanePoint> centers;
        for (const auto& e : ball)
            if (e.word.size() <= 4) centers.push_back(apply_moebius(e.m, PlanePoint(0.0, 1.0)));
        ConformalMetric pm{std::make_shared<BumpSeriesPhi>(centers, 1.0, 0.01), 0.0, 0.0};
        PinchingBounds pb = pinching_bounds(pm, metric_sample_grid(2.6, 96));
        pm.K1 = pb.K1emp;
        pm.K2 = pb.K2emp;

        // (b) eigenvalue band for every geodesic with refined length <= 6;
        // 256 samples/unit keeps lengths accurate to ~1e-5 against band
        // margins of ~0.2 (the step-halving oracle in the unit tests covers
        // the discretization claim at the full density)
        RefineOptions sweep;
        sweep.samplesPerUnitLength = 256;
        LengthSpectrum ls62 = build_length_spectrum(gs, 6.2, sopts);
        std::vector<double> Lm(ls62.entries.size()), logMu(ls62.entries.size()),
            Lsharp(ls62.entries.size());
        parallel_for_chunks(ls62.entries.size(), threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                ClosedGeodesic refined = refine_closed_geodesic(
                    pm, axis_geodesic(ls62.entries[i].element, 256), sweep);
                Lm[i] = refined.length;
                logMu[i] = integrate_unstable(pm, refined).logMu;
            }
        });
        bool band = true;
        int counted = 0;
        double worstSlack = 0.0;
        for (std::size_t i = 0; i < Lm.size(); ++i) {
            Lsharp[i] = Lm[i] / ls62.entries[i].power;
            if (Lm[i] > 6.0) continue;
            ++counted;
            band = band && logMu[i] >= pm.K2 * Lm[i] - 1e-9 && logMu[i] <= pm.K1 * Lm[i] + 1e-9;
            worstSlack = std::max(worstSlack, std::max(pm.K2 * Lm[i] - logMu[i],
                                                       logMu[i] - pm.K1 * Lm[i]));
        }

        // (c) exponent ratio against the pinching bound
        std::vector<WeightedLength> rows;
        for (std::size_t i = 0; i < Lm.size(); ++i) {
            double mu = std::exp(logMu[i]);
            rows.push_back({Lm[i], Lsharp[i], mu - 2.0 + 1.0 / mu});
        }
        OrbitSumSeries pseries = orbit_sums_rows(rows, make_grid(3.5, 6.0, 0.25));
        ExponentFit pp = pressure_fit(pseries, 3.5, 6.0);
        ExponentFit ph = entropy_fit(pseries, 3.5, 6.0);
        double ratio = pp.slope / ph.slope;
        double bound = pm.K2 / (2.0 * pm.K1) - 0.05;

        bool ok = axisDev <= 1e-8 && band && counted > 0 && ratio >= bound;
        std::ostringstream d;
        d << "axisDev=" << format_sig(axisDev, 3) << ", band ok=" << band << " ("
          << counted << " geodesics, slack " << format_sig(worstSlack, 3)
          << "), ratio=" << format_sig(ratio, 4) << " >= " << format_sig(bound, 4)
          << " [K1=" << format_sig(pm.K1, 5) << " K2=" << format_sig(pm.K2, 5) << "]";
        art.crit[7] = {ok, d.str()};
        std::ostringstream ser;
        ser << format_sig(pm.K1, 12) << " " << format_sig(pm.K2, 12) << "\n";
        for (std::size_t i = 0; i < Lm.size(); ++i)
            ser << format_sig(Lm[i]) << " " << format_sig(logMu[i]) << "\n";
        ser << fits_json(pp, ph, "acceptance-perturbed");
        art.serialized[7] = ser.str();
    }

    // --- 9: kernel admissibility ---
    {
        double worstRho = 0.0, worstHat = 0.0;
        for (double x = 0.0; x <= kern.table_range(); x += 1.0 / 128.0)
            worstRho = std::min(worstRho, kern.rho(x));
        for (double s = 1.0 + 1e-9; s < 3.0; s += 1e-3)
            worstHat = std::max(worstHat, std::fabs(kern.rho_hat(s)));
        bool ok = worstRho >= -1e-12 && worstHat < 1e-10;
        std::ostringstream d;
        d << "min rho = " << format_sig(worstRho, 3) << " (>= -1e-12), sup |rhoHat| beyond 1 = "
          << format_sig(worstHat, 3) << " (< 1e-10)";
        art.crit[8] = {ok, d.str()};
        std::ostringstream ser;
        for (double x : {0.0, 1.0, 5.0, 25.0, 125.0}) ser << format_sig(kern.rho(x)) << "\n";
        art.serialized[8] = ser.str();
    }

    return art;
}

} // namespace

int main() {
    const char* names[10] = {
        "constant-curvature pressure exponent",
        "entropy exponent and pressure/entropy ratio",
        "Poincare determinant vs 4 sinh^2(L/2)",
        "circle trace vs Poisson closed form",
        "resonance search and amplitude inequality",
        "pairwise Sasaki separation",
        "Riesz means: sphere stability and torus null test",
        "variable curvature: axes, eigenvalue band, exponent ratio",
        "kernel admissibility",
        "byte determinism across thread counts 1 and 8",
    };

    int failures = 0;
    try {
        auto t0 = std::chrono::steady_clock::now();
        Artifacts one = run_all(1);
        auto t1 = std::chrono::steady_clock::now();
        Artifacts eight = run_all(8);
        auto t2 = std::chrono::steady_clock::now();

        bool det = true;
        std::string which;
        for (int i = 0; i < 9; ++i)
            if (one.serialized[i] != eight.serialized[i]) {
                det = false;
                which += " " + std::to_string(i + 1);
            }
        one.crit[9].pass = det;
        one.crit[9].detail = det ? "all serialized artifacts identical"
                                 : "criteria" + which + " differ between thread counts";

        for (int i = 0; i < 10; ++i) {
            bool p = one.crit[i].pass;
            if (!p) ++failures;
            std::printf("[%s] %02d %s: %s\n", p ? "PASS" : "FAIL", i + 1, names[i],
                        one.crit[i].detail.c_str());
        }
        std::printf("acceptance: %d/10 passed (threads=1 run %.1fs, threads=8 run %.1fs)\n",
                    10 - failures,
                    std::chrono::duration<double>(t1 - t0).count(),
                    std::chrono::duration<double>(t2 - t1).count());
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance aborted: %s\n", e.what());
        return 1;
    }
    return failures == 0 ? 0 : 1;
}
