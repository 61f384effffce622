// weyllab: numerical laboratory for length spectra, thermodynamic orbit sums,
// windowed trace functionals, resonance search, geodesic separation, and
// Riesz means on hyperbolic surfaces.

#include "weyllab/box_search.hpp"
#include "weyllab/config.hpp"
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

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace weyllab;

namespace {

GeneratorSet resolve_surface(const std::string& name) {
    if (name == "bolza") {
        GeneratorSet gs = bolza_surface();
        gs.validate();
        return gs;
    }
    return load_generator_file(name);
}

fs::path cache_dir(const ExperimentConfig& cfg) {
    if (const char* env = std::getenv("WEYLLAB_CACHE_DIR")) return fs::path(env);
    return fs::path(cfg.outDir) / ".cache";
}

LengthSpectrum spectrum_with_weights(const ExperimentConfig& cfg, const GeneratorSet& gs,
                                     double T) {
    SpectrumOptions sopts;
    sopts.threads = cfg.threads;
    fs::path dir = cache_dir(cfg);
    fs::path file = dir / (spectrum_cache_key(gs, T, sopts) + ".csv");
    if (cfg.cacheEnabled && fs::exists(file)) {
        LengthSpectrum ls = spectrum_from_csv(read_text_file(file.string()), gs, T);
        ls.certificate = "cache:" + file.filename().string();
        return ls;
    }
    LengthSpectrum ls = build_length_spectrum(gs, T, sopts);
    fill_poincare_data(ls, RiccatiOptions{}, cfg.threads);
    if (cfg.cacheEnabled) {
        fs::create_directories(dir);
        write_text_file(file.string(), spectrum_to_csv(ls));
    }
    return ls;
}

SpectrumData resolve_model(const std::string& spec, double rMax) {
    auto colon = spec.find(':');
    std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "circle") {
        double L = arg.empty() ? 2.0 * std::numbers::pi : std::stod(arg);
        return circle_spectrum(L, rMax);
    }
    if (kind == "sphere3") return sphere3_spectrum(rMax);
    if (kind == "torus") {
        std::vector<double> sides;
        std::istringstream is(arg);
        std::string tok;
        while (std::getline(is, tok, ',')) sides.push_back(std::stod(tok));
        if (sides.empty()) sides = {2.0 * std::numbers::pi, 2.0 * std::numbers::pi,
                                    2.0 * std::numbers::pi};
        return torus_spectrum(sides, rMax);
    }
    if (kind == "file") return load_spectrum_file(arg);
    throw ConfigError("unknown model.spectrum '" + spec + "'");
}

struct FitBundle {
    OrbitSumSeries series;
    ExponentFit pressure;
    ExponentFit entropy;
};

FitBundle fits_for(const ExperimentConfig& cfg, const GeneratorSet& gs) {
    double top = cfg.Tgrid.hi;
    LengthSpectrum ls = spectrum_with_weights(cfg, gs, top);
    FitBundle fb;
    fb.series = orbit_sums(ls, make_grid(cfg.Tgrid.lo, cfg.Tgrid.hi, cfg.Tgrid.step));
    double lo = cfg.window.set ? cfg.window.lo : ls.entries.front().length + 1.0;
    double hi = cfg.window.set ? cfg.window.hi : cfg.Tgrid.hi;
    fb.pressure = pressure_fit(fb.series, lo, hi);
    fb.entropy = entropy_fit(fb.series, lo, hi);
    return fb;
}

int cmd_spectrum(const ExperimentConfig& cfg) {
    GeneratorSet gs = resolve_surface(cfg.surface);
    LengthSpectrum ls = spectrum_with_weights(cfg, gs, cfg.T);
    fs::create_directories(cfg.outDir);
    write_text_file((fs::path(cfg.outDir) / "spectrum.csv").string(), spectrum_to_csv(ls));
    std::cout << "spectrum: " << ls.entries.size() << " oriented classes up to T=" << cfg.T
              << " (" << ls.certificate << ")\n";
    return 0;
}

int cmd_pressure(const ExperimentConfig& cfg) {
    GeneratorSet gs = resolve_surface(cfg.surface);
    FitBundle fb = fits_for(cfg, gs);
    fs::create_directories(cfg.outDir);
    write_text_file((fs::path(cfg.outDir) / "orbit_sums.csv").string(),
                    orbit_series_to_csv(fb.series));
    write_text_file((fs::path(cfg.outDir) / "pressure.json").string(),
                    fits_json(fb.pressure, fb.entropy, cfg.config_hash()));
    std::cout << "pressure slope " << format_sig(fb.pressure.slope, 6) << ", entropy slope "
              << format_sig(fb.entropy.slope, 6) << ", ratio "
              << format_sig(fb.pressure.slope / fb.entropy.slope, 6) << "\n";
    return 0;
}

int cmd_trace(const ExperimentConfig& cfg) {
    GeneratorSet gs = resolve_surface(cfg.surface);
    LengthSpectrum ls = spectrum_with_weights(cfg, gs, cfg.T);
    SmoothingKernel kern = SmoothingKernel::build(cfg.kernelResolution);
    double inj = ls.entries.empty() ? 1.0 : ls.entries.front().length / 2.0;
    TimeCutoff tc = cfg.kernelT0 > 0.0 ? TimeCutoff(cfg.kernelT0)
                                       : TimeCutoff::from_geometry(inj);
    double lamMax = cfg.lambdaGrid.hi;
    SpectrumData model = resolve_model(cfg.model, lamMax + kern.table_range() / cfg.T + 1.0);

    std::vector<double> grid = make_grid(cfg.lambdaGrid.lo, cfg.lambdaGrid.hi, cfg.lambdaGrid.step);
    std::vector<TraceRecord> recs(grid.size());
    parallel_for_chunks(grid.size(), cfg.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            TraceRecord r{};
            r.lambda = grid[i];
            r.T = cfg.T;
            r.kappa = kappa_spectral(model, kern, grid[i], cfg.T);
            r.sigma = sigma_geometric(ls, tc, kern, grid[i], cfg.T);
            CountingRemainders cr = counting_and_remainders(model, grid[i]);
            r.N = cr.N;
            r.R = cr.R;
            r.Rosc = cr.Rosc;
            recs[i] = r;
        }
    });
    fs::create_directories(cfg.outDir);
    write_text_file((fs::path(cfg.outDir) / "trace.json").string(), trace_records_json(recs));
    std::cout << "trace: " << recs.size() << " records written\n";
    return 0;
}

int cmd_box(const ExperimentConfig& cfg) {
    GeneratorSet gs = resolve_surface(cfg.surface);
    FitBundle fb = fits_for(cfg, gs);
    LengthSpectrum ls = spectrum_with_weights(cfg, gs, cfg.T);

    double inj = ls.entries.front().length / 2.0;
    TimeCutoff tc = cfg.kernelT0 > 0.0 ? TimeCutoff(cfg.kernelT0)
                                       : TimeCutoff::from_geometry(inj);
    ProofSchedule sched = schedule_parameters(cfg.T, cfg.eps, fb.entropy.slope,
                                              fb.pressure.slope);

    std::vector<double> lens;
    for (const auto& d : ls.distinct_lengths(cfg.T))
        if (d.length > tc.T0) lens.push_back(d.length);
    if (lens.empty()) throw WindowEmptyError("no distinct lengths in (T0, T]");
    ResonanceProblem rp = ResonanceProblem::from_lengths(lens, sched.M1, cfg.boxTolerance);
    ResonanceOptions ropts;
    ropts.threads = cfg.threads;
    ResonanceResult rr = find_resonant_lambda(rp, ropts);

    SmoothingKernel kern = SmoothingKernel::build(cfg.kernelResolution);
    double scale = kernel_scale_for_window(ls, tc, kern, cfg.T, cfg.eps);
    SmoothingKernel scaled = kern.scaled(scale);
    AmplitudeReport amp = amplitude_check(ls, rr.lambda, cfg.T, cfg.eps, tc, scaled,
                                          fb.pressure.slope);

    fs::create_directories(cfg.outDir);
    write_text_file((fs::path(cfg.outDir) / "box.json").string(),
                    box_report_json(sched, rr, amp, static_cast<int>(lens.size()),
                                    cfg.config_hash()));
    std::cout << "box: lambda=" << format_sig(rr.lambda, 9) << " maxPhase="
              << format_sig(rr.maxPhase, 6) << " Sigma=" << format_sig(amp.sigma, 6)
              << " >= " << format_sig(amp.rhs, 6) << (amp.pass ? " PASS" : " FAIL") << "\n";
    return amp.pass ? 0 : 2;
}

int cmd_riesz(const ExperimentConfig& cfg) {
    double lamMax = cfg.lambdaGrid.hi;
    SpectrumData model = resolve_model(cfg.model, lamMax + 1.0);
    std::vector<double> grid = make_grid(cfg.lambdaGrid.lo, cfg.lambdaGrid.hi, cfg.lambdaGrid.step);
    std::ostringstream os;
    os << "lambda,N,R,Rosc,R2R,R2R_over_lambda,l1avg\n";
    for (double lam : grid) {
        CountingRemainders cr = counting_and_remainders(model, lam);
        double r2 = riesz_remainder(model, lam, 2);
        double l1 = l1_average_remainder(model, lam);
        os << format_sig(lam) << ',' << cr.N << ',' << format_sig(cr.R) << ','
           << format_sig(cr.Rosc) << ',' << format_sig(r2) << ',' << format_sig(r2 / lam) << ','
           << format_sig(l1) << "\n";
    }
    fs::create_directories(cfg.outDir);
    write_text_file((fs::path(cfg.outDir) / "riesz.csv").string(), os.str());
    std::cout << "riesz: " << grid.size() << " rows for model " << cfg.model << "\n";
    return 0;
}

int cmd_separation(const ExperimentConfig& cfg) {
    GeneratorSet gs = resolve_surface(cfg.surface);
    LengthSpectrum ls = spectrum_with_weights(cfg, gs, cfg.T);
    double inj = ls.entries.front().length / 2.0;
    double dp = cfg.deltaPrime > 0.0 ? cfg.deltaPrime : inj / 4.0;
    SeparationOptions sopts;
    sopts.threads = cfg.threads;
    SeparationReport rep = separation_report(ls, cfg.T, dp, cfg.B, inj, 1.0, sopts);
    fs::create_directories(cfg.outDir);
    write_text_file((fs::path(cfg.outDir) / "separation.json").string(),
                    separation_report_json(rep, cfg.T, dp, cfg.B));
    std::cout << "separation: min=" << format_sig(rep.minDistance, 6)
              << " threshold=" << format_sig(rep.threshold, 6)
              << (rep.pass ? " PASS" : " FAIL") << "\n";
    return rep.pass ? 0 : 2;
}

int cmd_report(const ExperimentConfig& cfg) {
    GeneratorSet gs = resolve_surface(cfg.surface);
    FitBundle fb = fits_for(cfg, gs);
    fs::create_directories(cfg.outDir);
    write_text_file((fs::path(cfg.outDir) / "orbit_sums.csv").string(),
                    orbit_series_to_csv(fb.series));
    write_text_file((fs::path(cfg.outDir) / "pressure.json").string(),
                    fits_json(fb.pressure, fb.entropy, cfg.config_hash()));
    // gnuplot-ready columns: T  lnS  ln(count*T)
    std::ostringstream plot;
    plot << "# T lnS lncountT\n";
    for (std::size_t i = 0; i < fb.series.T.size(); ++i) {
        if (fb.series.S[i] <= 0.0 || fb.series.counts[i] <= 0) continue;
        plot << format_sig(fb.series.T[i]) << ' ' << format_sig(std::log(fb.series.S[i])) << ' '
             << format_sig(std::log(static_cast<double>(fb.series.counts[i]) * fb.series.T[i]))
             << "\n";
    }
    write_text_file((fs::path(cfg.outDir) / "plot_orbit_sums.dat").string(), plot.str());

    JsonWriter w;
    w.begin();
    w.key("surface").value(cfg.surface);
    w.key("configHash").value(cfg.config_hash());
    w.key("pressureSlope").value(fb.pressure.slope);
    w.key("entropySlope").value(fb.entropy.slope);
    w.key("exponentRatio").value(fb.pressure.slope / fb.entropy.slope);
    w.key("entries").value(static_cast<long>(fb.series.counts.back()));
    w.end();
    write_text_file((fs::path(cfg.outDir) / "report.json").string(), w.str() + "\n");
    std::cout << "report written to " << cfg.outDir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weyllab: length spectra, orbit sums, trace windows, resonance search"};
    app.require_subcommand(1);
    app.fallthrough(true);

    ExperimentConfig cfg;
    std::string configPath;
    std::string tgrid, window, lambdaGrid;
    bool noCache = false;

    app.add_option("--config", configPath, "key=value config file");
    app.add_option("--surface", cfg.surface, "builtin name (bolza) or generator file");
    app.add_option("--T", cfg.T, "length cutoff");
    app.add_option("--Tgrid", tgrid, "orbit-sum grid a:b:step");
    app.add_option("--eps", cfg.eps, "epsilon of the proof schedule");
    app.add_option("--window", window, "fit window a:b");
    app.add_option("--lambda-grid", lambdaGrid, "spectral grid a:b:step");
    app.add_option("--threads", cfg.threads, "worker thread count");
    app.add_flag("--no-cache", noCache, "disable the spectrum cache");
    app.add_option("--out", cfg.outDir, "output directory");
    app.add_option("--model", cfg.model, "model spectrum (circle:L | torus:a,b,c | sphere3 | file:path)");
    app.add_option("--B", cfg.B, "separation exponent B");
    app.add_option("--delta-prime", cfg.deltaPrime, "separation window width (0 = inj/4)");

    app.add_subcommand("spectrum", "build and cache the length spectrum with det terms");
    app.add_subcommand("pressure", "orbit sums and pressure/entropy fits");
    app.add_subcommand("trace", "kappa/Sigma evaluations over a lambda grid");
    app.add_subcommand("box", "parameter schedule, resonance search, amplitude check");
    app.add_subcommand("riesz", "Riesz-mean tables for a model spectrum");
    app.add_subcommand("separation", "pairwise Sasaki separation report");
    app.add_subcommand("report", "aggregate JSON/CSV/plot artifacts");

    try {
        app.parse(argc, argv);
        if (!configPath.empty()) cfg = load_config_file(configPath, cfg);
        if (!tgrid.empty()) cfg.Tgrid = parse_grid_spec(tgrid);
        if (!window.empty()) cfg.window = parse_window_spec(window);
        if (!lambdaGrid.empty()) cfg.lambdaGrid = parse_grid_spec(lambdaGrid);
        if (noCache) cfg.cacheEnabled = false;
        validate_config(cfg);

        std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "spectrum") return cmd_spectrum(cfg);
        if (sub == "pressure") return cmd_pressure(cfg);
        if (sub == "trace") return cmd_trace(cfg);
        if (sub == "box") return cmd_box(cfg);
        if (sub == "riesz") return cmd_riesz(cfg);
        if (sub == "separation") return cmd_separation(cfg);
        if (sub == "report") return cmd_report(cfg);
        return 3;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
