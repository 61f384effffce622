#pragma once

#include <optional>
#include <string>
#include <vector>

namespace weyllab {

struct GridSpec {
    double lo = 0.0, hi = 0.0, step = 0.0;
    bool set = false;
};

struct WindowSpec {
    double lo = 0.0, hi = 0.0;
    bool set = false;
};

/// Flat key=value configuration with section prefixes (surface.*, run.*,
/// kernel.*, separation.*, phi.*, box.*, cache.*, out.*, model.*).
/// Unknown keys are rejected by name.
struct ExperimentConfig {
    std::string surface = "bolza"; // builtin name or generator-file path
    double T = 6.0;
    GridSpec Tgrid{3.5, 8.0, 0.25, true};
    double eps = 0.5;
    int kernelResolution = 4096;
    double kernelT0 = 0.0; // 0 = derive from geometry
    double deltaPrime = 0.0; // 0 = inj/4
    double B = 2.0;
    double phiAmplitude = 0.01;
    int phiDepth = 4;
    double phiRadius = 1.0;
    std::string outDir = "out";
    int threads = 1;
    bool cacheEnabled = true;
    WindowSpec window;       // fit window
    GridSpec lambdaGrid{50.0, 200.0, 50.0, true};
    std::string model = "circle:6.283185307179586";
    double boxTolerance = 0.5;

    /// Hash over the canonical serialization; used as the cache key component.
    std::string config_hash() const;
    std::string canonical_text() const;
};

GridSpec parse_grid_spec(const std::string& s);   // "a:b:step"
WindowSpec parse_window_spec(const std::string& s); // "a:b"

/// Parses flat key=value lines ('#' comments allowed); throws ConfigError
/// naming the first unknown key or invalid value.
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

/// Range checks against module preconditions.
void validate_config(const ExperimentConfig& cfg);

} // namespace weyllab
