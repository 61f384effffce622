#include "weyllab/config.hpp"

#include "weyllab/errors.hpp"
#include "weyllab/numerics.hpp"

#include <fstream>
#include <sstream>

namespace weyllab {

GridSpec parse_grid_spec(const std::string& s) {
    GridSpec g;
    std::istringstream is(s);
    char c1, c2;
    if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':')
        throw ConfigError("bad grid spec '" + s + "', expected a:b:step");
    if (!(g.step > 0.0) || g.hi < g.lo) throw ConfigError("bad grid range '" + s + "'");
    g.set = true;
    return g;
}

WindowSpec parse_window_spec(const std::string& s) {
    WindowSpec w;
    std::istringstream is(s);
    char c1;
    if (!(is >> w.lo >> c1 >> w.hi) || c1 != ':')
        throw ConfigError("bad window spec '" + s + "', expected a:b");
    if (w.hi <= w.lo) throw ConfigError("bad window range '" + s + "'");
    w.set = true;
    return w;
}

namespace {

std::string grid_text(const GridSpec& g) {
    return format_sig(g.lo, 17) + ":" + format_sig(g.hi, 17) + ":" + format_sig(g.step, 17);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for key '" + key + "': '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        int x = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer value for key '" + key + "': '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw ConfigError("invalid boolean value for key '" + key + "': '" + v + "'");
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig cfg) {
    std::istringstream is(text);
    std::string line;
    long lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // trim
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineNo) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string s) {
            auto b2 = s.find_first_not_of(" \t");
            auto e2 = s.find_last_not_of(" \t");
            if (b2 == std::string::npos) return std::string();
            return s.substr(b2, e2 - b2 + 1);
        };
        key = trim(key);
        val = trim(val);

        if (key == "surface.name") cfg.surface = val;
        else if (key == "run.T") cfg.T = to_double(key, val);
        else if (key == "run.Tgrid") cfg.Tgrid = parse_grid_spec(val);
        else if (key == "run.eps") cfg.eps = to_double(key, val);
        else if (key == "run.threads") cfg.threads = to_int(key, val);
        else if (key == "run.window") cfg.window = parse_window_spec(val);
        else if (key == "run.lambdaGrid") cfg.lambdaGrid = parse_grid_spec(val);
        else if (key == "kernel.resolution") cfg.kernelResolution = to_int(key, val);
        else if (key == "kernel.T0") cfg.kernelT0 = to_double(key, val);
        else if (key == "separation.deltaPrime") cfg.deltaPrime = to_double(key, val);
        else if (key == "separation.B") cfg.B = to_double(key, val);
        else if (key == "phi.amplitude") cfg.phiAmplitude = to_double(key, val);
        else if (key == "phi.depth") cfg.phiDepth = to_int(key, val);
        else if (key == "phi.radius") cfg.phiRadius = to_double(key, val);
        else if (key == "out.dir") cfg.outDir = val;
        else if (key == "cache.enabled") cfg.cacheEnabled = to_bool(key, val);
        else if (key == "model.spectrum") cfg.model = val;
        else if (key == "box.tolerance") cfg.boxTolerance = to_double(key, val);
        else throw ConfigError("unknown key '" + key + "'");
    }
    validate_config(cfg);
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), std::move(base));
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.surface.empty()) throw ConfigError("surface.name must not be empty");
    if (!(cfg.T > 0.0)) throw ConfigError("run.T must be positive");
    if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw ConfigError("run.eps must be in (0,1)");
    if (cfg.kernelResolution < 4096) throw ConfigError("kernel.resolution must be >= 4096");
    if (cfg.threads < 1 || cfg.threads > 256) throw ConfigError("run.threads must be in [1,256]");
    if (cfg.deltaPrime < 0.0) throw ConfigError("separation.deltaPrime must be >= 0");
    if (!(cfg.B > 0.0)) throw ConfigError("separation.B must be positive");
    if (cfg.phiDepth < 1 || cfg.phiDepth > 8) throw ConfigError("phi.depth must be in [1,8]");
    if (!(cfg.phiRadius > 0.0)) throw ConfigError("phi.radius must be positive");
    if (cfg.phiAmplitude < 0.0) throw ConfigError("phi.amplitude must be >= 0");
    if (!(cfg.boxTolerance > 0.0 && cfg.boxTolerance <= 1.0))
        throw ConfigError("box.tolerance must be in (0,1]");
}

std::string ExperimentConfig::canonical_text() const {
    // Runtime environment (threads, output paths, cache toggles) is excluded:
    // the hash identifies the experiment, and byte-identical outputs across
    // thread counts are part of the contract.
    std::ostringstream os;
    os << "surface.name=" << surface << "\n";
    os << "run.T=" << format_sig(T, 17) << "\n";
    os << "run.Tgrid=" << grid_text(Tgrid) << "\n";
    os << "run.eps=" << format_sig(eps, 17) << "\n";
    if (window.set)
        os << "run.window=" << format_sig(window.lo, 17) << ":" << format_sig(window.hi, 17)
           << "\n";
    os << "run.lambdaGrid=" << grid_text(lambdaGrid) << "\n";
    os << "kernel.resolution=" << kernelResolution << "\n";
    os << "kernel.T0=" << format_sig(kernelT0, 17) << "\n";
    os << "separation.deltaPrime=" << format_sig(deltaPrime, 17) << "\n";
    os << "separation.B=" << format_sig(B, 17) << "\n";
    os << "phi.amplitude=" << format_sig(phiAmplitude, 17) << "\n";
    os << "phi.depth=" << phiDepth << "\n";
    os << "phi.radius=" << format_sig(phiRadius, 17) << "\n";
    os << "model.spectrum=" << model << "\n";
    os << "box.tolerance=" << format_sig(boxTolerance, 17) << "\n";
    return os.str();
}

std::string ExperimentConfig::config_hash() const { return to_hex(fnv1a64(canonical_text())); }

} // namespace weyllab
