#include "weyllab/spectra.hpp"

#include "weyllab/errors.hpp"
#include "weyllab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace weyllab {

double SpectrumData::coverage() const {
    if (lambda.empty()) return 0.0;
    return std::sqrt(lambda.back());
}

std::int64_t SpectrumData::counting(double r) const {
    if (r < 0.0) return 0;
    // compare on sqrt(lambda) so that counting(sqrt(lambda_i)) includes i even
    // when squaring does not round-trip
    std::size_t lo = 0, hi = lambda.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (std::sqrt(lambda[mid]) <= r)
            lo = mid + 1;
        else
            hi = mid;
    }
    std::int64_t n = 0;
    for (std::size_t i = 0; i < lo; ++i) n += mult[i];
    return n;
}

std::int64_t SpectrumData::total_count() const {
    std::int64_t n = 0;
    for (auto m : mult) n += m;
    return n;
}

void SpectrumData::validate() const {
    if (lambda.size() != mult.size()) throw Error("spectral.Spectrum", "size mismatch");
    if (lambda.empty()) throw Error("spectral.Spectrum", "empty spectrum");
    if (lambda.front() < 0.0) throw Error("spectral.Spectrum", "negative eigenvalue");
    for (std::size_t i = 0; i + 1 < lambda.size(); ++i)
        if (!(lambda[i] < lambda[i + 1])) throw Error("spectral.Spectrum", "not ascending");
    for (auto m : mult)
        if (m <= 0) throw Error("spectral.Spectrum", "nonpositive multiplicity");
}

double weyl_main_term(const SpectrumData& sd, double lambda) {
    double n = sd.dimension;
    return std::pow(4.0 * std::numbers::pi, -n / 2.0) * sd.volume * std::pow(lambda, n) /
           std::tgamma(n / 2.0 + 1.0);
}

double osc_main_term(const SpectrumData& sd, double lambda) {
    int n = sd.dimension;
    if (n > 3) throw Error("spectral.Spectrum", "osc main term tracks a_0, a_1 only (n <= 3)");
    int jmax = (n - 1) / 2;
    double pref = std::pow(4.0 * std::numbers::pi, -n / 2.0);
    double acc = 0.0;
    for (int j = 0; j <= jmax; ++j) {
        double aj = j == 0 ? sd.heatA0() : sd.heatA1();
        acc += pref * aj * std::pow(lambda, n - 2 * j) / std::tgamma(n / 2.0 - j + 1.0);
    }
    return acc;
}

CountingRemainders counting_and_remainders(const SpectrumData& sd, double lambda) {
    if (lambda > sd.coverage() + 1e-12)
        throw CoverageError("lambda exceeds spectrum coverage " + std::to_string(sd.coverage()));
    CountingRemainders out;
    out.N = sd.counting(lambda);
    out.R = static_cast<double>(out.N) - weyl_main_term(sd, lambda);
    out.Rosc = static_cast<double>(out.N) - osc_main_term(sd, lambda);
    return out;
}

SpectrumData circle_spectrum(double circumference, double rMax) {
    if (!(circumference > 0.0) || !(rMax > 0.0))
        throw Error("spectral.Model", "circle needs positive circumference and range");
    SpectrumData sd;
    sd.dimension = 1;
    sd.volume = circumference;
    sd.intTau = 0.0;
    sd.source = "circle";
    sd.lambda.push_back(0.0);
    sd.mult.push_back(1);
    double base = 2.0 * std::numbers::pi / circumference;
    for (std::int64_t m = 1; m * base <= rMax; ++m) {
        double r = m * base;
        sd.lambda.push_back(r * r);
        sd.mult.push_back(2);
    }
    return sd;
}

SpectrumData torus_spectrum(const std::vector<double>& sides, double rMax) {
    if (sides.empty() || sides.size() > 3) throw Error("spectral.Model", "torus dim 1..3");
    SpectrumData sd;
    sd.dimension = static_cast<int>(sides.size());
    sd.volume = 1.0;
    for (double s : sides) {
        if (!(s > 0.0)) throw Error("spectral.Model", "torus sides must be positive");
        sd.volume *= s;
    }
    sd.intTau = 0.0;
    sd.source = "torus";

    // sqrt(lambda) = |2 pi (m_1/L_1, ..., m_n/L_n)|.
    std::vector<double> freq(sides.size());
    for (std::size_t i = 0; i < sides.size(); ++i) freq[i] = 2.0 * std::numbers::pi / sides[i];
    std::vector<long> cap(sides.size());
    for (std::size_t i = 0; i < sides.size(); ++i)
        cap[i] = static_cast<long>(std::floor(rMax / freq[i]));

    bool equalSides = true;
    for (double s : sides) equalSides = equalSides && std::fabs(s - sides[0]) < 1e-14;

    if (equalSides) {
        // integer-norm sieve: q2 = f^2 (a^2 + b^2 + ...), key a^2 + b^2 + ...
        double f2 = freq[0] * freq[0];
        long kmax = static_cast<long>(std::floor(rMax * rMax / f2 + 1e-9));
        std::vector<std::int64_t> counts(static_cast<std::size_t>(kmax) + 1, 0);
        long c0 = cap[0];
        if (sides.size() == 1) {
            for (long a = -c0; a <= c0; ++a)
                if (a * a <= kmax) counts[static_cast<std::size_t>(a * a)] += 1;
        } else if (sides.size() == 2) {
            for (long a = -c0; a <= c0; ++a)
                for (long b = -c0; b <= c0; ++b) {
                    long k = a * a + b * b;
                    if (k <= kmax) counts[static_cast<std::size_t>(k)] += 1;
                }
        } else {
            for (long a = -c0; a <= c0; ++a)
                for (long b = -c0; b <= c0; ++b) {
                    long kab = a * a + b * b;
                    if (kab > kmax) continue;
                    long crange = static_cast<long>(std::floor(std::sqrt(
                        static_cast<double>(kmax - kab))));
                    for (long c = -crange; c <= crange; ++c)
                        counts[static_cast<std::size_t>(kab + c * c)] += 1;
                }
        }
        for (long k = 0; k <= kmax; ++k)
            if (counts[static_cast<std::size_t>(k)] > 0) {
                sd.lambda.push_back(f2 * static_cast<double>(k));
                sd.mult.push_back(counts[static_cast<std::size_t>(k)]);
            }
        return sd;
    }

    std::map<double, std::int64_t> agg;
    auto add = [&](double q2) {
        if (q2 <= rMax * rMax + 1e-12) agg[q2] += 1;
    };
    if (sides.size() == 1) {
        for (long a = -cap[0]; a <= cap[0]; ++a) add(freq[0] * freq[0] * a * a);
    } else if (sides.size() == 2) {
        for (long a = -cap[0]; a <= cap[0]; ++a)
            for (long b = -cap[1]; b <= cap[1]; ++b)
                add(freq[0] * freq[0] * a * a + freq[1] * freq[1] * b * b);
    } else {
        for (long a = -cap[0]; a <= cap[0]; ++a)
            for (long b = -cap[1]; b <= cap[1]; ++b) {
                double q2ab = freq[0] * freq[0] * a * a + freq[1] * freq[1] * b * b;
                if (q2ab > rMax * rMax + 1e-12) continue;
                for (long c = -cap[2]; c <= cap[2]; ++c)
                    add(q2ab + freq[2] * freq[2] * c * c);
            }
    }
    sd.lambda.reserve(agg.size());
    sd.mult.reserve(agg.size());
    for (auto& [l, m] : agg) {
        sd.lambda.push_back(l);
        sd.mult.push_back(m);
    }
    return sd;
}

SpectrumData sphere3_spectrum(double rMax) {
    SpectrumData sd;
    sd.dimension = 3;
    sd.volume = 2.0 * std::numbers::pi * std::numbers::pi;
    sd.intTau = 6.0 * sd.volume; // scalar curvature n(n-1) = 6 on the unit S^3
    sd.source = "sphere3";
    for (std::int64_t k = 0;; ++k) {
        double l = static_cast<double>(k) * (k + 2);
        if (std::sqrt(l) > rMax) break;
        sd.lambda.push_back(l);
        sd.mult.push_back((k + 1) * (k + 1));
    }
    return sd;
}

SpectrumData parse_spectrum_file(const std::string& text, const std::string& source) {
    SpectrumData sd;
    sd.source = source;
    std::istringstream is(text);
    std::string line;
    long lineNo = 0;
    bool haveDim = false, haveVol = false, haveTau = false;
    double prev = -1.0;
    std::vector<double> raw;
    while (std::getline(is, line)) {
        ++lineNo;
        if (line.empty()) continue;
        if (line.rfind("dim:", 0) == 0) {
            sd.dimension = std::stoi(line.substr(4));
            haveDim = true;
            continue;
        }
        if (line.rfind("volume:", 0) == 0) {
            sd.volume = std::stod(line.substr(7));
            haveVol = true;
            continue;
        }
        if (line.rfind("inttau:", 0) == 0) {
            sd.intTau = std::stod(line.substr(7));
            haveTau = true;
            continue;
        }
        double v;
        try {
            v = std::stod(line);
        } catch (const std::exception&) {
            throw FileFormatError("expected eigenvalue, got '" + line + "'", lineNo);
        }
        if (v < prev) throw FileFormatError("eigenvalues not ascending", lineNo);
        prev = v;
        raw.push_back(v);
    }
    if (!haveDim || !haveVol || !haveTau)
        throw FileFormatError("missing dim:/volume:/inttau: header");
    if (raw.empty()) throw FileFormatError("no eigenvalues");
    for (double v : raw) {
        if (!sd.lambda.empty() && v - sd.lambda.back() <= 1e-12 * std::max(1.0, v))
            sd.mult.back() += 1;
        else {
            sd.lambda.push_back(v);
            sd.mult.push_back(1);
        }
    }
    sd.validate();
    return sd;
}

std::string spectrum_file_text(const SpectrumData& sd) {
    std::ostringstream os;
    char buf[64];
    os << "dim: " << sd.dimension << "\n";
    std::snprintf(buf, sizeof(buf), "volume: %.17g\n", sd.volume);
    os << buf;
    std::snprintf(buf, sizeof(buf), "inttau: %.17g\n", sd.intTau);
    os << buf;
    for (std::size_t i = 0; i < sd.lambda.size(); ++i)
        for (std::int64_t m = 0; m < sd.mult[i]; ++m) {
            std::snprintf(buf, sizeof(buf), "%.17g\n", sd.lambda[i]);
            os << buf;
        }
    return os.str();
}

SpectrumData load_spectrum_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("io.Open", "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    std::string base = path;
    auto slash = base.find_last_of('/');
    if (slash != std::string::npos) base = base.substr(slash + 1);
    return parse_spectrum_file(ss.str(), base);
}

void save_spectrum_file(const SpectrumData& sd, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("io.Open", "cannot write " + path);
    f << spectrum_file_text(sd);
}

} // namespace weyllab
