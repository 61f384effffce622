#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace weyllab {

/// Eigenvalue list of a Laplacian with the geometric invariants the Weyl and
/// heat formulas need. Stored with multiplicities; lambda ascending.
struct SpectrumData {
    std::vector<double> lambda;     // distinct eigenvalues of Delta, ascending
    std::vector<std::int64_t> mult; // multiplicities
    int dimension = 2;
    double volume = 0.0;
    double intTau = 0.0; // integral of scalar curvature
    std::string source;

    double heatA0() const { return volume; }
    double heatA1() const { return intTau / 6.0; }

    /// sqrt of the largest tabulated eigenvalue.
    double coverage() const;

    /// N(r) = #{ sqrt(lambda_i) <= r }, right-continuous.
    std::int64_t counting(double r) const;

    std::int64_t total_count() const;

    void validate() const; // sorted, positive mult, lambda_0 >= 0
};

struct CountingRemainders {
    std::int64_t N;
    double R;    // N minus the leading Weyl term
    double Rosc; // N minus the heat-invariant polynomial
};

/// Leading Weyl term (4pi)^{-n/2} vol lambda^n / Gamma(n/2+1).
double weyl_main_term(const SpectrumData& sd, double lambda);

/// Heat-invariant polynomial sum_{j=0}^{floor((n-1)/2)}
/// (4pi)^{-n/2} a_j lambda^{n-2j} / Gamma(n/2 - j + 1); needs n <= 3 (only
/// a_0, a_1 are tracked).
double osc_main_term(const SpectrumData& sd, double lambda);

CountingRemainders counting_and_remainders(const SpectrumData& sd, double lambda);

/// Model spectra (oracles): all eigenvalues with sqrt(lambda) <= rMax.
SpectrumData circle_spectrum(double circumference, double rMax);
SpectrumData torus_spectrum(const std::vector<double>& sides, double rMax);
SpectrumData sphere3_spectrum(double rMax);

/// Fixture file: "dim: n", "volume: A", "inttau: v" headers, then one
/// eigenvalue per line ascending (repeats encode multiplicity).
SpectrumData parse_spectrum_file(const std::string& text, const std::string& source);
std::string spectrum_file_text(const SpectrumData& sd);
SpectrumData load_spectrum_file(const std::string& path);
void save_spectrum_file(const SpectrumData& sd, const std::string& path);

} // namespace weyllab
