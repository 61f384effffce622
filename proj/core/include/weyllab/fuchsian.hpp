#pragma once

#include "weyllab/geometry.hpp"
#include "weyllab/group_words.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace weyllab {

/// Cocompact Fuchsian group given by generator matrices and relation words.
struct GeneratorSet {
    std::vector<MoebiusElement> generators;
    std::vector<GroupWord> relationWords;
    std::string name;

    std::size_t count() const { return generators.size(); }

    /// Generator for a signed letter (+k+1 or -(k+1)).
    const MoebiusElement letter_element(std::int8_t l) const;

    MoebiusElement evaluate(const GroupWord& w) const;

    /// Relation words evaluate to +-identity within tol; no generator or
    /// 2-letter cyclically reduced word is parabolic.
    void validate(double relTol = 1e-9) const;
};

/// Genus-2 surface of constant curvature -1 tiled by the regular octagon;
/// generators are four boosts of equal trace 2(1+sqrt 2) with axes through i
/// at angles k*pi/4.
GeneratorSet bolza_surface();

/// Generator file I/O: one matrix per line "a b c d" (17 significant digits,
/// bit-exact round trip), relation lines prefixed "rel:" with signed indices.
std::string generator_file_text(const GeneratorSet& gs);
GeneratorSet parse_generator_file(const std::string& text, const std::string& name);
void save_generator_file(const GeneratorSet& gs, const std::string& path);
GeneratorSet load_generator_file(const std::string& path);

/// Streams one representative per free-cyclic conjugacy class (cyclically
/// reduced words up to maxLetters, canonical form = lex-least rotation;
/// w and w^-1 are distinct classes). Classes are visited in canonical order
/// within each length. Throws MemoryBudgetError past maxWords.
void enumerate_conjugacy_classes(const GeneratorSet& gs, int maxLetters,
                                 const std::function<void(const GroupWord&)>& sink,
                                 std::size_t maxWords = 200000000);

/// Convenience collector for small enumerations.
std::vector<GroupWord> collect_conjugacy_classes(const GeneratorSet& gs, int maxLetters,
                                                 std::size_t maxWords = 200000000);

struct LengthSpectrumEntry {
    double length = 0.0;
    double primitiveLength = 0.0;
    int power = 1;
    GroupWord canonicalWord;
    MoebiusElement element;     // representative matrix of the conjugacy class
    double detTerm = std::numeric_limits<double>::quiet_NaN(); // |det(I-P)|, filled by flow_dynamics
};

struct DistinctLength {
    double length;
    int multiplicity; // oriented count
};

enum class SpectrumMethod {
    GeometricBall, ///< certified orbit-ball enumeration (default)
    WordStabilize  ///< letter-bound enumeration with doubling stabilization
};

struct SpectrumOptions {
    SpectrumMethod method = SpectrumMethod::GeometricBall;
    int threads = 1;
    double clusterTol = 1e-9;
    int initialLetterBound = 3;     // WordStabilize start
    int maxLetterBound = 14;        // WordStabilize hard cap
    std::size_t maxBallElements = 5000000;
};

/// Oriented length spectrum, complete up to the cutoff.
struct LengthSpectrum {
    std::vector<LengthSpectrumEntry> entries; // sorted by (length, canonicalWord)
    double cutoff = 0.0;
    double clusterTol = 1e-9;
    std::string certificate; // how completeness was established

    std::vector<DistinctLength> distinct_lengths(double T) const;
    std::size_t count_below(double T) const;
};

/// Every hyperbolic conjugacy class of translation length <= T, oriented
/// (gamma and gamma^-1 are separate entries), with primitive decomposition.
LengthSpectrum build_length_spectrum(const GeneratorSet& gs, double T,
                                     const SpectrumOptions& opts = {});

/// Number of distinct length clusters <= T at the spectrum's cluster tolerance.
int nu_distinct(const LengthSpectrum& ls, double T);

double systole(const GeneratorSet& gs);

/// --- internals shared with tests and flow_dynamics ---

/// All group elements u with d(u i, i) <= radius, found by breadth-first
/// search over the orbit graph with exact-matrix deduplication.
struct OrbitBallElement {
    MoebiusElement m;
    GroupWord word;
};

std::vector<OrbitBallElement> orbit_ball(const GeneratorSet& gs, double radius,
                                         std::size_t maxElements = 5000000);

/// Canonical representative matrix of the Gamma-conjugacy class of g:
/// the lexicographically least normalized matrix among conjugates whose axis
/// passes within the octagon circumradius of i. Conjugate inputs map to equal
/// outputs (within matrix tolerance).
MoebiusElement conjugacy_canonical_matrix(const GeneratorSet& gs, const MoebiusElement& g,
                                          double axisReach);

/// Brute-force oracle: true iff h g h^-1 == g2 for some h of word length <=
/// conjLetters. Independent of conjugacy_canonical_matrix.
bool conjugate_by_search(const GeneratorSet& gs, const MoebiusElement& g,
                         const MoebiusElement& g2, int conjLetters, double tol = 1e-8);

/// Spectrum cache: CSV with columns length,primitiveLength,power,word,detTerm.
std::string spectrum_to_csv(const LengthSpectrum& ls);
LengthSpectrum spectrum_from_csv(const std::string& csv, const GeneratorSet& gs,
                                 double expectedCutoff);
std::string spectrum_cache_key(const GeneratorSet& gs, double T, const SpectrumOptions& opts);

} // namespace weyllab
