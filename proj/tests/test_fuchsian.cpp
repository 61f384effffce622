#include "test_helpers.hpp"
#include "weyllab/fuchsian.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

using namespace weyllab;
using namespace weyllab::testing;

TEST_SUITE_BEGIN("fuchsian");

namespace {

const double kSystole = 2.0 * std::acosh(1.0 + std::sqrt(2.0)); // 3.05714184...

std::vector<double> lengths_of(const LengthSpectrum& ls) {
    std::vector<double> v;
    for (const auto& e : ls.entries) v.push_back(e.length);
    return v;
}

} // namespace

TEST_CASE("bolza fixture validates") {
    const GeneratorSet& gs = bolza();
    CHECK(gs.count() == 4);
    for (const auto& g : gs.generators)
        CHECK(translation_length(g) == doctest::Approx(kSystole).epsilon(1e-12));
    CHECK_NOTHROW(gs.validate(1e-9));
}

TEST_CASE("generator file round trip is bit exact") {
    const GeneratorSet& gs = bolza();
    std::string text = generator_file_text(gs);
    GeneratorSet back = parse_generator_file(text, "bolza");
    CHECK(generator_file_text(back) == text);
    for (std::size_t i = 0; i < gs.count(); ++i) {
        CHECK(back.generators[i].a == gs.generators[i].a);
        CHECK(back.generators[i].b == gs.generators[i].b);
        CHECK(back.generators[i].c == gs.generators[i].c);
        CHECK(back.generators[i].d == gs.generators[i].d);
    }
    CHECK(back.relationWords == gs.relationWords);
}

TEST_CASE("systole appears at T = 3.2 and below-systole spectra are empty") {
    LengthSpectrum ls = build_length_spectrum(bolza(), 3.2);
    REQUIRE(!ls.entries.empty());
    CHECK(ls.entries.front().length == doctest::Approx(kSystole).epsilon(1e-9));
    CHECK(systole(bolza()) == doctest::Approx(kSystole).epsilon(1e-9));

    LengthSpectrum empty = build_length_spectrum(bolza(), 2.0);
    CHECK(empty.entries.empty());
}

TEST_CASE("spectra are monotone in the cutoff") {
    LengthSpectrum s4 = build_length_spectrum(bolza(), 4.0);
    LengthSpectrum s5 = build_length_spectrum(bolza(), 5.0);
    auto l4 = lengths_of(s4), l5 = lengths_of(s5);
    CHECK(l4.size() <= l5.size());
    CHECK(std::includes(l5.begin(), l5.end(), l4.begin(), l4.end(),
                        [](double a, double b) { return a < b - 1e-9; }));
}

TEST_CASE("ball and word-stabilization methods agree at T = 4.2") {
    // Word stabilization doubles the letter bound; relator splices keep
    // producing longer spellings of short geodesics, so its practical range
    // is small cutoffs. The systole window certifies at 3 -> 6 letters.
    LengthSpectrum ball = build_length_spectrum(bolza(), 4.2);
    SpectrumOptions wopts;
    wopts.method = SpectrumMethod::WordStabilize;
    wopts.initialLetterBound = 3;
    wopts.maxLetterBound = 8;
    wopts.threads = 2;
    LengthSpectrum words = build_length_spectrum(bolza(), 4.2, wopts);
    auto lb = lengths_of(ball), lw = lengths_of(words);
    REQUIRE(lb.size() == lw.size());
    for (std::size_t i = 0; i < lb.size(); ++i)
        CHECK(lb[i] == doctest::Approx(lw[i]).epsilon(1e-9));
    CHECK(words.certificate.rfind("word-stabilize", 0) == 0);
}

TEST_CASE("entry count at T = 6 matches the brute-force conjugacy oracle") {
    // Oracle: free-cyclic representatives up to 6 letters (every class with
    // L <= 6 has a spelling there), merged into conjugacy classes by explicit
    // conjugator search. Independent of the canonical-axis machinery.
    const GeneratorSet& gs = bolza();
    const double T = 6.0;

    std::vector<MoebiusElement> candidates;
    for (const auto& w : collect_conjugacy_classes(gs, 6)) {
        MoebiusElement m = gs.evaluate(w);
        if (classify(m) != MoebiusClass::Hyperbolic) continue;
        if (translation_length(m) > T) continue;
        candidates.push_back(m);
    }

    std::vector<MoebiusElement> reps;
    for (const auto& m : candidates) {
        bool merged = false;
        for (const auto& r : reps) {
            if (std::fabs(std::fabs(r.trace()) - std::fabs(m.trace())) > 1e-7) continue;
            if (conjugate_by_search(gs, m, r, 5, 1e-7)) {
                merged = true;
                break;
            }
        }
        if (!merged) reps.push_back(m);
    }

    const LengthSpectrum& ball = bolza_spectrum6();
    CHECK(ball.entries.size() == reps.size());

    // and the per-length multiplicities agree
    std::map<long, int> oracleMult, ballMult;
    for (const auto& r : reps) oracleMult[std::lround(translation_length(r) * 1e6)]++;
    for (const auto& e : ball.entries) ballMult[std::lround(e.length * 1e6)]++;
    CHECK(oracleMult == ballMult);
}

TEST_CASE("half-relator words collapse to one class") {
    // (1 -2 3 -4) and (-4 3 -2 1) are the same group element through the
    // octagon relation even though their cyclic words differ.
    const GeneratorSet& gs = bolza();
    GroupWord w1, w2;
    w1.letters = {1, -2, 3, -4};
    w2.letters = {-4, 3, -2, 1};
    MoebiusElement m1 = gs.evaluate(w1), m2 = gs.evaluate(w2);
    CHECK(m1.approx_equal(m2, 1e-9));
    // distinct canonical cyclic words, same group element
    CHECK(!(canonical_rotation(w1) == canonical_rotation(w2)));
    MoebiusElement c1 = conjugacy_canonical_matrix(gs, m1, 2.75);
    MoebiusElement c2 = conjugacy_canonical_matrix(gs, m2, 2.75);
    CHECK(c1.approx_equal(c2, 1e-7));
}

TEST_CASE("canonicalized conjugates stay in one class") {
    // The canonical matrix may land on either of the near-base conjugate
    // islands (the transpose symmetry makes two of them on this surface);
    // the contract is that the representatives of one class are conjugate,
    // which the merge pass in the spectrum builder relies on.
    // Conjugators of up to two letters keep the conditioning of the input
    // inside the precision envelope the spectrum pipeline guarantees.
    const GeneratorSet& gs = bolza();
    for (const auto& e : bolza_spectrum6().entries) {
        if (e.length > 5.0) break;
        MoebiusElement base = conjugacy_canonical_matrix(gs, e.element, 2.75);
        for (int t = 0; t < 3; ++t) {
            GroupWord h;
            for (int i = 0; i < 2; ++i) {
                int k = 1 + static_cast<int>(urand(0, 3.999));
                h.letters.push_back(static_cast<std::int8_t>(urand(0, 1) < 0.5 ? k : -k));
            }
            MoebiusElement H = gs.evaluate(h);
            MoebiusElement conj = compose(compose(H, e.element), H.inverse());
            MoebiusElement c = conjugacy_canonical_matrix(gs, conj, 2.75);
            CHECK((c.approx_equal(base, 1e-4) || conjugate_by_search(gs, c, base, 4, 1e-6)));
            CHECK(translation_length(c) == doctest::Approx(e.length).epsilon(1e-8));
        }
    }
}

TEST_CASE("entry lengths equal the translation length of their canonical word") {
    const GeneratorSet& gs = bolza();
    for (const auto& e : bolza_spectrum6().entries) {
        MoebiusElement m = gs.evaluate(e.canonicalWord);
        CHECK(translation_length(m) == doctest::Approx(e.length).epsilon(1e-12));
    }
}

TEST_CASE("oriented spectrum is closed under inversion") {
    const GeneratorSet& gs = bolza();
    const LengthSpectrum& ls = bolza_spectrum6();
    // multiset of lengths of inverses equals the multiset of lengths
    std::vector<double> a = lengths_of(ls), b;
    for (const auto& e : ls.entries) b.push_back(translation_length(e.element.inverse()));
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    // and each inverse class is itself present
    for (std::size_t i = 0; i < ls.entries.size(); i += 7) {
        MoebiusElement invCanon =
            conjugacy_canonical_matrix(gs, ls.entries[i].element.inverse(), 2.75);
        bool present = false;
        for (const auto& e : ls.entries)
            if (e.element.approx_equal(invCanon, 1e-6)) present = true;
        CHECK(present);
    }
}

TEST_CASE("power entries carry the primitive decomposition") {
    const LengthSpectrum& ls = bolza_spectrum6();
    // T = 6 holds only primitives on the Bolza surface
    for (const auto& e : ls.entries) {
        CHECK(e.power == 1);
        CHECK(e.primitiveLength == doctest::Approx(e.length).epsilon(1e-12));
    }
    LengthSpectrum ls65 = build_length_spectrum(bolza(), 6.5);
    int powers = 0;
    for (const auto& e : ls65.entries)
        if (e.power == 2) {
            ++powers;
            CHECK(e.length == doctest::Approx(2.0 * kSystole).epsilon(1e-9));
            CHECK(e.primitiveLength == doctest::Approx(kSystole).epsilon(1e-9));
        }
    CHECK(powers == 24); // the squares of the 24 oriented systole classes
}

TEST_CASE("distinct lengths cluster and grow monotonically") {
    const LengthSpectrum& ls = bolza_spectrum6();
    CHECK(nu_distinct(ls, kSystole + 0.01) == 1);
    auto d = ls.distinct_lengths(kSystole + 0.01);
    REQUIRE(d.size() == 1);
    CHECK(d[0].multiplicity == 24);
    int prev = 0;
    for (double T = 3.0; T <= 6.0; T += 0.25) {
        int nu = nu_distinct(ls, T);
        CHECK(nu >= prev);
        prev = nu;
    }
    CHECK_THROWS_AS(nu_distinct(ls, 7.0), Error);
}

TEST_CASE("spectrum CSV cache round trip") {
    const LengthSpectrum& ls = bolza_spectrum6();
    std::string csv = spectrum_to_csv(ls);
    LengthSpectrum back = spectrum_from_csv(csv, bolza(), 6.0);
    REQUIRE(back.entries.size() == ls.entries.size());
    for (std::size_t i = 0; i < ls.entries.size(); ++i) {
        CHECK(back.entries[i].length == ls.entries[i].length);
        CHECK(back.entries[i].primitiveLength == ls.entries[i].primitiveLength);
        CHECK(back.entries[i].power == ls.entries[i].power);
        CHECK(back.entries[i].detTerm == ls.entries[i].detTerm);
        CHECK(back.entries[i].canonicalWord == ls.entries[i].canonicalWord);
    }

    // a corrupted length is rejected on load
    std::string bad = csv;
    bad[csv.find('\n') + 1] = '9'; // clobber the first length digit
    CHECK_THROWS_AS(spectrum_from_csv(bad, bolza(), 6.0), FileFormatError);

    // cache keys separate different cutoffs
    SpectrumOptions opts;
    CHECK(spectrum_cache_key(bolza(), 6.0, opts) != spectrum_cache_key(bolza(), 6.5, opts));
}

TEST_SUITE_END();
