#include "test_helpers.hpp"
#include "weyllab/spectra.hpp"

#include <doctest.h>

#include <cmath>

using namespace weyllab;
using namespace weyllab::testing;

TEST_SUITE_BEGIN("spectra");

TEST_CASE("circle eigenvalues come in pairs") {
    SpectrumData c = circle_spectrum(2.0 * std::numbers::pi, 10.5);
    REQUIRE(c.lambda.size() >= 3);
    CHECK(c.lambda[0] == 0.0);
    CHECK(c.mult[0] == 1);
    CHECK(c.lambda[1] == doctest::Approx(1.0));
    CHECK(c.mult[1] == 2);
    CHECK(c.lambda[2] == doctest::Approx(4.0));
    CHECK(c.mult[2] == 2);
    CHECK(c.counting(0.5) == 1); // below the first positive sqrt-eigenvalue
    CHECK(c.counting(2.0) == 5); // 0, +-1, +-2
}

TEST_CASE("sphere3 counting at sqrt(12)") {
    SpectrumData s = sphere3_spectrum(30.0);
    CHECK(s.counting(std::sqrt(12.0)) == 14); // 1 + 4 + 9
    CHECK(s.volume == doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi));
    CHECK(s.heatA1() == doctest::Approx(s.volume)); // (1/6) * 6 * vol
}

TEST_CASE("square torus remainder against the Gauss circle oracle") {
    double side = 2.0 * std::numbers::pi;
    SpectrumData t = torus_spectrum({side, side}, 16.0);
    CHECK(t.volume == doctest::Approx(4.0 * std::numbers::pi * std::numbers::pi));

    // brute lattice count in the disk of radius 10
    long brute = 0;
    for (long a = -10; a <= 10; ++a)
        for (long b = -10; b <= 10; ++b)
            if (a * a + b * b <= 100) ++brute;
    CHECK(t.counting(10.0) == brute);

    CountingRemainders cr = counting_and_remainders(t, 10.0);
    CHECK(cr.N == brute);
    CHECK(cr.R == doctest::Approx(static_cast<double>(brute) - 100.0 * std::numbers::pi)
                      .epsilon(1e-12));
}

TEST_CASE("sphere3 heat-polynomial main terms") {
    SpectrumData s = sphere3_spectrum(30.0);
    for (double lam : {5.0, 12.0, 25.0}) {
        double expected = lam * lam * lam / 3.0 + lam / 2.0;
        CHECK(osc_main_term(s, lam) == doctest::Approx(expected).epsilon(1e-12));
    }
    CountingRemainders cr = counting_and_remainders(s, 12.0);
    double main = 12.0 * 12.0 * 12.0 / 3.0 + 12.0 / 2.0;
    CHECK(cr.Rosc == doctest::Approx(static_cast<double>(cr.N) - main).epsilon(1e-12));
    CHECK_THROWS_AS(counting_and_remainders(s, 100.0), CoverageError);
}

TEST_CASE("counting function is right-continuous and jumps by multiplicity") {
    SpectrumData s = sphere3_spectrum(20.0);
    for (std::size_t i = 1; i < s.lambda.size(); ++i) {
        double r = std::sqrt(s.lambda[i]);
        CHECK(s.counting(r) - s.counting(r - 1e-9) == s.mult[i]);
        CHECK(s.counting(r + 1e-9) == s.counting(r));
    }
}

TEST_CASE("fixture file parsing") {
    std::string good = "dim: 2\nvolume: 12.566\ninttau: 0\n1.5\n2.5\n2.5\n4\n";
    SpectrumData sd = parse_spectrum_file(good, "t");
    CHECK(sd.dimension == 2);
    CHECK(sd.lambda.size() == 3);
    CHECK(sd.mult[1] == 2);

    std::string unsorted = "dim: 2\nvolume: 1\ninttau: 0\n2.0\n1.0\n";
    try {
        parse_spectrum_file(unsorted, "t");
        CHECK(false);
    } catch (const FileFormatError& e) {
        CHECK(e.line() == 5); // the first inversion
    }

    CHECK_THROWS_AS(parse_spectrum_file("volume: 1\ninttau: 0\n1.0\n", "t"), FileFormatError);

    // export-then-ingest round trip of a model torus spectrum
    SpectrumData t = torus_spectrum({2.0 * std::numbers::pi, 2.0 * std::numbers::pi}, 6.0);
    SpectrumData back = parse_spectrum_file(spectrum_file_text(t), "torus");
    REQUIRE(back.lambda.size() == t.lambda.size());
    for (std::size_t i = 0; i < t.lambda.size(); ++i) {
        CHECK(back.lambda[i] == t.lambda[i]);
        CHECK(back.mult[i] == t.mult[i]);
    }
    CHECK(back.volume == t.volume);
}

TEST_SUITE_END();
