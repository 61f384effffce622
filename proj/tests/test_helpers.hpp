#pragma once

#include "weyllab/fuchsian.hpp"
#include "weyllab/kernel.hpp"
#include "weyllab/riccati.hpp"

#include <random>

namespace weyllab::testing {

inline const GeneratorSet& bolza() {
    static GeneratorSet gs = [] {
        GeneratorSet g = bolza_surface();
        g.validate();
        return g;
    }();
    return gs;
}

/// Bolza spectrum to T=6 with det terms, built once per process.
inline const LengthSpectrum& bolza_spectrum6() {
    static LengthSpectrum ls = [] {
        LengthSpectrum s = build_length_spectrum(bolza(), 6.0);
        fill_poincare_data(s, RiccatiOptions{}, 2);
        return s;
    }();
    return ls;
}

/// Bolza spectrum to T=8 with det terms, built once per process.
inline const LengthSpectrum& bolza_spectrum8() {
    static LengthSpectrum ls = [] {
        LengthSpectrum s = build_length_spectrum(bolza(), 8.0);
        fill_poincare_data(s, RiccatiOptions{}, 2);
        return s;
    }();
    return ls;
}

inline const SmoothingKernel& shared_kernel() {
    static SmoothingKernel k = SmoothingKernel::build(4096, 256.0);
    return k;
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 r(20240817ull);
    return r;
}

inline double urand(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng());
}

/// Random hyperbolic-plane point in a moderate box.
inline PlanePoint random_point() { return PlanePoint(urand(-3.0, 3.0), urand(0.05, 5.0)); }

/// Random Moebius element as a short product of rotations and boosts.
inline MoebiusElement random_moebius() {
    MoebiusElement m = MoebiusElement::identity();
    for (int i = 0; i < 4; ++i) {
        double th = urand(0.0, 3.14);
        MoebiusElement rot{std::cos(th), std::sin(th), -std::sin(th), std::cos(th)};
        double t = urand(-0.8, 0.8);
        MoebiusElement boost{std::exp(t), 0.0, 0.0, std::exp(-t)};
        m = compose(m, compose(rot, boost));
    }
    return m.normalized();
}

} // namespace weyllab::testing
