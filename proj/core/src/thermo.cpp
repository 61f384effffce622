#include "weyllab/thermo.hpp"

#include "weyllab/errors.hpp"
#include "weyllab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace weyllab {

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) throw Error("thermo.Grid", "bad grid spec");
    std::vector<double> g;
    for (double t = lo; t <= hi + 1e-12; t += step) g.push_back(std::min(t, hi));
    return g;
}

OrbitSumSeries orbit_sums_rows(std::vector<WeightedLength> rows, const std::vector<double>& grid,
                               double clusterTol) {
    std::sort(rows.begin(), rows.end(), [](const WeightedLength& a, const WeightedLength& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.primitiveLength < b.primitiveLength;
    });
    for (const auto& r : rows)
        if (!(r.detTerm > 0.0) || std::isnan(r.detTerm))
            throw MissingDetTermError("row without positive detTerm at L=" +
                                      std::to_string(r.length));

    OrbitSumSeries out;
    out.T = grid;
    out.S.resize(grid.size());
    out.Sprim.resize(grid.size());
    out.counts.resize(grid.size());
    out.nuDistinct.resize(grid.size());

    KahanSum s, sp;
    std::size_t idx = 0;
    long cnt = 0;
    int nu = 0;
    double lastLen = -1.0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        while (idx < rows.size() && rows[idx].length <= grid[gi] + 1e-12) {
            double w = std::sqrt(rows[idx].detTerm);
            s.add(rows[idx].length / w);
            sp.add(rows[idx].primitiveLength / w);
            ++cnt;
            if (lastLen < 0.0 || rows[idx].length - lastLen > clusterTol) ++nu;
            lastLen = rows[idx].length;
            ++idx;
        }
        out.S[gi] = s.value();
        out.Sprim[gi] = sp.value();
        out.counts[gi] = cnt;
        out.nuDistinct[gi] = nu;
    }
    return out;
}

OrbitSumSeries orbit_sums(const LengthSpectrum& spec, const std::vector<double>& grid) {
    if (!grid.empty()) {
        double maxT = *std::max_element(grid.begin(), grid.end());
        if (maxT > spec.cutoff + 1e-12)
            throw IncompleteSpectrumError("orbit sums grid exceeds spectrum cutoff");
    }
    std::vector<WeightedLength> rows;
    rows.reserve(spec.entries.size());
    for (const auto& e : spec.entries)
        rows.push_back({e.length, e.primitiveLength, e.detTerm});
    return orbit_sums_rows(std::move(rows), grid, spec.clusterTol);
}

namespace {

ExponentFit fit_window(const std::vector<double>& T, const std::vector<double>& y, double lo,
                       double hi) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (T[i] < lo - 1e-12 || T[i] > hi + 1e-12) continue;
        if (std::isnan(y[i]) || std::isinf(y[i])) continue;
        xs.push_back(T[i]);
        ys.push_back(y[i]);
    }
    if (xs.size() < 5)
        throw DegenerateWindowError("fit window needs >= 5 usable grid points, has " +
                                    std::to_string(xs.size()));
    LinearFit lf = linear_fit(xs, ys);
    ExponentFit f;
    f.slope = lf.slope;
    f.intercept = lf.intercept;
    f.residual = lf.maxAbsResidual;
    f.windowLo = lo;
    f.windowHi = hi;
    f.pointsUsed = static_cast<int>(xs.size());
    return f;
}

} // namespace

ExponentFit pressure_fit(const OrbitSumSeries& series, double lo, double hi) {
    std::vector<double> ln(series.T.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < series.T.size(); ++i)
        if (series.S[i] > 0.0) ln[i] = std::log(series.S[i]);
    return fit_window(series.T, ln, lo, hi);
}

ExponentFit entropy_fit(const OrbitSumSeries& series, double lo, double hi, bool correct) {
    std::vector<double> ln(series.T.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < series.T.size(); ++i)
        if (series.counts[i] > 0)
            ln[i] = std::log(static_cast<double>(series.counts[i])) +
                    (correct ? std::log(series.T[i]) : 0.0);
    ExponentFit f = fit_window(series.T, ln, lo, hi);
    f.logTCorrected = correct;
    return f;
}

std::string orbit_series_to_csv(const OrbitSumSeries& s) {
    std::ostringstream os;
    os << "T,S,Sprim,count,nu\n";
    for (std::size_t i = 0; i < s.T.size(); ++i) {
        os << format_sig(s.T[i]) << ',' << format_sig(s.S[i]) << ',' << format_sig(s.Sprim[i])
           << ',' << s.counts[i] << ',' << s.nuDistinct[i] << "\n";
    }
    return os.str();
}

} // namespace weyllab
