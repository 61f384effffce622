#include "weyllab/reports.hpp"

#include "weyllab/errors.hpp"
#include "weyllab/numerics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace weyllab {

JsonWriter& JsonWriter::end() {
    out_ += "}";
    needComma_ = true;
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    if (needComma_) out_ += ",";
    out_ += "\"" + k + "\":";
    needComma_ = false;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    if (std::isnan(v))
        out_ += "null";
    else
        out_ += format_sig(v);
    needComma_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(long v) {
    out_ += std::to_string(v);
    needComma_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    out_ += v ? "true" : "false";
    needComma_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
    out_ += "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out_ += '\\';
        out_ += c;
    }
    out_ += "\"";
    needComma_ = true;
    return *this;
}

JsonWriter& JsonWriter::array(const std::vector<double>& v) {
    out_ += "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out_ += ",";
        out_ += format_sig(v[i]);
    }
    out_ += "]";
    needComma_ = true;
    return *this;
}

JsonWriter& JsonWriter::raw(const std::string& s) {
    out_ += s;
    needComma_ = false;
    return *this;
}

std::string trace_records_json(const std::vector<TraceRecord>& recs) {
    std::string out = "[";
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (i) out += ",";
        JsonWriter w;
        w.begin();
        w.key("lambda").value(recs[i].lambda);
        w.key("T").value(recs[i].T);
        w.key("kappa").value(recs[i].kappa);
        w.key("sigma").value(recs[i].sigma);
        w.key("N").value(recs[i].N);
        w.key("R").value(recs[i].R);
        w.key("Rosc").value(recs[i].Rosc);
        w.end();
        out += w.str();
    }
    out += "]\n";
    return out;
}

std::string box_report_json(const ProofSchedule& sched, const ResonanceResult& rr,
                            const AmplitudeReport& amp, int nu, const std::string& configHash) {
    JsonWriter w;
    w.begin();
    w.key("lambda").value(rr.lambda);
    w.key("phases").array(rr.phases);
    w.key("maxPhase").value(rr.maxPhase);
    w.key("M1").value(sched.M1);
    w.key("cap").value(sched.M1 * std::ldexp(1.0, nu));
    w.key("nu").value(static_cast<long>(nu));
    w.key("sigmaValue").value(amp.sigma);
    w.key("lowerBound").value(amp.rhs);
    w.key("pass").value(amp.pass);
    w.key("alpha").value(sched.alpha);
    w.key("eps").value(sched.eps);
    w.key("T").value(sched.T);
    w.key("b").value(sched.b);
    w.key("degenerateSchedule").value(sched.degenerate);
    w.key("kernelScale").value(amp.kernelScale);
    w.key("minChiOnWindow").value(amp.minChiOnWindow);
    w.key("minCosOnLengths").value(amp.minCosOnLengths);
    w.key("C3").value(amp.C3);
    w.key("samplesTried").value(rr.samplesTried);
    w.key("configHash").value(configHash);
    w.end();
    return w.str() + "\n";
}

std::string separation_report_json(const SeparationReport& rep, double T, double deltaPrime,
                                   double B) {
    JsonWriter w;
    w.begin();
    w.key("T").value(T);
    w.key("deltaPrime").value(deltaPrime);
    w.key("B").value(B);
    w.key("windowLo").value(rep.windowLo);
    w.key("windowHi").value(rep.windowHi);
    w.key("geodesicsInWindow").value(static_cast<long>(rep.geodesicsInWindow));
    w.key("pairCount").value(rep.pairCount);
    w.key("minDistance")
        .value(std::isinf(rep.minDistance) ? std::numeric_limits<double>::quiet_NaN()
                                           : rep.minDistance);
    w.key("threshold").value(rep.threshold);
    w.key("emptyWindow").value(rep.emptyWindow);
    w.key("pass").value(rep.pass);
    w.end();
    return w.str() + "\n";
}

std::string fits_json(const ExponentFit& pressure, const ExponentFit& entropy,
                      const std::string& configHash) {
    JsonWriter w;
    w.begin();
    w.key("pressureSlope").value(pressure.slope);
    w.key("pressureIntercept").value(pressure.intercept);
    w.key("pressureResidual").value(pressure.residual);
    w.key("entropySlope").value(entropy.slope);
    w.key("entropyResidual").value(entropy.residual);
    w.key("entropyLogTCorrected").value(entropy.logTCorrected);
    w.key("exponentRatio").value(pressure.slope / entropy.slope);
    w.key("windowLo").value(pressure.windowLo);
    w.key("windowHi").value(pressure.windowHi);
    w.key("configHash").value(configHash);
    w.end();
    return w.str() + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("io.Open", "cannot write " + path);
    f << content;
    if (!f) throw Error("io.Write", "write failed for " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("io.Open", "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace weyllab
