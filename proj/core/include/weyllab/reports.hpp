#pragma once

#include "weyllab/box_search.hpp"
#include "weyllab/separation.hpp"
#include "weyllab/thermo.hpp"

#include <string>
#include <vector>

namespace weyllab {

/// Minimal deterministic JSON emitter: fixed field order, doubles at 12
/// significant digits, so identical inputs give byte-identical output.
class JsonWriter {
public:
    JsonWriter& begin() { return raw("{"); }
    JsonWriter& end();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(long v);
    JsonWriter& value(int v) { return value(static_cast<long>(v)); }
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& s);
    JsonWriter& array(const std::vector<double>& v);
    JsonWriter& raw(const std::string& s);
    std::string str() const { return out_; }

private:
    std::string out_;
    bool needComma_ = false;
};

struct TraceRecord {
    double lambda, T, kappa, sigma;
    long N;
    double R, Rosc;
};

std::string trace_records_json(const std::vector<TraceRecord>& recs);

std::string box_report_json(const ProofSchedule& sched, const ResonanceResult& rr,
                            const AmplitudeReport& amp, int nu, const std::string& configHash);

std::string separation_report_json(const SeparationReport& rep, double T, double deltaPrime,
                                   double B);

std::string fits_json(const ExponentFit& pressure, const ExponentFit& entropy,
                      const std::string& configHash);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace weyllab
