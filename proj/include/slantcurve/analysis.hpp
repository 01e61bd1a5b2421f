/*
*   Copyright 2026 the slantcurve authors
*
*   Licensed under the Apache License, Version 2.0 (the "License");
*   you may not use this file except in compliance with the License.
*   You may obtain a copy of the License at
*
*       http://www.apache.org/licenses/LICENSE-2.0
*
*   Unless required by applicable law or agreed to in writing, software
*   distributed under the License is distributed on an "AS IS" BASIS,
*   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
*   See the License for the specific language governing permissions and
*   limitations under the License.
*/
#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "slantcurve/hierarchy.hpp"
#include "slantcurve/zoo.hpp"

namespace slant {

using json = nlohmann::ordered_json;

struct AnalysisConfig {
    int levels = 4;
    double const_tol = kDefaultConstTol;
    std::size_t stat_trim = kStatEdgeTrim;  // run-edge trim for constancy statistics
    bool verify_lemmas = false;
    std::string format = "json";  // "json" or "csv"
};

struct AnalysisResult {
    json report;
    ClassificationReport classification;
};

/// Full pipeline on a curve already on the arc-length grid: sigma recursion,
/// classification with axis recovery, optional indicatrix-oracle checks, and
/// the machine-readable report.
AnalysisResult analyze_curve(const ArcSampledCurve& curve, const AnalysisConfig& config,
                             const ZooTruth* truth, const std::string& source);

/// Points CSV: header "s,x,y,z", UTF-8, LF, shortest round-trip decimals.
void write_points_csv(const std::string& path, const ArcSampledCurve& curve);
SampledVectorField read_points_csv(const std::string& path);

/// Ground-truth sidecar written next to generated fixtures.
void write_truth_sidecar(const std::string& path, const ZooCurve& zoo);
std::optional<ZooTruth> read_truth_sidecar(const std::string& path);

/// Deterministic serialization: fixed key order, doubles at 17 significant
/// digits, non-finite numbers as null.
std::string dump_deterministic(const json& j, int indent = 2);

/// Per-sample table as CSV (the "csv" report format).
std::string report_samples_csv(const ArcSampledCurve& curve, const SlantProfile& profile);

/// Plot-ready bundle: <stem>_sigma<k>.csv, <stem>_indicatrix_<kind>.csv and,
/// when classification succeeded, <stem>_axis.csv. Returns the file names.
std::vector<std::string> export_plotdata(const ArcSampledCurve& curve, const AnalysisConfig& config,
                                         const std::string& stem);

std::string format_shortest(double v);

} // namespace slant
