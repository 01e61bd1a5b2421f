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
#include "slantcurve/analysis.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace slant {

std::string format_shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string format_17g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void escape_json_string(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void dump_value(const json& j, int indent, int depth, std::string& out) {
    const std::string pad(std::size_t(indent) * std::size_t(depth), ' ');
    const std::string pad_in(std::size_t(indent) * std::size_t(depth + 1), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) { out += "{}"; return; }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad_in;
                escape_json_string(it.key(), out);
                out += ": ";
                dump_value(it.value(), indent, depth + 1, out);
                if (i + 1 < j.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) { out += "[]"; return; }
            // scalar arrays inline, nested ones one element per line
            bool flat = true;
            for (const auto& e : j) flat = flat && !e.is_structured();
            if (flat) {
                out += '[';
                for (std::size_t i = 0; i < j.size(); ++i) {
                    dump_value(j[i], indent, depth, out);
                    if (i + 1 < j.size()) out += ", ";
                }
                out += ']';
            } else {
                out += "[\n";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    out += pad_in;
                    dump_value(j[i], indent, depth + 1, out);
                    if (i + 1 < j.size()) out += ',';
                    out += '\n';
                }
                out += pad + "]";
            }
            return;
        }
        case json::value_t::string:
            escape_json_string(j.get<std::string>(), out);
            return;
        case json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            return;
        case json::value_t::number_integer:
            out += std::to_string(j.get<long long>());
            return;
        case json::value_t::number_unsigned:
            out += std::to_string(j.get<unsigned long long>());
            return;
        case json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_17g(v) : "null";
            return;
        }
        default:
            out += "null";
            return;
    }
}

json mask_to_json(const std::vector<std::uint8_t>& mask) {
    json a = json::array();
    for (auto m : mask) a.push_back(int(m != 0));
    return a;
}

json values_to_json(const std::vector<double>& v, const std::vector<std::uint8_t>& mask) {
    json a = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (mask.empty() || mask[i])
            a.push_back(v[i]);
        else
            a.push_back(nullptr);
    }
    return a;
}

json vector_to_json(const Vector3& v) { return json::array({v.x, v.y, v.z}); }

json classification_to_json(const ClassificationReport& rep) {
    json c;
    if (rep.k_star) {
        c["k_star"] = *rep.k_star;
        c["cot_phi"] = rep.cot_phi;
        c["phi"] = rep.phi;
        c["axis"] = rep.axis ? vector_to_json(*rep.axis) : json(nullptr);
        c["residual_sigma"] = rep.residual_sigma;
        c["residual_axis"] = rep.axis ? json(rep.residual_axis) : json(nullptr);
    } else {
        c["k_star"] = nullptr;
        c["cot_phi"] = nullptr;
        c["phi"] = nullptr;
        c["axis"] = nullptr;
        c["residual_sigma"] = nullptr;
        c["residual_axis"] = nullptr;
    }
    json per_k = json::array();
    for (const auto& st : rep.per_k) {
        json e;
        e["k"] = st.k;
        e["dev"] = st.dev;
        e["mean"] = st.mean;
        e["count"] = st.count;
        per_k.push_back(std::move(e));
    }
    c["per_k"] = std::move(per_k);
    return c;
}

json lemma_checks_to_json(const FrenetApparatus& app, const SlantFunctions& funcs) {
    json out;
    json oracle = json::array();
    for (IndicatrixKind kind : {IndicatrixKind::Tangent, IndicatrixKind::Normal,
                                IndicatrixKind::Binormal, IndicatrixKind::Psi3}) {
        json e;
        e["kind"] = to_string(kind);
        try {
            const OracleComparison cmp = compare_with_oracle(app, funcs, kind);
            e["compared"] = cmp.compared;
            e["max_rel_kappa"] = cmp.max_rel_kappa;
            e["max_rel_tau"] = cmp.max_rel_tau;
            e["max_frame_angle"] = cmp.max_frame_angle;
            e["max_ratio_dev_oracle"] = cmp.max_ratio_dev;

            const IndicatrixApparatus cf = closed_form_apparatus(app, funcs, kind);
            double ratio_dev = 0.0;
            for (std::size_t i = 0; i < cf.grid.size(); ++i) {
                if (!cf.mask[i]) continue;
                double target = 0.0;
                switch (kind) {
                    case IndicatrixKind::Tangent: target = funcs.sigma.values[i]; break;
                    case IndicatrixKind::Normal: target = funcs.gamma.values[i]; break;
                    case IndicatrixKind::Binormal: target = -funcs.sigma.values[i]; break;
                    case IndicatrixKind::Psi3: target = funcs.lambda_.values[i]; break;
                }
                ratio_dev = std::max(ratio_dev, std::abs(cf.ratio.values[i] - target));
            }
            e["max_ratio_dev_closed"] = ratio_dev;
        } catch (const Error& err) {
            e["skipped"] = err.what();
        }
        oracle.push_back(std::move(e));
    }
    out["oracle"] = std::move(oracle);

    // pointwise identities shared by the tangent and binormal images
    double darboux = 0.0, normal_pair = 0.0, binormal_pair = 0.0;
    try {
        const IndicatrixApparatus t = closed_form_apparatus(app, funcs, IndicatrixKind::Tangent);
        for (std::size_t i = 0; i < t.grid.size(); ++i) {
            if (!t.mask[i] || !app.mask[i]) continue;
            const Frame& fr = app.frames[i];
            const Vector3 w = fr.t * app.tau.values[i] + fr.b * app.kappa.values[i];
            darboux = std::max(darboux, (t.frames[i].b - w.normalized()).norm());
        }
        const IndicatrixApparatus b = closed_form_apparatus(app, funcs, IndicatrixKind::Binormal);
        for (std::size_t i = 0; i < t.grid.size(); ++i) {
            if (!t.mask[i] || !b.mask[i]) continue;
            normal_pair = std::max(normal_pair, (t.frames[i].n + b.frames[i].n).norm());
            binormal_pair = std::max(binormal_pair, (t.frames[i].b - b.frames[i].b).norm());
        }
        out["darboux_max_dev"] = darboux;
        out["normal_pair_max"] = normal_pair;
        out["binormal_pair_max"] = binormal_pair;
    } catch (const Error&) {
        out["darboux_max_dev"] = darboux;
        out["normal_pair_max"] = nullptr;
        out["binormal_pair_max"] = nullptr;
    }
    return out;
}

} // namespace

AnalysisResult analyze_curve(const ArcSampledCurve& curve, const AnalysisConfig& config,
                             const ZooTruth* truth, const std::string& source) {
    const FrenetApparatus app = frenet_apparatus(curve);
    const SlantProfile profile = sigma_recursion(app, config.levels);
    const ClassificationReport rep =
        classify(curve, app, profile, config.const_tol, config.stat_trim);

    AnalysisResult out;
    out.classification = rep;

    json& doc = out.report;
    json cfg;
    cfg["source"] = source;
    cfg["levels"] = config.levels;
    cfg["const_tol"] = config.const_tol;
    cfg["verify_lemmas"] = config.verify_lemmas;
    cfg["edge_trim"] = config.stat_trim;
    cfg["format"] = config.format;
    doc["config"] = std::move(cfg);

    json samples;
    samples["s"] = values_to_json(curve.grid, {});
    samples["kappa"] = values_to_json(app.kappa.values, app.mask);
    samples["tau"] = values_to_json(app.tau.values, app.mask);
    samples["mask"] = mask_to_json(app.mask);
    json sig = json::array(), sig_mask = json::array();
    for (const auto& s : profile.sigmas) {
        sig.push_back(values_to_json(s.values, s.mask));
        sig_mask.push_back(mask_to_json(s.mask));
    }
    samples["sigma"] = std::move(sig);
    samples["sigma_mask"] = std::move(sig_mask);
    doc["samples"] = std::move(samples);

    doc["classification"] = classification_to_json(rep);

    if (config.verify_lemmas) {
        const SlantFunctions funcs = slant_functions(app);
        doc["lemma_checks"] = lemma_checks_to_json(app, funcs);
    } else {
        doc["lemma_checks"] = nullptr;
    }

    if (truth) {
        json t;
        t["expected_k_star"] = truth->k_star;
        t["observed_k_star"] = rep.k_star ? json(*rep.k_star) : json(nullptr);
        t["expected_cot_phi"] = truth->cot_phi;
        t["observed_cot_phi"] = rep.k_star ? json(rep.cot_phi) : json(nullptr);
        t["cot_phi_error"] =
            rep.k_star ? json(std::abs(rep.cot_phi - truth->cot_phi)) : json(nullptr);
        t["match"] = rep.k_star && *rep.k_star == truth->k_star;
        doc["truth_comparison"] = std::move(t);
    } else {
        doc["truth_comparison"] = nullptr;
    }
    return out;
}

void write_points_csv(const std::string& path, const ArcSampledCurve& curve) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << "s,x,y,z\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Vector3& p = curve.points.vectors[i];
        f << format_shortest(curve.grid[i]) << ',' << format_shortest(p.x) << ','
          << format_shortest(p.y) << ',' << format_shortest(p.z) << '\n';
    }
}

SampledVectorField read_points_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw Error("empty points file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "s,x,y,z") throw Error("points file must start with header s,x,y,z");

    std::vector<double> s;
    std::vector<Vector3> p;
    std::size_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double v[4];
        const char* ptr = line.c_str();
        const char* end = ptr + line.size();
        for (int j = 0; j < 4; ++j) {
            auto res = std::from_chars(ptr, end, v[j]);
            if (res.ec != std::errc{})
                throw Error("bad number in " + path + " line " + std::to_string(lineno));
            ptr = res.ptr;
            if (j < 3) {
                if (ptr >= end || *ptr != ',')
                    throw Error("expected 4 comma-separated columns in " + path + " line " +
                                std::to_string(lineno));
                ++ptr;
            }
        }
        s.push_back(v[0]);
        p.push_back({v[1], v[2], v[3]});
    }
    if (s.size() < 5) throw TooFewSamples("points file has fewer than 5 rows");
    return make_sampled_field(std::move(s), std::move(p));
}

void write_truth_sidecar(const std::string& path, const ZooCurve& zoo) {
    json doc;
    doc["family"] = to_string(zoo.spec.family);
    json params;
    switch (zoo.spec.family) {
        case ZooFamily::CircularHelix: params["a"] = zoo.spec.a; params["b"] = zoo.spec.b; break;
        case ZooFamily::GeneralHelix: params["phi"] = zoo.spec.phi; break;
        case ZooFamily::Salkowski:
        case ZooFamily::AntiSalkowski: params["c"] = zoo.spec.c; break;
        case ZooFamily::ConstantPrecession: params["mu"] = zoo.spec.mu; params["m"] = zoo.spec.m; break;
        case ZooFamily::PlaneCircle: params["r"] = zoo.spec.r; break;
        case ZooFamily::DesignedKSlant: params["k"] = zoo.spec.k; params["c"] = zoo.spec.c; break;
    }
    doc["parameters"] = std::move(params);
    doc["span"] = json::array({zoo.curve.grid.front(), zoo.curve.grid.back()});
    doc["samples"] = zoo.curve.size();
    json t;
    t["k_star"] = zoo.truth.k_star;
    t["cot_phi"] = zoo.truth.cot_phi;
    json sc;
    for (const auto& [k, v] : zoo.truth.sigma_constants) sc[std::to_string(k)] = v;
    t["sigma_constants"] = std::move(sc);
    t["axis"] = zoo.truth.axis ? vector_to_json(*zoo.truth.axis) : json(nullptr);
    doc["truth"] = std::move(t);
    doc["note"] = zoo.note;

    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << dump_deterministic(doc) << '\n';
}

std::optional<ZooTruth> read_truth_sidecar(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    json doc;
    try {
        f >> doc;
    } catch (const std::exception&) {
        throw Error("cannot parse truth sidecar " + path);
    }
    ZooTruth t;
    t.k_star = doc.at("truth").at("k_star").get<int>();
    t.cot_phi = doc.at("truth").at("cot_phi").get<double>();
    if (doc.at("truth").contains("sigma_constants"))
        for (auto& [k, v] : doc["truth"]["sigma_constants"].items())
            t.sigma_constants[std::stoi(k)] = v.get<double>();
    if (doc.at("truth").contains("axis") && !doc["truth"]["axis"].is_null()) {
        auto a = doc["truth"]["axis"];
        t.axis = Vector3{a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
    }
    return t;
}

std::string dump_deterministic(const json& j, int indent) {
    std::string out;
    dump_value(j, indent, 0, out);
    return out;
}

std::string report_samples_csv(const ArcSampledCurve& curve, const SlantProfile& profile) {
    std::ostringstream os;
    os << "s,kappa,tau,valid";
    for (int k = 0; k <= profile.levels(); ++k) os << ",sigma" << k << ",sigma" << k << "_valid";
    os << '\n';
    for (std::size_t i = 0; i < curve.size(); ++i) {
        os << format_shortest(curve.grid[i]) << ',' << format_shortest(profile.kappas[0].values[i])
           << ',' << format_shortest(profile.taus[0].values[i]) << ','
           << int(profile.kappas[0].mask[i] != 0);
        for (int k = 0; k <= profile.levels(); ++k) {
            const auto& s = profile.sigmas[std::size_t(k)];
            os << ',' << (s.mask[i] ? format_shortest(s.values[i]) : "") << ','
               << int(s.mask[i] != 0);
        }
        os << '\n';
    }
    return os.str();
}

std::vector<std::string> export_plotdata(const ArcSampledCurve& curve, const AnalysisConfig& config,
                                         const std::string& stem) {
    const FrenetApparatus app = frenet_apparatus(curve);
    const SlantProfile profile = sigma_recursion(app, config.levels);
    const ClassificationReport rep =
        classify(curve, app, profile, config.const_tol, config.stat_trim);

    std::vector<std::string> files;
    auto open = [&files](const std::string& name) {
        std::ofstream f(name, std::ios::binary);
        if (!f) throw Error("cannot open " + name + " for writing");
        files.push_back(name);
        return f;
    };

    for (int k = 0; k <= profile.levels(); ++k) {
        auto f = open(stem + "_sigma" + std::to_string(k) + ".csv");
        f << "s,sigma" << k << ",valid\n";
        const auto& s = profile.sigmas[std::size_t(k)];
        for (std::size_t i = 0; i < s.size(); ++i)
            f << format_shortest(s.grid[i]) << ',' << (s.mask[i] ? format_shortest(s.values[i]) : "")
              << ',' << int(s.mask[i] != 0) << '\n';
    }

    const std::pair<IndicatrixKind, std::string> kinds[] = {
        {IndicatrixKind::Tangent, "t"},
        {IndicatrixKind::Normal, "n"},
        {IndicatrixKind::Binormal, "b"},
        {IndicatrixKind::Psi3, "psi3"},
    };
    for (const auto& [kind, tag] : kinds) {
        try {
            const SampledVectorField field = indicatrix_curve(app, kind);
            auto f = open(stem + "_indicatrix_" + tag + ".csv");
            f << "s,x,y,z\n";
            for (std::size_t i = 0; i < field.size(); ++i) {
                if (!field.valid(i)) continue;
                const Vector3& v = field.vectors[i];
                f << format_shortest(field.grid[i]) << ',' << format_shortest(v.x) << ','
                  << format_shortest(v.y) << ',' << format_shortest(v.z) << '\n';
            }
        } catch (const Error&) {
            // kind undefined for this curve; no file
        }
    }

    if (rep.k_star && rep.axis) {
        auto f = open(stem + "_axis.csv");
        f << "x,y,z,phi,cot_phi,k_star\n";
        f << format_shortest(rep.axis->x) << ',' << format_shortest(rep.axis->y) << ','
          << format_shortest(rep.axis->z) << ',' << format_shortest(rep.phi) << ','
          << format_shortest(rep.cot_phi) << ',' << *rep.k_star << '\n';
    }
    return files;
}

} // namespace slant
