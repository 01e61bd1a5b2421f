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
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slantcurve/analysis.hpp"

namespace py = pybind11;
using namespace slant;

namespace {

using PointList = std::vector<std::array<double, 3>>;

SampledVectorField field_from(const std::vector<double>& s, const PointList& points) {
    if (s.size() != points.size()) throw InvalidValue("s and points must have the same length");
    std::vector<Vector3> v(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        v[i] = checked_vector(points[i][0], points[i][1], points[i][2]);
    return make_sampled_field(s, std::move(v));
}

py::dict classification_dict(const ClassificationReport& rep) {
    py::dict d;
    d["k_star"] = rep.k_star ? py::object(py::int_(*rep.k_star)) : py::none();
    d["cot_phi"] = rep.k_star ? py::object(py::float_(rep.cot_phi)) : py::none();
    d["phi"] = rep.k_star ? py::object(py::float_(rep.phi)) : py::none();
    if (rep.axis)
        d["axis"] = std::array<double, 3>{rep.axis->x, rep.axis->y, rep.axis->z};
    else
        d["axis"] = py::none();
    d["residual_sigma"] = rep.k_star ? py::object(py::float_(rep.residual_sigma)) : py::none();
    d["residual_axis"] = rep.axis ? py::object(py::float_(rep.residual_axis)) : py::none();
    py::list per_k;
    for (const auto& st : rep.per_k) {
        py::dict e;
        e["k"] = st.k;
        e["dev"] = st.dev;
        e["mean"] = st.mean;
        e["count"] = st.count;
        per_k.append(e);
    }
    d["per_k"] = per_k;
    return d;
}

ZooSpec spec_from_kwargs(const std::string& family, double a, double b, double phi, double c,
                         double mu, double m, double r, int k,
                         std::optional<std::pair<double, double>> span,
                         std::size_t samples) {
    const auto fam = family_from_string(family);
    if (!fam) throw InvalidSpec("unknown family: " + family);
    ZooSpec spec;
    spec.family = *fam;
    spec.a = a;
    spec.b = b;
    spec.phi = phi;
    spec.c = c;
    spec.mu = mu;
    spec.m = m;
    spec.r = r;
    spec.k = k;
    if (span) {
        spec.span_min = span->first;
        spec.span_max = span->second;
    }
    spec.samples = samples;
    return spec;
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "slant-helix hierarchy analysis for sampled space curves";

    py::register_exception<Error>(mod, "SlantError");

    mod.def(
        "generate",
        [](const std::string& family, double a, double b, double phi, double c, double mu, double m,
           double r, int k, std::optional<std::pair<double, double>> span, std::size_t samples) {
            const ZooCurve zoo =
                generate(spec_from_kwargs(family, a, b, phi, c, mu, m, r, k, span, samples));
            py::dict d;
            d["s"] = zoo.curve.grid;
            PointList pts(zoo.curve.size());
            for (std::size_t i = 0; i < zoo.curve.size(); ++i) {
                const Vector3& v = zoo.curve.points.vectors[i];
                pts[i] = {v.x, v.y, v.z};
            }
            d["points"] = pts;
            d["kappa"] = zoo.profile.kappa.values;
            d["tau"] = zoo.profile.tau.values;
            py::dict truth;
            truth["k_star"] = zoo.truth.k_star;
            truth["cot_phi"] = zoo.truth.cot_phi;
            py::dict sigma_constants;
            for (const auto& [level, value] : zoo.truth.sigma_constants)
                sigma_constants[py::int_(level)] = value;
            truth["sigma_constants"] = sigma_constants;
            d["truth"] = truth;
            d["note"] = zoo.note;
            return d;
        },
        py::arg("family"), py::kw_only(), py::arg("a") = 1.0, py::arg("b") = 1.0,
        py::arg("phi") = 1.0471975511965976, py::arg("c") = 0.5, py::arg("mu") = 1.0,
        py::arg("m") = 1.0, py::arg("r") = 1.0, py::arg("k") = 2, py::arg("span") = py::none(),
        py::arg("samples") = 0,
        "Generate a fixture curve with known ground truth; returns s, points, the "
        "intrinsic profile and the expected classification.");

    mod.def(
        "frenet",
        [](const std::vector<double>& s, const PointList& points) {
            const ArcSampledCurve curve = reparameterize(field_from(s, points));
            const FrenetApparatus app = frenet_apparatus(curve);
            py::dict d;
            d["s"] = curve.grid;
            auto frame_list = [&](int which) {
                PointList out(app.size());
                for (std::size_t i = 0; i < app.size(); ++i) {
                    const Frame& f = app.frames[i];
                    const Vector3& v = which == 0 ? f.t : (which == 1 ? f.n : f.b);
                    out[i] = {v.x, v.y, v.z};
                }
                return out;
            };
            d["T"] = frame_list(0);
            d["N"] = frame_list(1);
            d["B"] = frame_list(2);
            d["kappa"] = app.kappa.values;
            d["tau"] = app.tau.values;
            std::vector<bool> mask(app.size());
            for (std::size_t i = 0; i < app.size(); ++i) mask[i] = app.mask[i] != 0;
            d["mask"] = mask;
            return d;
        },
        py::arg("s"), py::arg("points"),
        "Arc-length re-parameterization followed by the Frenet apparatus.");

    mod.def(
        "analyze",
        [](const std::vector<double>& s, const PointList& points, int levels, double const_tol,
           bool verify_lemmas) {
            AnalysisConfig config;
            config.levels = levels;
            config.const_tol = const_tol;
            config.verify_lemmas = verify_lemmas;
            const ArcSampledCurve curve = reparameterize(field_from(s, points));
            const AnalysisResult res = analyze_curve(curve, config, nullptr, "python");
            py::dict d;
            d["classification"] = classification_dict(res.classification);
            d["report_json"] = dump_deterministic(res.report);
            return d;
        },
        py::arg("s"), py::arg("points"), py::kw_only(), py::arg("levels") = 4,
        py::arg("const_tol") = kDefaultConstTol, py::arg("verify_lemmas") = false,
        "Classify a sampled curve in the slant-helix hierarchy.");

    mod.def(
        "sigma_ladder",
        [](const std::vector<double>& s, const PointList& points, int levels) {
            const ArcSampledCurve curve = reparameterize(field_from(s, points));
            const FrenetApparatus app = frenet_apparatus(curve);
            const SlantProfile profile = sigma_recursion(app, levels);
            py::list out;
            for (const auto& sigma : profile.sigmas) {
                py::dict level;
                level["values"] = sigma.values;
                std::vector<bool> mask(sigma.size());
                for (std::size_t i = 0; i < sigma.size(); ++i) mask[i] = sigma.mask[i] != 0;
                level["mask"] = mask;
                out.append(level);
            }
            return out;
        },
        py::arg("s"), py::arg("points"), py::kw_only(), py::arg("levels") = 4,
        "The geodesic-curvature ladder sigma_0..sigma_K of a sampled curve.");

    mod.attr("__version__") = "0.1.0";
}
