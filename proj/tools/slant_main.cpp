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
#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "slantcurve/analysis.hpp"

namespace fs = std::filesystem;
using namespace slant;

namespace {

// exit codes: 0 success, 2 input error, 3 no classification, 4 degenerate geometry
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoClassification = 3;
constexpr int kExitDegenerate = 4;

bool is_degenerate_error(const Error& e) {
    return dynamic_cast<const DegenerateCurve*>(&e) || dynamic_cast<const SingularSpeed*>(&e) ||
           dynamic_cast<const MaskedEverywhere*>(&e) || dynamic_cast<const VanishingDerivative*>(&e) ||
           dynamic_cast<const EmptyProfile*>(&e) || dynamic_cast<const NegativeKappa*>(&e);
}

struct SpanOption {
    double lo = 0.0, hi = 0.0;
    bool set = false;
};

void add_span_option(CLI::App* cmd, SpanOption& span) {
    cmd->add_option_function<std::string>(
        "--span",
        [&span](const std::string& text) {
            const auto colon = text.find(':');
            if (colon == std::string::npos) throw CLI::ValidationError("--span expects lo:hi");
            try {
                span.lo = std::stod(text.substr(0, colon));
                span.hi = std::stod(text.substr(colon + 1));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--span expects numeric lo:hi");
            }
            span.set = true;
        },
        "parameter span as lo:hi (family default if omitted)");
}

struct FamilyParams {
    double a = 1.0, b = 1.0, phi = 1.0471975511965976, c = 0.5, mu = 1.0, m = 1.0, r = 1.0;
    int k = 2;
};

void add_family_params(CLI::App* cmd, FamilyParams& p) {
    cmd->add_option("--a", p.a, "helix radius");
    cmd->add_option("--b", p.b, "helix pitch");
    cmd->add_option("--phi", p.phi, "constant slope angle (radians)");
    cmd->add_option("--c", p.c, "constant ladder value for slant fixtures");
    cmd->add_option("--mu", p.mu, "precession frequency");
    cmd->add_option("--m", p.m, "precession slope parameter");
    cmd->add_option("--r", p.r, "circle radius");
    cmd->add_option("--k", p.k, "designed slant level (2 or 3)");
}

ZooSpec spec_from(const std::string& family, const FamilyParams& p, const SpanOption& span,
                  std::size_t samples) {
    const auto fam = family_from_string(family);
    if (!fam) throw InvalidSpec("unknown family: " + family);
    ZooSpec spec;
    spec.family = *fam;
    spec.a = p.a;
    spec.b = p.b;
    spec.phi = p.phi;
    spec.c = p.c;
    spec.mu = p.mu;
    spec.m = p.m;
    spec.r = p.r;
    spec.k = p.k;
    if (span.set) {
        spec.span_min = span.lo;
        spec.span_max = span.hi;
    }
    spec.samples = samples;
    return spec;
}

double default_const_tol() {
    if (const char* env = std::getenv("SLANT_DEFAULT_TOL")) {
        try {
            const double v = std::stod(env);
            if (v > 0.0) return v;
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring unparseable SLANT_DEFAULT_TOL\n";
    }
    return kDefaultConstTol;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << text;
}

std::string sidecar_path_for(const std::string& points_path) {
    std::string p = points_path;
    const std::string ext = ".csv";
    if (p.size() > ext.size() && p.substr(p.size() - ext.size()) == ext)
        p = p.substr(0, p.size() - ext.size());
    return p + ".truth.json";
}

struct AnalyzeArgs {
    std::string input;
    std::string zoo_family;
    std::string truth_path;
    std::string out;
    std::string batch_dir;
    FamilyParams params;
    SpanOption span;
    std::size_t samples = 0;
    AnalysisConfig config;
    bool tol_set = false;
};

int run_analysis_one(const AnalyzeArgs& args, const std::string& input_path, std::string* rendered) {
    std::optional<ZooTruth> truth;
    ArcSampledCurve curve;
    std::string source;

    if (!args.zoo_family.empty()) {
        const ZooCurve zoo = generate(spec_from(args.zoo_family, args.params, args.span, args.samples));
        curve = reparameterize(zoo.curve.points);
        truth = zoo.truth;
        source = "zoo:" + args.zoo_family;
    } else {
        const SampledVectorField raw = read_points_csv(input_path);
        curve = reparameterize(raw);
        source = input_path;
        std::string sidecar = args.truth_path.empty() ? sidecar_path_for(input_path) : args.truth_path;
        if (!args.truth_path.empty() || fs::exists(sidecar)) truth = read_truth_sidecar(sidecar);
    }

    const AnalysisResult res = analyze_curve(curve, args.config, truth ? &*truth : nullptr, source);

    if (args.config.format == "csv") {
        const FrenetApparatus app = frenet_apparatus(curve);
        const SlantProfile profile = sigma_recursion(app, args.config.levels);
        *rendered = report_samples_csv(curve, profile);
    } else {
        *rendered = dump_deterministic(res.report) + "\n";
    }
    return res.classification.k_star ? kExitOk : kExitNoClassification;
}

int cmd_analyze(const AnalyzeArgs& args) {
    if (!args.batch_dir.empty()) {
        std::vector<std::string> inputs;
        for (const auto& entry : fs::directory_iterator(args.batch_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".csv")
                inputs.push_back(entry.path().string());
        std::sort(inputs.begin(), inputs.end());
        json summary = json::array();
        for (const auto& path : inputs) {
            json item;
            item["file"] = path;
            try {
                AnalyzeArgs one = args;
                one.batch_dir.clear();
                std::string rendered;
                const int status = run_analysis_one(one, path, &rendered);
                item["status"] = status;
                json rep = json::parse(rendered);
                item["classification"] = rep["classification"];
            } catch (const Error& e) {
                item["status"] = is_degenerate_error(e) ? kExitDegenerate : kExitInput;
                item["error"] = e.what();
            }
            summary.push_back(std::move(item));
        }
        const std::string text = dump_deterministic(summary) + "\n";
        if (args.out.empty())
            std::cout << text;
        else
            write_text(args.out, text);
        return kExitOk;
    }

    std::string rendered;
    const int status = run_analysis_one(args, args.input, &rendered);
    if (args.out.empty())
        std::cout << rendered;
    else
        write_text(args.out, rendered);
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"slant helix analysis toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a fixture curve with known ground truth");
    std::string gen_family;
    gen->add_option("family", gen_family, "fixture family")->required();
    FamilyParams gen_params;
    add_family_params(gen, gen_params);
    SpanOption gen_span;
    add_span_option(gen, gen_span);
    std::size_t gen_samples = 0;
    gen->add_option("--samples", gen_samples, "sample count (family default if omitted)");
    std::string gen_out, gen_truth_out;
    gen->add_option("--out", gen_out, "points CSV path (default <family>.csv)");
    gen->add_option("--truth-out", gen_truth_out, "truth sidecar path (default <out>.truth.json)");

    // analyze
    auto* ana = app.add_subcommand("analyze", "classify a curve and report the slant ladder");
    AnalyzeArgs ana_args;
    ana->add_option("--input", ana_args.input, "points CSV to analyze");
    ana->add_option("--zoo", ana_args.zoo_family, "analyze a generated fixture instead of a file");
    add_family_params(ana, ana_args.params);
    add_span_option(ana, ana_args.span);
    ana->add_option("--samples", ana_args.samples, "sample count for --zoo");
    ana->add_option("--K", ana_args.config.levels, "deepest ladder level to evaluate")
        ->check(CLI::Range(0, kMaxLadderDepth));
    auto* tol_opt = ana->add_option("--const-tol", ana_args.config.const_tol,
                                    "relative dispersion tolerance for constancy");
    ana->add_option("--trim", ana_args.config.stat_trim,
                    "run-edge samples excluded from constancy statistics");
    ana->add_flag("--verify-lemmas", ana_args.config.verify_lemmas,
                  "add the indicatrix oracle block to the report");
    ana->add_option("--format", ana_args.config.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    ana->add_option("--truth", ana_args.truth_path, "truth sidecar to compare against");
    ana->add_option("--out", ana_args.out, "report path (stdout if omitted)");
    ana->add_option("--batch", ana_args.batch_dir, "analyze every .csv in a directory");

    // export-plotdata
    auto* exp = app.add_subcommand("export-plotdata", "emit plot-ready CSV files");
    AnalyzeArgs exp_args;
    exp->add_option("--input", exp_args.input, "points CSV to analyze");
    exp->add_option("--zoo", exp_args.zoo_family, "use a generated fixture instead of a file");
    add_family_params(exp, exp_args.params);
    add_span_option(exp, exp_args.span);
    exp->add_option("--samples", exp_args.samples, "sample count for --zoo");
    exp->add_option("--K", exp_args.config.levels, "deepest ladder level to evaluate")
        ->check(CLI::Range(0, kMaxLadderDepth));
    auto* exp_tol_opt = exp->add_option("--const-tol", exp_args.config.const_tol,
                                        "relative dispersion tolerance for constancy");
    std::string exp_stem = "out";
    exp->add_option("--stem", exp_stem, "output file stem");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (gen->parsed()) {
            const ZooCurve zoo =
                generate(spec_from(gen_family, gen_params, gen_span, gen_samples));
            const std::string out = gen_out.empty() ? gen_family + ".csv" : gen_out;
            const std::string truth_out =
                gen_truth_out.empty() ? sidecar_path_for(out) : gen_truth_out;
            write_points_csv(out, zoo.curve);
            write_truth_sidecar(truth_out, zoo);
            if (!zoo.note.empty()) std::cerr << "note: " << zoo.note << '\n';
            return kExitOk;
        }
        if (ana->parsed()) {
            if (ana_args.input.empty() && ana_args.zoo_family.empty() && ana_args.batch_dir.empty())
                throw Error("analyze needs --input, --zoo, or --batch");
            if (!tol_opt->count()) ana_args.config.const_tol = default_const_tol();
            return cmd_analyze(ana_args);
        }
        if (exp->parsed()) {
            if (exp_args.input.empty() && exp_args.zoo_family.empty())
                throw Error("export-plotdata needs --input or --zoo");
            if (!exp_tol_opt->count()) exp_args.config.const_tol = default_const_tol();
            ArcSampledCurve curve;
            if (!exp_args.zoo_family.empty()) {
                const ZooCurve zoo = generate(
                    spec_from(exp_args.zoo_family, exp_args.params, exp_args.span, exp_args.samples));
                curve = reparameterize(zoo.curve.points);
            } else {
                curve = reparameterize(read_points_csv(exp_args.input));
            }
            export_plotdata(curve, exp_args.config, exp_stem);
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_degenerate_error(e) ? kExitDegenerate : kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
