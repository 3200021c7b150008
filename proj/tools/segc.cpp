// segc: image-complexity analysis and macro-level design advice for
// segmentation pipelines. Subcommands: complexity, degrade, fit, advise,
// reproduce, synth.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "segc/advisor.hpp"
#include "segc/complexity.hpp"
#include "segc/degrade.hpp"
#include "segc/fixture.hpp"
#include "segc/manifest.hpp"
#include "segc/netpbm.hpp"
#include "segc/regress.hpp"
#include "segc/reproduce.hpp"
#include "segc/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int default_jobs() {
    if (const char* env = std::getenv("SEGC_JOBS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

void write_output(const std::string& path, const std::string& content, bool force) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    if (fs::exists(path) && !force)
        throw segc::ValueError("output path " + path + " exists; pass --force to overwrite");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw segc::IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw segc::IoError("short write to " + path);
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw segc::IoError("cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

double parse_number(const std::string& s, const std::string& context) {
    if (s == "null") throw segc::ValueError(context + ": undefined value cannot be fitted");
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw segc::ValueError(context + ": cannot parse number '" + s + "'");
    }
}

struct FitInputs {
    std::vector<std::pair<std::string, std::vector<double>>> measures;  // DE/MNF/MDF/PC columns
    std::vector<std::pair<int, std::vector<double>>> targets;           // per-factor E or D
};

FitInputs fixture_inputs(bool dice_target) {
    FitInputs in;
    for (const char* m : segc::fixture::kMeasureNames)
        in.measures.emplace_back(m, segc::fixture::measure_column(m));
    for (int f : segc::fixture::kFactors)
        in.targets.emplace_back(f, segc::fixture::target_column(f, dice_target));
    return in;
}

// Joins concatenable outputs of `segc degrade` (one table with a dataset
// column) with one `segc complexity` report per dataset, matched by order of
// first appearance in the degrade table.
FitInputs file_inputs(const std::string& degrade_table,
                      const std::vector<std::string>& complexity_reports, bool dice_target) {
    auto table = read_csv(degrade_table);
    if (table.empty() || table[0].size() < 9 || table[0][0] != "dataset")
        throw segc::ValueError(degrade_table + ": expected a degrade table header");
    std::vector<std::string> datasets;
    std::map<std::string, std::map<int, double>> values;  // dataset -> factor -> target
    for (std::size_t r = 1; r < table.size(); ++r) {
        const auto& row = table[r];
        if (row[0] == "dataset") continue;  // repeated header from concatenation
        if (row.size() != table[0].size())
            throw segc::ValueError(degrade_table + ": ragged row " + std::to_string(r));
        const std::string& ds = row[0];
        if (values.find(ds) == values.end()) datasets.push_back(ds);
        const int factor = static_cast<int>(parse_number(row[1], "factor"));
        // columns: dataset,factor,se,sp,a,ba,d,j,e
        values[ds][factor] = parse_number(row[dice_target ? 6 : 8], "degrade table");
    }
    if (complexity_reports.size() != datasets.size())
        throw segc::ValueError("dataset row mismatch: degrade table has " +
                               std::to_string(datasets.size()) + " datasets but " +
                               std::to_string(complexity_reports.size()) +
                               " complexity reports were given");

    FitInputs in;
    in.measures = {{"DE", {}}, {"MNF", {}}, {"MDF", {}}, {"PC", {}}};
    for (const auto& path : complexity_reports) {
        auto rep = read_csv(path);
        if (rep.empty() || rep[0].size() < 5 || rep[0][0] != "path")
            throw segc::ValueError(path + ": expected a complexity report header");
        bool found = false;
        for (std::size_t r = 1; r < rep.size(); ++r) {
            if (rep[r][0] != "aggregate") continue;
            for (int m = 0; m < 4; ++m)
                in.measures[m].second.push_back(parse_number(rep[r][m + 1], path));
            found = true;
        }
        if (!found) throw segc::ValueError(path + ": no aggregate row");
    }

    std::vector<int> factors;
    for (const auto& [f, v] : values.at(datasets[0])) factors.push_back(f);
    for (int f : factors) {
        std::vector<double> col;
        for (const auto& ds : datasets) {
            auto it = values.at(ds).find(f);
            if (it == values.at(ds).end())
                throw segc::ValueError("dataset row mismatch: " + ds + " has no factor " +
                                       std::to_string(f));
            col.push_back(it->second);
        }
        in.targets.emplace_back(f, std::move(col));
    }
    return in;
}

json grid_json(const std::vector<segc::FitTableRow>& rows) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json arr = json::array();
    for (const auto& row : rows)
        arr.push_back({{"measure", row.measure},
                       {"factor", row.factor},
                       {"dof", row.dof},
                       {"r2", opt(row.diag.r2)},
                       {"ar2", opt(row.diag.ar2)},
                       {"rmse", row.diag.rmse},
                       {"mae", row.diag.mae},
                       {"aic", std::isinf(row.diag.aic) ? json(nullptr) : json(row.diag.aic)},
                       {"aicc", row.diag.aicc && !std::isinf(*row.diag.aicc) ? json(*row.diag.aicc)
                                                                             : json(nullptr)}});
    return arr;
}

struct CommonOpts {
    std::string output;
    std::string format = "csv";
    bool force = false;
    bool paper_format = false;
    int jobs = default_jobs();
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_format = true) {
    cmd->add_option("-o,--output", opts.output, "output file (stdout when omitted)");
    if (with_format)
        cmd->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--force", opts.force, "overwrite an existing output file");
    cmd->add_flag("--paper-format", opts.paper_format, "fixed 4-decimal numeric formatting");
    cmd->add_option("--jobs", opts.jobs, "worker threads (default $SEGC_JOBS or 1)")
        ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"image complexity measures and downsampling-design advice"};
    app.require_subcommand(1);

    // --- complexity ---------------------------------------------------------
    auto* cmd_complexity = app.add_subcommand("complexity", "per-image complexity report");
    std::string cx_manifest;
    int cx_bins = segc::kDefaultSpectrumBins;
    CommonOpts cx_opts;
    cmd_complexity->add_option("--manifest", cx_manifest, "dataset manifest JSON")->required();
    cmd_complexity->add_option("--bins", cx_bins, "radial spectrum bins")
        ->check(CLI::PositiveNumber);
    add_common(cmd_complexity, cx_opts);
    cmd_complexity->callback([&] {
        auto manifest = segc::load_manifest(cx_manifest);
        auto report = segc::complexity_report(manifest, cx_bins, cx_opts.jobs);
        std::string content = cx_opts.format == "json" ? segc::to_json(report).dump(2) + "\n"
                                                       : segc::to_csv(report, cx_opts.paper_format);
        write_output(cx_opts.output, content, cx_opts.force);
    });

    // --- degrade ------------------------------------------------------------
    auto* cmd_degrade = app.add_subcommand("degrade", "mask downsampling information-loss table");
    std::string dg_manifest;
    std::vector<int> dg_factors = {2, 3, 4};
    int dg_levels = 256;
    CommonOpts dg_opts;
    cmd_degrade->add_option("--manifest", dg_manifest, "dataset manifest JSON")->required();
    cmd_degrade->add_option("--factors", dg_factors, "downsampling factors")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    cmd_degrade->add_option("--levels", dg_levels, "threshold sweep granularity")
        ->check(CLI::Range(2, 1 << 20));
    add_common(cmd_degrade, dg_opts);
    cmd_degrade->callback([&] {
        auto manifest = segc::load_manifest(dg_manifest);
        auto rows = segc::run_experiment1(manifest, dg_factors, dg_levels, dg_opts.jobs);
        std::string content;
        if (dg_opts.format == "json") {
            json arr = json::array();
            auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
            for (const auto& row : rows)
                arr.push_back({{"dataset", manifest.name},
                               {"factor", row.factor},
                               {"se", opt(row.metrics.se)},
                               {"sp", opt(row.metrics.sp)},
                               {"a", opt(row.metrics.a)},
                               {"ba", opt(row.metrics.ba)},
                               {"d", opt(row.metrics.d)},
                               {"j", opt(row.metrics.j)},
                               {"e", opt(row.metrics.e)}});
            content = arr.dump(2) + "\n";
        } else {
            content = segc::to_csv(manifest.name, rows, dg_opts.paper_format);
        }
        write_output(dg_opts.output, content, dg_opts.force);
    });

    // --- fit ----------------------------------------------------------------
    auto* cmd_fit = app.add_subcommand("fit", "polynomial fits of error vs complexity");
    bool ft_fixture = false;
    bool ft_select = false;
    std::string ft_degrade_table;
    std::vector<std::string> ft_complexity_reports;
    std::string ft_target = "e";
    std::string ft_emit_fits;
    int ft_kmax = 6;
    int ft_emit_degree = 1;
    CommonOpts ft_opts;
    cmd_fit->add_flag("--paper-fixture", ft_fixture, "fit the embedded reference study");
    cmd_fit->add_option("--degrade-table", ft_degrade_table,
                        "degrade CSV (concatenable across datasets)");
    cmd_fit->add_option("--complexity-report", ft_complexity_reports,
                        "complexity report CSV, one per dataset in degrade-table order");
    cmd_fit->add_option("--kmax", ft_kmax, "maximum polynomial degree")->check(CLI::PositiveNumber);
    cmd_fit->add_flag("--select", ft_select, "append the argmin-AICc row per measure/factor");
    cmd_fit->add_option("--target", ft_target, "fit overlap error (e) or Dice (d)")
        ->check(CLI::IsMember({"e", "d"}));
    cmd_fit->add_option("--emit-fits", ft_emit_fits, "write per-measure/fit JSON to this path");
    cmd_fit->add_option("--emit-degree", ft_emit_degree, "degree of emitted fits")
        ->check(CLI::PositiveNumber);
    add_common(cmd_fit, ft_opts);
    cmd_fit->callback([&] {
        FitInputs in;
        if (ft_fixture) {
            if (!ft_degrade_table.empty() || !ft_complexity_reports.empty())
                throw segc::ValueError("--paper-fixture excludes --degrade-table/--complexity-report");
            in = fixture_inputs(ft_target == "d");
        } else {
            if (ft_degrade_table.empty() || ft_complexity_reports.empty())
                throw segc::ValueError(
                    "need --paper-fixture, or --degrade-table plus --complexity-report files");
            in = file_inputs(ft_degrade_table, ft_complexity_reports, ft_target == "d");
        }
        auto rows = segc::fit_table(in.measures, in.targets, ft_kmax);

        std::vector<std::tuple<std::string, int, int>> selections;
        if (ft_select) {
            for (const auto& [name, x] : in.measures)
                for (const auto& [factor, y] : in.targets) {
                    auto sel = segc::select_model(x, y, ft_kmax);
                    selections.emplace_back(name, factor, sel.best_k);
                }
        }

        std::string content;
        if (ft_opts.format == "json") {
            json out = {{"grid", grid_json(rows)}};
            if (ft_select) {
                json sel = json::array();
                for (const auto& [m, f, k] : selections)
                    sel.push_back({{"measure", m}, {"factor", f}, {"best_dof", k}});
                out["selection"] = sel;
            }
            content = out.dump(2) + "\n";
        } else {
            content = segc::to_csv(rows, ft_opts.paper_format);
            if (ft_select) {
                std::vector<segc::FitTableRow> best_rows;
                for (const auto& [m, f, k] : selections)
                    for (const auto& row : rows)
                        if (row.measure == m && row.factor == f && row.dof == k) {
                            best_rows.push_back(row);
                            best_rows.back().measure = m + ":best";
                        }
                std::string best_csv = segc::to_csv(best_rows, ft_opts.paper_format);
                content += best_csv.substr(best_csv.find('\n') + 1);  // drop repeated header
            }
        }
        write_output(ft_opts.output, content, ft_opts.force);

        if (!ft_emit_fits.empty()) {
            json fits = json::object();
            for (const auto& [name, x] : in.measures) {
                json per_factor = json::object();
                for (const auto& [factor, y] : in.targets)
                    per_factor[std::to_string(factor)] =
                        segc::to_json(segc::polyfit(x, y, ft_emit_degree));
                fits[name] = per_factor;
            }
            write_output(ft_emit_fits, fits.dump(2) + "\n", ft_opts.force);
        }
    });

    // --- advise -------------------------------------------------------------
    auto* cmd_advise = app.add_subcommand("advise", "downsampling factor and depth recommendation");
    bool ad_fixture = false;
    std::string ad_manifest, ad_fits_path;
    std::string ad_measure = "mdf";
    double ad_eps = segc::kDefaultErrorBudget;
    double ad_tau = segc::kDefaultDepthTau;
    int ad_degree = 1;
    int ad_bins = segc::kDefaultSpectrumBins;
    std::optional<double> ad_mdf, ad_complexity;
    CommonOpts ad_opts;
    cmd_advise->add_flag("--paper-fixture", ad_fixture, "use fits from the embedded study");
    cmd_advise->add_option("--fits", ad_fits_path, "fits JSON from `segc fit --emit-fits`");
    cmd_advise->add_option("--manifest", ad_manifest, "compute complexity from this dataset");
    cmd_advise
        ->add_option("--measure", ad_measure, "complexity measure driving the factor choice")
        ->check(CLI::IsMember({"mdf", "mnf", "de", "pc"}));
    cmd_advise->add_option("--mdf", ad_mdf, "median frequency of the dataset");
    cmd_advise->add_option("--complexity", ad_complexity,
                           "value of --measure when it is not mdf");
    cmd_advise->add_option("--epsilon", ad_eps, "acceptable predicted-error budget")
        ->check(CLI::PositiveNumber);
    cmd_advise->add_option("--tau", ad_tau, "median-frequency depth threshold");
    cmd_advise->add_option("--degree", ad_degree, "fit degree in fixture mode")
        ->check(CLI::PositiveNumber);
    cmd_advise->add_option("--bins", ad_bins, "radial spectrum bins for --manifest")
        ->check(CLI::PositiveNumber);
    add_common(cmd_advise, ad_opts, false);
    cmd_advise->callback([&] {
        std::string measure_uc = ad_measure;
        for (char& c : measure_uc) c = static_cast<char>(std::toupper(c));

        if (!ad_manifest.empty()) {
            auto report =
                segc::complexity_report(segc::load_manifest(ad_manifest), ad_bins, ad_opts.jobs);
            ad_mdf = report.mdf;
            if (measure_uc == "MDF") ad_complexity = report.mdf;
            if (measure_uc == "MNF") ad_complexity = report.mnf;
            if (measure_uc == "DE") ad_complexity = report.de;
            if (measure_uc == "PC") ad_complexity = report.pc;
        }
        if (measure_uc == "MDF" && !ad_complexity) ad_complexity = ad_mdf;
        if (!ad_mdf)
            throw segc::ValueError("median frequency is undefined or missing; pass --mdf or a "
                                   "--manifest with non-degenerate images");
        if (!ad_complexity)
            throw segc::ValueError("no value for measure " + ad_measure +
                                   "; pass --complexity or a --manifest");

        std::map<int, segc::PolyFit> fits;
        if (ad_fixture) {
            const auto x = segc::fixture::measure_column(measure_uc);
            for (int f : segc::fixture::kFactors)
                fits[f] = segc::polyfit(x, segc::fixture::target_column(f), ad_degree);
        } else if (!ad_fits_path.empty()) {
            std::ifstream in(ad_fits_path);
            if (!in) throw segc::IoError("cannot open " + ad_fits_path);
            json j;
            in >> j;
            if (!j.contains(measure_uc))
                throw segc::ValueError(ad_fits_path + " has no fits for " + measure_uc);
            for (const auto& [factor, fit] : j.at(measure_uc).items())
                fits[std::stoi(factor)] = segc::polyfit_from_json(fit);
        } else {
            throw segc::ValueError("need --paper-fixture or --fits");
        }

        auto rec = segc::recommend(fits, *ad_complexity, ad_mdf, measure_uc, ad_eps, ad_tau);
        write_output(ad_opts.output, segc::to_json(rec).dump(2) + "\n", ad_opts.force);
    });

    // --- reproduce ----------------------------------------------------------
    auto* cmd_reproduce = app.add_subcommand("reproduce",
                                             "re-derive the embedded reference fit study and "
                                             "diff it against the expected tables");
    std::string rp_output;
    CommonOpts rp_opts;
    cmd_reproduce->add_option("--output", rp_output, "output directory")->required();
    cmd_reproduce->add_flag("--force", rp_opts.force, "overwrite existing outputs");
    cmd_reproduce->add_option("--jobs", rp_opts.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd_reproduce->callback([&] {
        auto rep = segc::run_reproduction(rp_opts.jobs);
        fs::create_directories(rp_output);
        auto out_path = [&](const char* name) { return (fs::path(rp_output) / name).string(); };
        write_output(out_path("study.csv"), segc::fixture_study_csv(), rp_opts.force);
        write_output(out_path("fit_table.csv"), segc::to_csv(rep.grid), rp_opts.force);
        write_output(out_path("selection.csv"), segc::selection_csv(rep), rp_opts.force);
        std::string checks;
        for (const auto& line : rep.lines) checks += line + "\n";
        checks += rep.all_ok() ? "reproduction OK\n" : "reproduction FAILED\n";
        write_output(out_path("checks.txt"), checks, rp_opts.force);
        std::cout << checks;
        if (!rep.all_ok()) throw segc::NumericError("reproduction checks failed");
    });

    // --- synth --------------------------------------------------------------
    auto* cmd_synth = app.add_subcommand("synth", "deterministic synthetic rasters for testing");
    std::string sy_kind, sy_out;
    int sy_width = 128, sy_height = 128, sy_count = 8, sy_steps = 0;
    double sy_radius = 40.0;
    std::vector<int> sy_rect;
    std::uint64_t sy_seed = 1;
    bool sy_force = false;
    cmd_synth->add_option("--kind", sy_kind, "disk | rectangle | vessels | noise")
        ->required()
        ->check(CLI::IsMember({"disk", "rectangle", "vessels", "noise"}));
    cmd_synth->add_option("--width", sy_width)->check(CLI::PositiveNumber);
    cmd_synth->add_option("--height", sy_height)->check(CLI::PositiveNumber);
    cmd_synth->add_option("--radius", sy_radius, "disk radius");
    cmd_synth->add_option("--rect", sy_rect, "x0 y0 w h")->expected(4);
    cmd_synth->add_option("--count", sy_count, "vessel polyline count")->check(CLI::PositiveNumber);
    cmd_synth->add_option("--steps", sy_steps, "vessel walk steps (0 = auto)");
    cmd_synth->add_option("--seed", sy_seed, "generator seed");
    cmd_synth->add_option("-o,--output", sy_out, "output .pbm (masks) or .pgm (noise)")->required();
    cmd_synth->add_flag("--force", sy_force);
    cmd_synth->callback([&] {
        if (fs::exists(sy_out) && !sy_force)
            throw segc::ValueError("output path " + sy_out + " exists; pass --force to overwrite");
        if (sy_kind == "noise") {
            segc::write_gray(sy_out, segc::synth_noise(sy_width, sy_height, sy_seed));
            return;
        }
        segc::BinaryMask mask;
        if (sy_kind == "disk") {
            mask = segc::synth_disk(sy_width, sy_height, sy_radius);
        } else if (sy_kind == "rectangle") {
            if (sy_rect.size() != 4) throw segc::ValueError("rectangle needs --rect x0 y0 w h");
            mask = segc::synth_rectangle(sy_width, sy_height, sy_rect[0], sy_rect[1], sy_rect[2],
                                         sy_rect[3]);
        } else {
            mask = segc::synth_vessels(sy_width, sy_height, sy_count, sy_seed, sy_steps);
        }
        segc::write_mask(sy_out, mask);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const segc::ValueError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const segc::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const segc::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
