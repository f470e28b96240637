// nightgrid: hotspot extraction, compactness indices and growth regressions
// on nighttime-luminosity rasters.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nightgrid/compactness.hpp"
#include "nightgrid/corpus_io.hpp"
#include "nightgrid/error.hpp"
#include "nightgrid/grid_io.hpp"
#include "nightgrid/hotspot.hpp"
#include "nightgrid/pipeline.hpp"
#include "nightgrid/stats.hpp"
#include "nightgrid/svg_report.hpp"
#include "nightgrid/synth.hpp"

namespace fs = std::filesystem;
using namespace nightgrid;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

void print_json(const Json& j) {
    std::cout << j.dump(2) << '\n';
}

std::vector<Region> regions_in(const std::vector<CorpusRow>& rows, const std::string& only) {
    if (!only.empty()) {
        auto r = parse_region(only);
        if (!r) {
            throw UsageError(fmt::format("unknown region '{}'", only));
        }
        return {*r};
    }
    std::vector<Region> out;
    for (Region r : {Region::US, Region::EU, Region::CN, Region::Other}) {
        for (const CorpusRow& row : rows) {
            if (row.region == r) {
                out.push_back(r);
                break;
            }
        }
    }
    return out;
}

// Models 2 and 3 use PI, 4 and 5 use AI. --index is optional and must agree.
ModelVariant resolve_model(int number, const std::string& index) {
    const ModelVariant variant = model_from_number(number);
    if (index.empty() || variant == ModelVariant::PopOnly) {
        return variant;
    }
    const std::string_view uses = number <= 3 ? "pi" : "ai";
    if (index != uses) {
        throw UsageError(fmt::format("model {} uses {}, not {}", number, uses, index));
    }
    return variant;
}

int run(int argc, char** argv) {
    CLI::App app{"Urban hotspot analysis on nighttime-luminosity rasters"};
    app.require_subcommand(1);

    std::string coord_mode = "planar_meters";
    std::string city_id = "city";

    // hotspots
    auto* hotspots = app.add_subcommand("hotspots", "Extract Lorenz-threshold hotspots from one raster");
    std::string raster;
    std::string hotspot_csv;
    hotspots->add_option("raster", raster, "ESRI ASCII grid")->required();
    hotspots->add_option("--coord-mode", coord_mode, "planar_meters | geographic_degrees");
    hotspots->add_option("--city-id", city_id, "Identifier echoed in the JSON summary");
    hotspots->add_option("--csv", hotspot_csv, "Write hotspot cells (row,col,x_m,y_m,value) to this file");

    // compact
    auto* compact = app.add_subcommand("compact", "Proximity and Agglomeration indices of one raster's hotspots");
    compact->add_option("raster", raster, "ESRI ASCII grid")->required();
    compact->add_option("--coord-mode", coord_mode, "planar_meters | geographic_degrees");
    compact->add_option("--city-id", city_id, "Identifier echoed in the JSON output");

    // fit-scaling
    auto* fit_scaling_cmd = app.add_subcommand("fit-scaling", "Fit N = alpha P^beta per region from a corpus CSV");
    std::string corpus_path;
    std::string region_filter;
    bool pooled = false;
    fit_scaling_cmd->add_option("corpus", corpus_path, "Corpus results CSV")->required();
    fit_scaling_cmd->add_option("--region", region_filter, "Only this region (US, EU, CN, other)");
    fit_scaling_cmd->add_flag("--pooled", pooled, "Fit all cities together instead of per region");

    // regress
    auto* regress = app.add_subcommand("regress", "Fit one growth model per region from a corpus CSV");
    std::string index_name;
    int model = 0;
    regress->add_option("corpus", corpus_path, "Corpus results CSV")->required();
    regress->add_option("--index", index_name, "Compactness index")->check(CLI::IsMember({"pi", "ai"}));
    regress->add_option("--model", model, "Model 1..5")->required()->check(CLI::Range(1, 5));
    regress->add_option("--region", region_filter, "Only this region (US, EU, CN, other)");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic city or corpus from a JSON spec");
    std::string spec_path;
    std::string synth_out;
    synth->add_option("spec", spec_path, "JSON spec")->required();
    synth->add_option("-o,--output-dir", synth_out, "Output directory")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Run the full corpus analysis from a key=value config");
    std::string config_path;
    std::optional<std::string> out_override, table_override, mode_override;
    std::optional<std::size_t> parallel_override;
    bool skip_errors = false;
    bool svg = false;
    analyze->add_option("config", config_path, "Config file")->required();
    analyze->add_option("--output-dir", out_override, "Override output_dir");
    analyze->add_option("--city-table", table_override, "Override city_table");
    analyze->add_option("--coord-mode", mode_override, "Override coord_mode");
    analyze->add_option("--parallelism", parallel_override, "Worker count (overrides NIGHTGRID_THREADS)")
        ->check(CLI::PositiveNumber);
    analyze->add_flag("--skip-errors", skip_errors, "Record failing cities in errors.csv and continue");
    analyze->add_flag("--svg", svg, "Also write SVG plots");

    // report
    auto* report = app.add_subcommand("report", "Write SVG scatter plots from a corpus CSV");
    std::string report_out;
    report->add_option("corpus", corpus_path, "Corpus results CSV")->required();
    report->add_option("out_dir", report_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (hotspots->parsed()) {
        const LuminosityGrid grid = read_ascii_grid(raster, parse_coord_mode(coord_mode));
        const HotspotSet set = extract_hotspots(grid);
        if (!hotspot_csv.empty()) {
            std::ofstream out(hotspot_csv, std::ios::binary);
            write_hotspot_csv(set, out);
            if (!out) {
                throw DataError(fmt::format("cannot write '{}'", hotspot_csv));
            }
        }
        print_json(hotspot_summary_json(city_id, set));
    } else if (compact->parsed()) {
        const LuminosityGrid grid = read_ascii_grid(raster, parse_coord_mode(coord_mode));
        print_json(compactness_json(city_id, compute_compactness(extract_hotspots(grid))));
    } else if (fit_scaling_cmd->parsed()) {
        const auto rows = read_corpus_results(fs::path(corpus_path));
        Json out;
        const auto observations = [&](std::optional<Region> region) {
            std::vector<ScalingObservation> obs;
            for (const CorpusRow& r : rows) {
                if (!region || r.region == *region) {
                    obs.push_back({r.city_id, r.population, static_cast<double>(r.n_hotspots)});
                }
            }
            return obs;
        };
        if (pooled) {
            out["pooled"] = scaling_fit_json(fit_scaling(observations(std::nullopt)));
        } else {
            Json fits = Json::array();
            for (Region region : regions_in(rows, region_filter)) {
                Json j = scaling_fit_json(fit_scaling(observations(region)));
                j["region"] = to_string(region);
                fits.push_back(std::move(j));
            }
            out["regions"] = std::move(fits);
        }
        print_json(out);
    } else if (regress->parsed()) {
        const auto rows = read_corpus_results(fs::path(corpus_path));
        const ModelVariant variant = resolve_model(model, index_name);
        Json fits = Json::array();
        for (Region region : regions_in(rows, region_filter)) {
            std::vector<GrowthObservation> obs;
            for (const CorpusRow& r : rows) {
                if (r.region == region) {
                    obs.push_back({r.city_id, r.gdp_per_km2(), r.population, r.pi, r.ai});
                }
            }
            Json j = regression_fit_json(fit_growth_model(obs, variant));
            j["region"] = to_string(region);
            fits.push_back(std::move(j));
        }
        print_json(Json{{"regions", std::move(fits)}});
    } else if (synth->parsed()) {
        std::ifstream in(spec_path);
        if (!in) {
            throw UsageError(fmt::format("cannot read spec '{}'", spec_path));
        }
        Json spec;
        try {
            spec = Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError(fmt::format("{}: {}", spec_path, e.what()));
        }
        if (spec.contains("blobs")) {
            const SynthCity city = generate_city(synth_spec_from_json(spec));
            fs::create_directories(synth_out);
            write_ascii_grid(city.grid, fs::path(synth_out) / "city.asc");
            Json truth = Json::array();
            for (const Blob& b : city.truth) {
                truth.push_back({{"row", b.row}, {"col", b.col}, {"amplitude", b.amplitude}, {"sigma", b.sigma}});
            }
            std::ofstream(fs::path(synth_out) / "truth.json") << Json{{"blobs", truth}}.dump(2) << '\n';
        } else {
            write_corpus(generate_corpus(synth_corpus_spec_from_json(spec)), synth_out);
        }
    } else if (analyze->parsed()) {
        PipelineConfig config = load_pipeline_config(config_path);
        apply_environment(config);
        if (out_override) config.output_dir = *out_override;
        if (table_override) config.city_table = *table_override;
        if (mode_override) config.coord_mode = parse_coord_mode(*mode_override);
        if (parallel_override) config.parallelism = *parallel_override;
        if (skip_errors) config.skip_errors = true;
        if (svg) config.emit_svg = true;
        if (config.city_table.empty()) {
            throw UsageError("city_table is required");
        }
        const AnalysisOutput result = run_analysis(config);
        std::cerr << fmt::format("analyzed {} cities, {} failed; outputs in {}\n", result.rows.size(),
                                 result.failures.size(), config.output_dir.string());
    } else if (report->parsed()) {
        const auto rows = read_corpus_results(fs::path(corpus_path));
        for (const fs::path& p : write_report(rows, report_out)) {
            std::cout << p.string() << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
