#include "nightgrid/pipeline.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "nightgrid/csv.hpp"
#include "nightgrid/error.hpp"
#include "nightgrid/numeric.hpp"
#include "nightgrid/svg_report.hpp"

namespace nightgrid {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty()) {
            out.push_back(item);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw UsageError(fmt::format("{}: expected a boolean, got '{}'", key, v));
}

std::size_t parse_positive(std::string_view key, std::string_view v) {
    const auto d = parse_double(v);
    if (!d || *d < 1.0 || *d != static_cast<double>(static_cast<std::size_t>(*d))) {
        throw UsageError(fmt::format("{}: expected a positive integer, got '{}'", key, v));
    }
    return static_cast<std::size_t>(*d);
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

}  // namespace

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError(fmt::format("cannot read config '{}'", path.string()));
    }
    const std::filesystem::path base = path.parent_path();
    PipelineConfig config;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw UsageError(fmt::format("{}:{}: expected key=value", path.string(), line_no));
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key == "city_table") {
            config.city_table = resolve(base, value);
        } else if (key == "output_dir") {
            config.output_dir = resolve(base, value);
        } else if (key == "coord_mode") {
            config.coord_mode = parse_coord_mode(value);
        } else if (key == "regions") {
            config.regions_to_fit.clear();
            for (auto item : split_list(value)) {
                auto region = parse_region(item);
                if (!region) {
                    throw UsageError(fmt::format("regions: unknown region '{}'", item));
                }
                config.regions_to_fit.push_back(*region);
            }
        } else if (key == "models") {
            config.model_variants.clear();
            for (auto item : split_list(value)) {
                config.model_variants.push_back(model_from_number(static_cast<int>(parse_positive(key, item))));
            }
        } else if (key == "parallelism") {
            config.parallelism = parse_positive(key, value);
        } else if (key == "emit_svg") {
            config.emit_svg = parse_bool(key, value);
        } else if (key == "skip_errors") {
            config.skip_errors = parse_bool(key, value);
        } else {
            throw UsageError(fmt::format("{}:{}: unknown key '{}'", path.string(), line_no, key));
        }
    }
    return config;
}

void apply_environment(PipelineConfig& config) {
    if (const char* threads = std::getenv("NIGHTGRID_THREADS"); threads != nullptr && *threads != '\0') {
        config.parallelism = parse_positive("NIGHTGRID_THREADS", threads);
    }
}

CityAnalysis analyze_city(const CityRecord& city, const std::filesystem::path& base_dir, CoordMode mode) {
    const LuminosityGrid grid = read_ascii_grid(resolve(base_dir, city.raster_path), mode);
    CityAnalysis out;
    out.hotspots = extract_hotspots(grid);
    out.indices = compute_compactness(out.hotspots);

    CorpusRow& row = out.row;
    row.city_id = city.city_id;
    row.region = city.region;
    row.population = city.population;
    row.gdp = city.gdp;
    row.area_km2 = city.area_km2 ? *city.area_km2
                                 : static_cast<double>(grid.valid_count()) * out.hotspots.cell_area / 1e6;
    row.n_hotspots = out.hotspots.count;
    row.ct = out.hotspots.fractional_count;
    row.pi = out.indices.pi;
    row.ai = out.indices.ai;
    return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw DataError(fmt::format("cannot write '{}'", path.string()));
    }
}

void write_errors_csv(const std::filesystem::path& path, const std::vector<CityFailure>& failures) {
    std::string text = "city_id,message\n";
    for (const CityFailure& f : failures) {
        text += csv::escape(f.city_id) + "," + csv::escape(f.message) + "\n";
    }
    write_text(path, text);
}

constexpr std::array<Region, 4> kRegionOrder{Region::US, Region::EU, Region::CN, Region::Other};

}  // namespace

AnalysisOutput run_analysis(const PipelineConfig& config) {
    if (config.parallelism < 1) {
        throw UsageError("parallelism must be at least 1");
    }
    if (config.output_dir.empty()) {
        throw UsageError("output_dir is required");
    }
    std::vector<CityRecord> cities = load_city_table(config.city_table);
    std::sort(cities.begin(), cities.end(),
              [](const CityRecord& a, const CityRecord& b) { return a.city_id < b.city_id; });
    const std::filesystem::path base_dir = config.city_table.parent_path();

    // Parallel map; each slot is written by exactly one worker.
    std::vector<std::optional<CityAnalysis>> results(cities.size());
    std::vector<std::string> messages(cities.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < cities.size(); i = next++) {
            try {
                results[i] = analyze_city(cities[i], base_dir, config.coord_mode);
            } catch (const std::exception& e) {
                messages[i] = e.what();
            }
        }
    };
    {
        const std::size_t n_workers = std::min(config.parallelism, std::max<std::size_t>(cities.size(), 1));
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < n_workers; ++w) {
            pool.emplace_back(worker);
        }
        worker();
    }

    std::filesystem::create_directories(config.output_dir / "cities");
    AnalysisOutput output;
    for (std::size_t i = 0; i < cities.size(); ++i) {
        if (!results[i]) {
            output.failures.push_back({cities[i].city_id, messages[i]});
            continue;
        }
        output.rows.push_back(results[i]->row);
        Json city_json;
        city_json["hotspots"] = hotspot_summary_json(cities[i].city_id, results[i]->hotspots);
        city_json["compactness"] = compactness_json(cities[i].city_id, results[i]->indices);
        write_text(config.output_dir / "cities" / (cities[i].city_id + ".json"), city_json.dump(2) + "\n");
    }
    results.clear();

    write_errors_csv(config.output_dir / "errors.csv", output.failures);
    if (!output.failures.empty() && !config.skip_errors) {
        const CityFailure& first = output.failures.front();
        throw DataError(fmt::format("city '{}': {}{}", first.city_id, first.message,
                                    output.failures.size() > 1
                                        ? fmt::format(" (and {} more failures, see errors.csv)", output.failures.size() - 1)
                                        : std::string()));
    }

    std::vector<Region> regions = config.regions_to_fit;
    if (regions.empty()) {
        for (Region r : kRegionOrder) {
            if (std::any_of(output.rows.begin(), output.rows.end(), [r](const CorpusRow& row) { return row.region == r; })) {
                regions.push_back(r);
            }
        }
    }

    Json report;
    report["n_cities"] = cities.size();
    report["n_analyzed"] = output.rows.size();
    report["n_failed"] = output.failures.size();
    report["coord_mode"] = to_string(config.coord_mode);
    Json region_reports = Json::array();
    Json warnings = Json::array();

    std::vector<IndexObservation> index_obs;
    for (const CorpusRow& r : output.rows) {
        index_obs.push_back({r.region, r.pi, r.ai});
    }

    for (Region region : regions) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < output.rows.size(); ++i) {
            if (output.rows[i].region == region) {
                members.push_back(i);
            }
        }
        const std::string region_name(to_string(region));
        Json rj;
        rj["region"] = region_name;
        rj["n_cities"] = members.size();
        Json errors = Json::array();
        const auto fail = [&](const std::string& what, const std::exception& e) {
            const std::string message = fmt::format("region {}: {}: {}", region_name, what, e.what());
            if (!config.skip_errors) {
                throw DataError(message);
            }
            errors.push_back(message);
        };

        std::vector<ScalingObservation> scaling_obs;
        std::vector<GrowthObservation> growth_obs;
        for (std::size_t i : members) {
            const CorpusRow& r = output.rows[i];
            scaling_obs.push_back({r.city_id, r.population, static_cast<double>(r.n_hotspots)});
            growth_obs.push_back({r.city_id, r.gdp_per_km2(), r.population, r.pi, r.ai});
        }

        try {
            const ScalingFit fit = fit_scaling(scaling_obs);
            for (std::size_t k = 0; k < members.size(); ++k) {
                CorpusRow& r = output.rows[members[k]];
                r.scaling_residual = fit.residuals[k];
                r.outlier = std::abs(fit.std_residuals[k]) > kOutlierZ;
            }
            rj["scaling"] = scaling_fit_json(fit);
        } catch (const DataError& e) {
            fail("scaling fit", e);
            rj["scaling"] = nullptr;
        }

        const Region one[] = {region};
        const IndexSummaryReport summary = summarize_index(index_obs, one);
        Json summaries = Json::array();
        for (const IndexSummary& s : summary.summaries) {
            summaries.push_back(index_summary_json(s));
        }
        for (const std::string& w : summary.warnings) {
            warnings.push_back(w);
        }
        rj["index_summaries"] = std::move(summaries);

        std::vector<RegressionFit> fits;
        Json models = Json::array();
        for (ModelVariant v : config.model_variants) {
            try {
                fits.push_back(fit_growth_model(growth_obs, v));
                models.push_back(regression_fit_json(fits.back()));
            } catch (const DataError& e) {
                fail(fmt::format("model {}", model_number(v)), e);
            }
        }
        rj["models"] = std::move(models);
        if (!fits.empty()) {
            const RegressionFit& best = fits[select_model(fits)];
            rj["selected_model"] = {{"model", model_number(best.variant)}, {"variant", model_name(best.variant)},
                                    {"aic", best.aic}};
        } else {
            rj["selected_model"] = nullptr;
        }
        rj["errors"] = std::move(errors);
        region_reports.push_back(std::move(rj));
    }
    report["regions"] = std::move(region_reports);
    report["warnings"] = std::move(warnings);

    std::ostringstream corpus;
    write_corpus_results(output.rows, corpus);
    write_text(config.output_dir / "corpus.csv", corpus.str());
    write_text(config.output_dir / "report.json", report.dump(2) + "\n");
    if (config.emit_svg) {
        write_report(output.rows, config.output_dir);
    }
    output.report = std::move(report);
    return output;
}

}  // namespace nightgrid
