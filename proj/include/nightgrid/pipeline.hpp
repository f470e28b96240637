#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nightgrid/compactness.hpp"
#include "nightgrid/corpus_io.hpp"
#include "nightgrid/grid_io.hpp"
#include "nightgrid/hotspot.hpp"
#include "nightgrid/stats.hpp"

namespace nightgrid {

struct PipelineConfig {
    std::filesystem::path city_table;
    std::filesystem::path output_dir;
    CoordMode coord_mode = CoordMode::PlanarMeters;
    std::vector<Region> regions_to_fit;  // empty: every region present
    std::vector<ModelVariant> model_variants{kAllModelVariants.begin(), kAllModelVariants.end()};
    std::size_t parallelism = 1;
    bool emit_svg = false;
    bool skip_errors = false;
};

/// Line-oriented key=value config. '#' starts a comment. Keys: city_table,
/// output_dir, coord_mode, regions (comma list), models (comma list of 1..5),
/// parallelism, emit_svg, skip_errors. Relative paths resolve against the
/// config file's directory. Throws UsageError on unknown keys or bad values.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// Applies NIGHTGRID_THREADS when set to a positive integer.
void apply_environment(PipelineConfig& config);

struct CityAnalysis {
    CorpusRow row;
    HotspotSet hotspots;
    CompactnessIndices indices;
};

/// Hotspots and compactness for one city. Relative raster paths resolve
/// against `base_dir`. Without an area_km2 column, the city's land area is its
/// valid-cell count times the cell area.
CityAnalysis analyze_city(const CityRecord& city, const std::filesystem::path& base_dir, CoordMode mode);

struct CityFailure {
    std::string city_id;
    std::string message;
};

struct AnalysisOutput {
    std::vector<CorpusRow> rows;  // sorted by city_id
    std::vector<CityFailure> failures;
    Json report;
};

/// Runs the full chain: per-city analysis on `parallelism` workers, then per
/// region the scaling fit with outliers, index summaries and the growth
/// models with AIC selection. Writes corpus.csv, report.json, errors.csv,
/// cities/<city_id>.json and, when enabled, the SVG plots into output_dir.
/// Output bytes do not depend on parallelism.
///
/// Throws DataError (after writing errors.csv) when a city or a regional fit
/// fails and skip_errors is off.
AnalysisOutput run_analysis(const PipelineConfig& config);

}  // namespace nightgrid
