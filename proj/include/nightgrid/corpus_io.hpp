#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nightgrid/compactness.hpp"
#include "nightgrid/grid_io.hpp"
#include "nightgrid/hotspot.hpp"
#include "nightgrid/stats.hpp"
#include "nightgrid/synth.hpp"

namespace nightgrid {

using Json = nlohmann::ordered_json;

/// One row of the corpus results table.
struct CorpusRow {
    std::string city_id;
    Region region = Region::Other;
    double population = 0.0;
    double gdp = 0.0;
    double area_km2 = 0.0;
    std::size_t n_hotspots = 0;
    double ct = 0.0;
    double pi = 0.0;
    double ai = 0.0;
    std::optional<double> scaling_residual;  // empty when the region was not fitted
    bool outlier = false;

    double gdp_per_km2() const { return gdp / area_km2; }
};

inline constexpr std::string_view kCorpusHeader =
    "city_id,region,population,gdp,area_km2,n_hotspots,ct,pi,ai,scaling_residual,outlier";

void write_corpus_results(std::span<const CorpusRow> rows, std::ostream& out);
/// Throws ParseError (wrapped in DataError for the path overload) on schema
/// violations.
std::vector<CorpusRow> read_corpus_results(std::istream& in);
std::vector<CorpusRow> read_corpus_results(const std::filesystem::path& path);

/// CSV with columns row,col,x_m,y_m,value, one line per hotspot in rank order.
void write_hotspot_csv(const HotspotSet& hotspots, std::ostream& out);

Json hotspot_summary_json(std::string_view city_id, const HotspotSet& hotspots);
Json compactness_json(std::string_view city_id, const CompactnessIndices& indices);
Json scaling_fit_json(const ScalingFit& fit);
Json regression_fit_json(const RegressionFit& fit);
Json index_summary_json(const IndexSummary& summary);

/// Single-city spec: {"nrows", "ncols", "cellsize", "background", "noise_sd",
/// "seed", "blobs": [{"row", "col", "amplitude", "sigma"}]}.
SynthSpec synth_spec_from_json(const Json& j);

/// Corpus spec; every field of SynthCorpusSpec is optional and keeps its
/// default when absent. "population_range" is [min, max]; "gdp" holds
/// b1..b4, noise_sd and index ("pi" or "ai").
SynthCorpusSpec synth_corpus_spec_from_json(const Json& j);

}  // namespace nightgrid
