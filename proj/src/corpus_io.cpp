#include "nightgrid/corpus_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "nightgrid/csv.hpp"
#include "nightgrid/error.hpp"
#include "nightgrid/numeric.hpp"

namespace nightgrid {

void write_corpus_results(std::span<const CorpusRow> rows, std::ostream& out) {
    out << kCorpusHeader << '\n';
    for (const CorpusRow& r : rows) {
        out << csv::escape(r.city_id) << ',' << to_string(r.region) << ',' << format_double(r.population) << ','
            << format_double(r.gdp) << ',' << format_double(r.area_km2) << ',' << r.n_hotspots << ','
            << format_double(r.ct) << ',' << format_double(r.pi) << ',' << format_double(r.ai) << ','
            << (r.scaling_residual ? format_double(*r.scaling_residual) : std::string()) << ','
            << (r.outlier ? 1 : 0) << '\n';
    }
}

namespace {

double number_field(const std::string& text, std::string_view column, std::size_t line) {
    auto v = parse_double(text);
    if (!v || !std::isfinite(*v)) {
        throw ParseError(fmt::format("{} is not a number: '{}'", column, text), line, 0);
    }
    return *v;
}

}  // namespace

std::vector<CorpusRow> read_corpus_results(std::istream& in) {
    std::string raw;
    if (!std::getline(in, raw) || csv::trim_record(raw, true) != kCorpusHeader) {
        throw ParseError(fmt::format("corpus header must be '{}'", kCorpusHeader), 1, 0);
    }
    std::vector<CorpusRow> rows;
    std::set<std::string> ids;
    std::size_t line_no = 1;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = csv::trim_record(raw, false);
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> f = csv::split_line(line);
        if (f.size() != 11) {
            throw ParseError(fmt::format("expected 11 columns, found {}", f.size()), line_no, 0);
        }
        CorpusRow r;
        r.city_id = f[0];
        if (!ids.insert(r.city_id).second) {
            throw ParseError(fmt::format("duplicate city_id '{}'", r.city_id), line_no, 0);
        }
        auto region = parse_region(f[1]);
        if (!region) {
            throw ParseError(fmt::format("unknown region '{}'", f[1]), line_no, 0);
        }
        r.region = *region;
        r.population = number_field(f[2], "population", line_no);
        r.gdp = number_field(f[3], "gdp", line_no);
        r.area_km2 = number_field(f[4], "area_km2", line_no);
        const double count = number_field(f[5], "n_hotspots", line_no);
        if (count < 0.0 || count != std::floor(count)) {
            throw ParseError("n_hotspots must be a non-negative integer", line_no, 0);
        }
        r.n_hotspots = static_cast<std::size_t>(count);
        r.ct = number_field(f[6], "ct", line_no);
        r.pi = number_field(f[7], "pi", line_no);
        r.ai = number_field(f[8], "ai", line_no);
        if (!f[9].empty()) {
            r.scaling_residual = number_field(f[9], "scaling_residual", line_no);
        }
        if (f[10] != "0" && f[10] != "1") {
            throw ParseError("outlier must be 0 or 1", line_no, 0);
        }
        r.outlier = f[10] == "1";
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<CorpusRow> read_corpus_results(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError(fmt::format("cannot open corpus '{}'", path.string()));
    }
    try {
        return read_corpus_results(in);
    } catch (const ParseError& e) {
        throw DataError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

void write_hotspot_csv(const HotspotSet& hotspots, std::ostream& out) {
    out << "row,col,x_m,y_m,value\n";
    for (const CellPoint& c : hotspots.cells) {
        out << c.row << ',' << c.col << ',' << format_double(c.x) << ',' << format_double(c.y) << ','
            << format_double(c.value) << '\n';
    }
}

Json hotspot_summary_json(std::string_view city_id, const HotspotSet& hotspots) {
    Json j;
    j["city_id"] = city_id;
    j["F"] = hotspots.f_threshold;
    j["cutoff"] = hotspots.density_cutoff;
    j["count"] = hotspots.count;
    j["fractional_count"] = hotspots.fractional_count;
    j["n_valid"] = hotspots.stats.n_valid;
    return j;
}

Json compactness_json(std::string_view city_id, const CompactnessIndices& c) {
    Json j;
    j["city_id"] = city_id;
    j["pi"] = c.pi;
    j["ai"] = c.ai;
    j["pi_raw"] = c.pi_raw;
    j["ai_raw"] = c.ai_raw;
    j["dd_m"] = c.dd;
    j["dm_m"] = c.dm;
    j["de_m"] = c.de;
    j["dh_m"] = c.dh;
    j["degenerate_flags"] = c.degenerate_flags;
    return j;
}

Json scaling_fit_json(const ScalingFit& fit) {
    Json j;
    j["alpha"] = fit.alpha;
    j["beta"] = fit.beta;
    j["log_intercept"] = fit.log_intercept;
    j["beta_std_error"] = fit.beta_std_error;
    j["r2"] = fit.r2;
    j["n"] = fit.city_ids.size();
    j["outlier_ids"] = fit.outlier_ids;
    Json cities = Json::array();
    for (std::size_t i = 0; i < fit.city_ids.size(); ++i) {
        cities.push_back({{"city_id", fit.city_ids[i]},
                          {"residual", fit.residuals[i]},
                          {"std_residual", fit.std_residuals[i]}});
    }
    j["cities"] = std::move(cities);
    return j;
}

Json regression_fit_json(const RegressionFit& fit) {
    Json j;
    j["model"] = model_number(fit.variant);
    j["variant"] = model_name(fit.variant);
    Json coefs = Json::array();
    for (const Coefficient& c : fit.coefficients) {
        coefs.push_back({{"name", c.name},
                         {"estimate", c.estimate},
                         {"std_error", c.std_error},
                         {"t_value", c.t_value},
                         {"p_value", c.p_value},
                         {"stars", significance_stars(c.p_value)}});
    }
    j["coefficients"] = std::move(coefs);
    j["n_obs"] = fit.n_obs;
    j["r2"] = fit.r2;
    j["adj_r2"] = fit.adj_r2;
    j["aic"] = fit.aic;
    j["f_statistic"] = fit.f_statistic;
    j["f_pvalue"] = fit.f_pvalue;
    j["f_stars"] = significance_stars(fit.f_pvalue);
    j["optimal_compactness"] = fit.optimal_compactness ? Json(*fit.optimal_compactness) : Json(nullptr);
    return j;
}

Json index_summary_json(const IndexSummary& s) {
    Json j;
    j["region"] = to_string(s.region);
    j["index"] = to_string(s.index);
    j["n"] = s.n;
    j["mean"] = s.mean;
    j["median"] = s.median;
    j["bin_width"] = 1.0 / static_cast<double>(kHistogramBins);
    j["histogram"] = s.histogram;
    return j;
}

namespace {

template <typename T>
void read_optional(const Json& j, const char* key, T& target) {
    if (j.contains(key)) {
        j.at(key).get_to(target);
    }
}

}  // namespace

SynthSpec synth_spec_from_json(const Json& j) {
    try {
        SynthSpec s;
        j.at("nrows").get_to(s.nrows);
        j.at("ncols").get_to(s.ncols);
        read_optional(j, "cellsize", s.cellsize);
        read_optional(j, "xll", s.xll);
        read_optional(j, "yll", s.yll);
        read_optional(j, "background", s.background);
        read_optional(j, "noise_sd", s.noise_sd);
        read_optional(j, "seed", s.seed);
        for (const Json& b : j.at("blobs")) {
            Blob blob;
            b.at("row").get_to(blob.row);
            b.at("col").get_to(blob.col);
            b.at("amplitude").get_to(blob.amplitude);
            b.at("sigma").get_to(blob.sigma);
            s.blobs.push_back(blob);
        }
        validate(s);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(fmt::format("invalid synthetic city spec: {}", e.what()));
    }
}

SynthCorpusSpec synth_corpus_spec_from_json(const Json& j) {
    try {
        SynthCorpusSpec s;
        read_optional(j, "n_cities", s.n_cities);
        read_optional(j, "alpha", s.alpha);
        read_optional(j, "beta", s.beta);
        if (j.contains("population_range")) {
            const Json& r = j.at("population_range");
            if (!r.is_array() || r.size() != 2) {
                throw DataError("population_range must be [min, max]");
            }
            r.at(0).get_to(s.population_min);
            r.at(1).get_to(s.population_max);
        }
        if (j.contains("compactness_profile")) {
            s.profile = parse_compactness_profile(j.at("compactness_profile").get<std::string>());
        }
        read_optional(j, "seed", s.seed);
        read_optional(j, "grid_size", s.grid_size);
        read_optional(j, "cellsize", s.cellsize);
        read_optional(j, "blob_sigma", s.blob_sigma);
        read_optional(j, "amplitude", s.amplitude);
        read_optional(j, "background", s.background);
        read_optional(j, "noise_sd", s.noise_sd);
        read_optional(j, "min_occupancy", s.min_occupancy);
        read_optional(j, "max_occupancy", s.max_occupancy);
        if (j.contains("regions")) {
            s.regions.clear();
            for (const Json& r : j.at("regions")) {
                auto region = parse_region(r.get<std::string>());
                if (!region) {
                    throw DataError(fmt::format("unknown region {}", r.dump()));
                }
                s.regions.push_back(*region);
            }
        }
        if (j.contains("gdp")) {
            const Json& g = j.at("gdp");
            read_optional(g, "b1", s.gdp.b1);
            read_optional(g, "b2", s.gdp.b2);
            read_optional(g, "b3", s.gdp.b3);
            read_optional(g, "b4", s.gdp.b4);
            read_optional(g, "noise_sd", s.gdp.noise_sd);
            if (g.contains("index")) {
                const auto index = g.at("index").get<std::string>();
                if (index != "pi" && index != "ai") {
                    throw DataError("gdp.index must be \"pi\" or \"ai\"");
                }
                s.gdp.index = index == "pi" ? IndexKind::PI : IndexKind::AI;
            }
        }
        validate(s);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(fmt::format("invalid synthetic corpus spec: {}", e.what()));
    }
}

}  // namespace nightgrid
