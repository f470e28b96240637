#include "nightgrid/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>
#include <json.hpp>

#include "nightgrid/compactness.hpp"
#include "nightgrid/error.hpp"

namespace nightgrid {

SplitMix64::result_type SplitMix64::operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::size_t SplitMix64::below(std::size_t n) noexcept {
    const auto k = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return std::min(k, n - 1);
}

double SplitMix64::normal() noexcept {
    const double u1 = static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    // Jump straight to the (index + 1)-th output.
    SplitMix64 rng(seed + index * 0x9E3779B97F4A7C15ULL);
    return rng();
}

void validate(const SynthSpec& spec) {
    if (spec.nrows < 1 || spec.ncols < 1) {
        throw DataError("synthetic grid needs at least one row and column");
    }
    if (!(spec.cellsize > 0.0)) {
        throw DataError("cellsize must be positive");
    }
    if (!(spec.background >= 0.0) || !(spec.noise_sd >= 0.0)) {
        throw DataError("background and noise_sd must be non-negative");
    }
    for (std::size_t i = 0; i < spec.blobs.size(); ++i) {
        const Blob& b = spec.blobs[i];
        const bool inside = b.row >= -0.5 && b.row < static_cast<double>(spec.nrows) - 0.5 && b.col >= -0.5 &&
                            b.col < static_cast<double>(spec.ncols) - 0.5;
        if (!inside) {
            throw DataError(fmt::format("blob {} at ({}, {}) lies outside the grid", i, b.row, b.col));
        }
        if (!(b.sigma > 0.0)) {
            throw DataError(fmt::format("blob {} needs sigma > 0", i));
        }
        if (!(b.amplitude > spec.background)) {
            throw DataError(fmt::format("blob {} amplitude must exceed the background", i));
        }
    }
}

SynthCity generate_city(const SynthSpec& spec) {
    validate(spec);
    const std::size_t nrows = spec.nrows;
    const std::size_t ncols = spec.ncols;
    std::vector<double> values(nrows * ncols, spec.background);

    for (const Blob& b : spec.blobs) {
        const double reach = kBlobWindowSigmas * b.sigma;
        const auto r0 = static_cast<std::ptrdiff_t>(std::max(0.0, std::ceil(b.row - reach)));
        const auto r1 = static_cast<std::ptrdiff_t>(std::min(static_cast<double>(nrows - 1), std::floor(b.row + reach)));
        const auto c0 = static_cast<std::ptrdiff_t>(std::max(0.0, std::ceil(b.col - reach)));
        const auto c1 = static_cast<std::ptrdiff_t>(std::min(static_cast<double>(ncols - 1), std::floor(b.col + reach)));
        const double inv_two_var = 1.0 / (2.0 * b.sigma * b.sigma);
        for (std::ptrdiff_t r = r0; r <= r1; ++r) {
            const double dr = static_cast<double>(r) - b.row;
            for (std::ptrdiff_t c = c0; c <= c1; ++c) {
                const double dc = static_cast<double>(c) - b.col;
                values[static_cast<std::size_t>(r) * ncols + static_cast<std::size_t>(c)] +=
                    b.amplitude * std::exp(-(dr * dr + dc * dc) * inv_two_var);
            }
        }
    }

    if (spec.noise_sd > 0.0) {
        SplitMix64 rng(spec.seed);
        for (double& v : values) {
            v = std::max(0.0, v + spec.noise_sd * rng.normal());
        }
    }

    GridHeader header;
    header.nrows = nrows;
    header.ncols = ncols;
    header.cellsize = spec.cellsize;
    header.xll = spec.xll;
    header.yll = spec.yll;
    header.nodata = -9999.0;
    header.coord_mode = CoordMode::PlanarMeters;
    return SynthCity{LuminosityGrid(header, std::move(values)), spec.blobs};
}

std::string_view to_string(CompactnessProfile p) {
    switch (p) {
        case CompactnessProfile::Clustered:
            return "clustered";
        case CompactnessProfile::Ring:
            return "ring";
        case CompactnessProfile::Scattered:
            return "scattered";
    }
    return "clustered";
}

CompactnessProfile parse_compactness_profile(std::string_view text) {
    if (text == "clustered") return CompactnessProfile::Clustered;
    if (text == "ring") return CompactnessProfile::Ring;
    if (text == "scattered") return CompactnessProfile::Scattered;
    throw DataError(fmt::format("unknown compactness profile '{}'", text));
}

void validate(const SynthCorpusSpec& spec) {
    if (spec.n_cities < 1) {
        throw DataError("n_cities must be positive");
    }
    if (!(spec.alpha > 0.0) || !(spec.beta > 0.0)) {
        throw DataError("alpha and beta must be positive");
    }
    if (!(spec.population_min > 0.0) || !(spec.population_max >= spec.population_min)) {
        throw DataError("population range must be positive and ordered");
    }
    if (spec.grid_size < 1 || !(spec.cellsize > 0.0) || !(spec.blob_sigma > 0.0)) {
        throw DataError("grid_size, cellsize and blob_sigma must be positive");
    }
    if (!(spec.amplitude > spec.background) || !(spec.background >= 0.0) || !(spec.noise_sd >= 0.0)) {
        throw DataError("need amplitude > background >= 0 and noise_sd >= 0");
    }
    if (!(spec.min_occupancy > 0.0) || !(spec.max_occupancy <= 1.0) || spec.min_occupancy > spec.max_occupancy) {
        throw DataError("occupancy range must satisfy 0 < min <= max <= 1");
    }
    if (spec.regions.empty()) {
        throw DataError("at least one region is required");
    }
    if (!(spec.gdp.noise_sd >= 0.0)) {
        throw DataError("gdp noise_sd must be non-negative");
    }
}

namespace {

struct Cell {
    std::size_t row;
    std::size_t col;
};

// Row-major list of cells whose center lies within [inner, outer] of the grid
// center.
std::vector<Cell> cells_in_annulus(std::size_t side, double inner, double outer) {
    const double center = 0.5 * static_cast<double>(side - 1);
    std::vector<Cell> out;
    for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
            const double d = std::hypot(static_cast<double>(r) - center, static_cast<double>(c) - center);
            if (d >= inner && d <= outer) {
                out.push_back({r, c});
            }
        }
    }
    return out;
}

std::vector<Cell> candidate_cells(const SynthCorpusSpec& spec, std::size_t blobs, SplitMix64& rng) {
    const std::size_t side = spec.grid_size;
    const double half_diagonal = std::numbers::sqrt2 * 0.5 * static_cast<double>(side);
    const double n = static_cast<double>(blobs);
    std::vector<Cell> cells;
    switch (spec.profile) {
        case CompactnessProfile::Clustered: {
            const double occupancy =
                spec.min_occupancy + rng.uniform01() * (spec.max_occupancy - spec.min_occupancy);
            double radius = std::sqrt(n / (occupancy * std::numbers::pi));
            while ((cells = cells_in_annulus(side, 0.0, radius)).size() < blobs) {
                if (radius > half_diagonal) break;
                radius += 0.5;
            }
            break;
        }
        case CompactnessProfile::Ring: {
            const double mid = 0.35 * static_cast<double>(side);
            double width = std::max(1.0, n / (0.5 * 2.0 * std::numbers::pi * mid));
            while ((cells = cells_in_annulus(side, mid - 0.5 * width, mid + 0.5 * width)).size() < blobs) {
                if (width > static_cast<double>(side)) break;
                width += 0.5;
            }
            break;
        }
        case CompactnessProfile::Scattered:
            cells = cells_in_annulus(side, 0.0, half_diagonal + 1.0);
            break;
    }
    if (cells.size() < blobs) {
        throw DataError(fmt::format("{} blobs do not fit a {}x{} grid with the {} profile", blobs, side, side,
                                    to_string(spec.profile)));
    }
    return cells;
}

}  // namespace

SynthCorpus generate_corpus(const SynthCorpusSpec& spec) {
    validate(spec);
    SynthCorpus corpus;
    corpus.spec = spec;
    corpus.cities.reserve(spec.n_cities);

    const double log_min = std::log(spec.population_min);
    const double log_max = std::log(spec.population_max);
    const std::size_t side = spec.grid_size;

    for (std::size_t i = 0; i < spec.n_cities; ++i) {
        SplitMix64 rng(derive_seed(spec.seed, i));

        const double drawn = std::exp(log_min + rng.uniform01() * (log_max - log_min));
        const double expected = std::round(spec.alpha * std::pow(drawn, spec.beta));
        const std::size_t blobs = expected < 1.0 ? 1 : static_cast<std::size_t>(expected);
        const double population = std::pow(static_cast<double>(blobs) / spec.alpha, 1.0 / spec.beta);

        // Partial Fisher-Yates over the profile's candidate cells.
        std::vector<Cell> cells = candidate_cells(spec, blobs, rng);
        for (std::size_t k = 0; k < blobs; ++k) {
            const std::size_t j = k + rng.below(cells.size() - k);
            std::swap(cells[k], cells[j]);
        }
        cells.resize(blobs);
        std::sort(cells.begin(), cells.end(),
                  [](const Cell& a, const Cell& b) { return a.row < b.row || (a.row == b.row && a.col < b.col); });

        SynthSpec city;
        city.nrows = side;
        city.ncols = side;
        city.cellsize = spec.cellsize;
        city.background = spec.background;
        city.noise_sd = spec.noise_sd;
        city.seed = rng();
        for (const Cell& c : cells) {
            city.blobs.push_back(
                {static_cast<double>(c.row), static_cast<double>(c.col), spec.amplitude, spec.blob_sigma});
        }
        SynthCity generated = generate_city(city);

        const CellProjection proj(generated.grid.header());
        std::vector<Point2> centers;
        centers.reserve(cells.size());
        for (const Cell& c : cells) {
            centers.push_back(proj.center(c.row, c.col));
        }
        const CompactnessIndices truth = compute_compactness(centers, proj.cell_area());

        const double area_km2 = static_cast<double>(side * side) * proj.cell_area() / 1e6;
        const double com = spec.gdp.index == IndexKind::PI ? truth.pi : truth.ai;
        const double log_gdp_density = spec.gdp.b1 + spec.gdp.b2 * std::log(population) + spec.gdp.b3 * com +
                                       spec.gdp.b4 * com * com + spec.gdp.noise_sd * rng.normal();

        SynthCorpusCity out{.record = {},
                            .grid = std::move(generated.grid),
                            .truth = std::move(generated.truth),
                            .blob_count = blobs,
                            .truth_pi = truth.pi,
                            .truth_ai = truth.ai};
        out.record.city_id = fmt::format("city{:04d}", i);
        out.record.name = fmt::format("Synthetic City {}", i);
        out.record.region = spec.regions[i % spec.regions.size()];
        out.record.population = population;
        out.record.gdp = std::exp(log_gdp_density) * area_km2;
        out.record.raster_path = fmt::format("rasters/{}.asc", out.record.city_id);
        out.record.area_km2 = area_km2;
        corpus.cities.push_back(std::move(out));
    }
    return corpus;
}

void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "rasters");
    std::vector<CityRecord> records;
    nlohmann::ordered_json truth = nlohmann::ordered_json::object();
    truth["alpha"] = corpus.spec.alpha;
    truth["beta"] = corpus.spec.beta;
    truth["profile"] = to_string(corpus.spec.profile);
    truth["seed"] = corpus.spec.seed;
    truth["gdp"] = {{"b1", corpus.spec.gdp.b1},
                    {"b2", corpus.spec.gdp.b2},
                    {"b3", corpus.spec.gdp.b3},
                    {"b4", corpus.spec.gdp.b4},
                    {"noise_sd", corpus.spec.gdp.noise_sd},
                    {"index", to_string(corpus.spec.gdp.index)}};
    auto& cities = truth["cities"] = nlohmann::ordered_json::array();
    for (const SynthCorpusCity& c : corpus.cities) {
        write_ascii_grid(c.grid, dir / c.record.raster_path);
        records.push_back(c.record);
        nlohmann::ordered_json centers = nlohmann::ordered_json::array();
        for (const Blob& b : c.truth) {
            centers.push_back({b.row, b.col});
        }
        cities.push_back({{"city_id", c.record.city_id},
                          {"population", c.record.population},
                          {"blob_count", c.blob_count},
                          {"truth_pi", c.truth_pi},
                          {"truth_ai", c.truth_ai},
                          {"blob_centers", std::move(centers)}});
    }
    std::ofstream table(dir / "cities.csv", std::ios::binary);
    write_city_table(records, table);
    std::ofstream sidecar(dir / "truth.json", std::ios::binary);
    sidecar << truth.dump(2) << '\n';
    if (!table || !sidecar) {
        throw DataError(fmt::format("failed writing corpus to '{}'", dir.string()));
    }
}

}  // namespace nightgrid
