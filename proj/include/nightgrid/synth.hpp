#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string_view>
#include <vector>

#include "nightgrid/grid_io.hpp"
#include "nightgrid/stats.hpp"

namespace nightgrid {

/// splitmix64 (Steele, Lea, Flood). Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Top 53 bits scaled to [0, 1).
    double uniform01() noexcept;

    /// floor(uniform01() * n), for n >= 1.
    std::size_t below(std::size_t n) noexcept;

    /// One standard normal draw per call via Box-Muller on two consecutive
    /// outputs: u1 in (0, 1], u2 in [0, 1), z = sqrt(-2 ln u1) cos(2 pi u2).
    /// The sine branch is discarded so every draw consumes exactly two outputs.
    double normal() noexcept;

private:
    std::uint64_t state_;
};

/// Seed of sub-stream `index`: output number index + 1 of SplitMix64(seed).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// A Gaussian blob in cell-index space: row 0 / col 0 is the center of the
/// top-left cell.
struct Blob {
    double row = 0.0;
    double col = 0.0;
    double amplitude = 1.0;
    double sigma = 1.0;  // cells
};

struct SynthSpec {
    std::size_t nrows = 0;
    std::size_t ncols = 0;
    double cellsize = 1.0;  // m
    double xll = 0.0;
    double yll = 0.0;
    std::vector<Blob> blobs;
    double background = 0.0;
    double noise_sd = 0.0;
    std::uint64_t seed = 0;
};

/// Blob contributions are evaluated for cells within 9 sigma of the center
/// along each axis; beyond that exp(-d^2 / 2 sigma^2) < 3e-18.
inline constexpr double kBlobWindowSigmas = 9.0;

/// Throws DataError for an invalid spec (empty grid, blob outside the grid,
/// amplitude <= background, ...).
void validate(const SynthSpec& spec);

struct SynthCity {
    LuminosityGrid grid;
    std::vector<Blob> truth;
};

/// value = background + sum_b A_b exp(-d^2 / (2 sigma_b^2)), then, if
/// noise_sd > 0, one N(0, noise_sd) draw per cell in row-major order from
/// SplitMix64(seed), clipped at 0.
SynthCity generate_city(const SynthSpec& spec);

enum class CompactnessProfile { Clustered, Ring, Scattered };

std::string_view to_string(CompactnessProfile p);
CompactnessProfile parse_compactness_profile(std::string_view text);

/// GDP generator: ln(GDP / km^2) = b1 + b2 ln P + b3 C + b4 C^2 + N(0, noise_sd)
/// where C is the city's ground-truth PI or AI.
struct GdpModel {
    double b1 = 5.329;
    double b2 = 0.599;
    double b3 = 6.340;
    double b4 = -5.068;
    double noise_sd = 0.3;
    IndexKind index = IndexKind::PI;
};

struct SynthCorpusSpec {
    std::size_t n_cities = 50;
    double alpha = 2.0;
    double beta = 0.55;
    double population_min = 2e3;
    double population_max = 2e5;
    CompactnessProfile profile = CompactnessProfile::Clustered;
    std::uint64_t seed = 1;

    std::size_t grid_size = 128;  // cells per side
    double cellsize = 1000.0;     // m
    double blob_sigma = 0.15;     // cells
    double amplitude = 100.0;
    double background = 0.0;
    double noise_sd = 0.0;
    /// Clustered profile: blobs fill a central disk at a per-city occupancy
    /// drawn uniformly from [min, max].
    double min_occupancy = 0.15;
    double max_occupancy = 1.0;
    std::vector<Region> regions{Region::US};
    GdpModel gdp;
};

void validate(const SynthCorpusSpec& spec);

struct SynthCorpusCity {
    CityRecord record;
    LuminosityGrid grid;
    std::vector<Blob> truth;
    std::size_t blob_count = 0;
    double truth_pi = 1.0;  // compactness of the blob centers as hotspots
    double truth_ai = 1.0;
};

struct SynthCorpus {
    SynthCorpusSpec spec;
    std::vector<SynthCorpusCity> cities;
};

/// Each city i draws from SplitMix64(derive_seed(spec.seed, i)), so cities are
/// independent of generation order. Populations are drawn log-uniformly, the
/// blob count is max(1, round(alpha P^beta)), and the reported population is
/// the law inverted at that count, (count / alpha)^(1 / beta), so the ground
/// truth follows the scaling law exactly. Blobs sit on distinct cell centers.
SynthCorpus generate_corpus(const SynthCorpusSpec& spec);

/// Writes cities.csv, rasters/<city_id>.asc and truth.json under `dir`.
void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

}  // namespace nightgrid
