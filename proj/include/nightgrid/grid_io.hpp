#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nightgrid/point.hpp"

namespace nightgrid {

enum class CoordMode { PlanarMeters, GeographicDegrees };

std::string_view to_string(CoordMode mode);
/// Accepts "planar_meters" / "planar" and "geographic_degrees" / "geographic".
CoordMode parse_coord_mode(std::string_view text);

struct GridHeader {
    std::size_t ncols = 0;
    std::size_t nrows = 0;
    double xll = 0.0;  // lower-left corner, header units
    double yll = 0.0;
    double cellsize = 0.0;
    double nodata = -9999.0;
    CoordMode coord_mode = CoordMode::PlanarMeters;
};

/// Raster of non-negative luminosity values, stored row-major with the top
/// row first. Immutable after construction.
class LuminosityGrid {
public:
    /// Throws DataError if the header violates its invariants, the value count
    /// does not match, or a non-nodata value is negative or not finite.
    LuminosityGrid(GridHeader header, std::vector<double> values);

    const GridHeader& header() const noexcept { return header_; }
    std::size_t rows() const noexcept { return header_.nrows; }
    std::size_t cols() const noexcept { return header_.ncols; }
    std::size_t size() const noexcept { return values_.size(); }

    std::span<const double> values() const noexcept { return values_; }
    std::span<const std::uint8_t> valid_mask() const noexcept { return mask_; }

    double value(std::size_t row, std::size_t col) const { return values_[row * cols() + col]; }
    bool is_valid(std::size_t index) const { return mask_[index] != 0; }
    std::size_t valid_count() const noexcept { return valid_count_; }

    /// Throws DataError("no valid cells") when every cell is nodata.
    void require_valid_cells() const;

private:
    GridHeader header_;
    std::vector<double> values_;
    std::vector<std::uint8_t> mask_;
    std::size_t valid_count_ = 0;
};

/// Parses an ESRI ASCII grid. Header keys are case-insensitive; xllcenter /
/// yllcenter are accepted and converted to corners. Errors are ParseError with
/// the offending line and column.
LuminosityGrid parse_ascii_grid(std::string_view text, CoordMode mode);
LuminosityGrid parse_ascii_grid(std::istream& in, CoordMode mode);
LuminosityGrid read_ascii_grid(const std::filesystem::path& path, CoordMode mode);

/// Serializes with shortest round-trip number formatting, so parsing the
/// output reproduces the grid exactly.
void write_ascii_grid(const LuminosityGrid& grid, std::ostream& out);
void write_ascii_grid(const LuminosityGrid& grid, const std::filesystem::path& path);

enum class Region { US, EU, CN, Other };

std::string_view to_string(Region region);
std::optional<Region> parse_region(std::string_view text);

struct CityRecord {
    std::string city_id;
    std::string name;
    Region region = Region::Other;
    double population = 0.0;
    double gdp = 0.0;
    std::string raster_path;
    /// Land area in km^2 when the table carries the optional trailing
    /// area_km2 column; otherwise derived from the raster at analysis time.
    std::optional<double> area_km2;
};

/// Header must be exactly city_id,name,region,population,gdp,raster_path,
/// optionally followed by ,area_km2. Errors name the 1-based file line.
std::vector<CityRecord> load_city_table(std::istream& in);
std::vector<CityRecord> load_city_table(const std::filesystem::path& path);

void write_city_table(std::span<const CityRecord> cities, std::ostream& out);

struct CellPoint {
    double x = 0.0;  // meters, planar frame
    double y = 0.0;
    double value = 0.0;
    std::size_t row = 0;
    std::size_t col = 0;

    Point2 position() const noexcept { return {x, y}; }
};

inline constexpr double kEarthRadiusMeters = 6'371'000.0;
inline constexpr double kMaxProjectionLatitude = 85.0;

/// Maps cell indices to planar cell centers in meters.
///
/// Planar grids use the header coordinates directly. Geographic grids use a
/// local equirectangular projection about the grid's central meridian and
/// mid-latitude phi0:
///   x = R cos(phi0) (lon - lon0) pi/180,   y = R (lat - phi0) pi/180
/// Every cell then has the same area cellsize^2 (pi/180)^2 R^2 cos(phi0).
class CellProjection {
public:
    /// Throws DataError("projection unreliable near poles") if |phi0| >= 85 deg.
    explicit CellProjection(const GridHeader& header);

    Point2 center(std::size_t row, std::size_t col) const noexcept;
    double cell_area() const noexcept { return cell_area_; }

private:
    GridHeader header_;
    double x_scale_ = 1.0;
    double y_scale_ = 1.0;
    double origin_x_ = 0.0;
    double origin_y_ = 0.0;
    double cell_area_ = 0.0;
};

struct CellPointSet {
    std::vector<CellPoint> points;
    double cell_area = 0.0;  // m^2
};

/// One point per valid cell, in row-major order.
CellPointSet cell_points(const LuminosityGrid& grid);

}  // namespace nightgrid
