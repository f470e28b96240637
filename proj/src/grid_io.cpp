#include "nightgrid/grid_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "nightgrid/csv.hpp"
#include "nightgrid/error.hpp"
#include "nightgrid/numeric.hpp"

namespace nightgrid {

std::string_view to_string(CoordMode mode) {
    switch (mode) {
        case CoordMode::PlanarMeters:
            return "planar_meters";
        case CoordMode::GeographicDegrees:
            return "geographic_degrees";
    }
    return "planar_meters";
}

CoordMode parse_coord_mode(std::string_view text) {
    if (text == "planar_meters" || text == "planar") {
        return CoordMode::PlanarMeters;
    }
    if (text == "geographic_degrees" || text == "geographic") {
        return CoordMode::GeographicDegrees;
    }
    throw UsageError(fmt::format("unknown coordinate mode '{}'", text));
}

LuminosityGrid::LuminosityGrid(GridHeader header, std::vector<double> values)
    : header_(header), values_(std::move(values)) {
    if (header_.ncols < 1 || header_.nrows < 1) {
        throw DataError("grid must have at least one row and one column");
    }
    if (!(header_.cellsize > 0.0) || !std::isfinite(header_.cellsize)) {
        throw DataError("cellsize must be positive");
    }
    if (values_.size() != header_.ncols * header_.nrows) {
        throw DataError(fmt::format("grid declares {} cells but {} values were supplied",
                                    header_.ncols * header_.nrows, values_.size()));
    }
    mask_.resize(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (v == header_.nodata) {
            mask_[i] = 0;
            continue;
        }
        if (!std::isfinite(v) || v < 0.0) {
            throw DataError(fmt::format("invalid luminosity {} at row {}, col {}",
                                        v, i / header_.ncols, i % header_.ncols));
        }
        mask_[i] = 1;
        ++valid_count_;
    }
}

void LuminosityGrid::require_valid_cells() const {
    if (valid_count_ == 0) {
        throw DataError("no valid cells");
    }
}

namespace {

struct Token {
    std::string_view text;
    std::size_t line = 0;
    std::size_t column = 0;
};

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    /// Next whitespace-delimited token, or an empty token at end of input.
    Token next() {
        skip_space();
        Token tok{{}, line_, pos_ - line_start_ + 1};
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !is_space(text_[pos_])) {
            ++pos_;
        }
        tok.text = text_.substr(start, pos_ - start);
        return tok;
    }

    Token peek() {
        Scanner copy = *this;
        return copy.next();
    }

    std::size_t line() const { return line_; }

private:
    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

    void skip_space() {
        while (pos_ < text_.size() && is_space(text_[pos_])) {
            if (text_[pos_] == '\n') {
                ++line_;
                line_start_ = pos_ + 1;
            }
            ++pos_;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t line_start_ = 0;
};

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool starts_like_number(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    const char c = s.front();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
}

double number_or_throw(const Token& tok, std::string_view what) {
    if (tok.text.empty()) {
        throw ParseError(fmt::format("expected {} but reached end of input", what), tok.line, tok.column);
    }
    auto v = parse_double(tok.text);
    if (!v) {
        throw ParseError(fmt::format("invalid number '{}' for {}", tok.text, what), tok.line, tok.column);
    }
    return *v;
}

std::size_t positive_count_or_throw(const Token& tok, std::string_view key) {
    const double v = number_or_throw(tok, key);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e9) {
        throw ParseError(fmt::format("{} must be a positive integer, got '{}'", key, tok.text), tok.line,
                         tok.column);
    }
    return static_cast<std::size_t>(v);
}

}  // namespace

LuminosityGrid parse_ascii_grid(std::string_view text, CoordMode mode) {
    Scanner scan(text);
    GridHeader header;
    header.coord_mode = mode;

    std::optional<std::size_t> ncols, nrows;
    std::optional<double> xll, yll, cellsize;
    bool x_center = false;
    bool y_center = false;
    std::set<std::string> seen;

    while (true) {
        const Token key_tok = scan.peek();
        if (key_tok.text.empty() || starts_like_number(key_tok.text)) {
            break;
        }
        scan.next();
        const std::string key = lowercase(key_tok.text);
        if (!seen.insert(key == "xllcenter" ? "xllcorner" : key == "yllcenter" ? "yllcorner" : key).second) {
            throw ParseError(fmt::format("duplicate header key '{}'", key_tok.text), key_tok.line, key_tok.column);
        }
        const Token value_tok = scan.next();
        if (key == "ncols") {
            ncols = positive_count_or_throw(value_tok, "ncols");
        } else if (key == "nrows") {
            nrows = positive_count_or_throw(value_tok, "nrows");
        } else if (key == "xllcorner" || key == "xllcenter") {
            xll = number_or_throw(value_tok, key);
            x_center = key == "xllcenter";
        } else if (key == "yllcorner" || key == "yllcenter") {
            yll = number_or_throw(value_tok, key);
            y_center = key == "yllcenter";
        } else if (key == "cellsize") {
            cellsize = number_or_throw(value_tok, "cellsize");
            if (!(*cellsize > 0.0) || !std::isfinite(*cellsize)) {
                throw ParseError(fmt::format("cellsize must be positive, got '{}'", value_tok.text), value_tok.line,
                                 value_tok.column);
            }
        } else if (key == "nodata_value") {
            header.nodata = number_or_throw(value_tok, "NODATA_value");
        } else {
            throw ParseError(fmt::format("malformed header key '{}'", key_tok.text), key_tok.line, key_tok.column);
        }
    }

    const std::size_t header_end_line = scan.line();
    const std::array<std::pair<const char*, bool>, 5> required{{
        {"ncols", ncols.has_value()},
        {"nrows", nrows.has_value()},
        {"xllcorner", xll.has_value()},
        {"yllcorner", yll.has_value()},
        {"cellsize", cellsize.has_value()},
    }};
    for (const auto& [name, present] : required) {
        if (!present) {
            throw ParseError(fmt::format("missing header key '{}'", name), header_end_line, 0);
        }
    }

    header.ncols = *ncols;
    header.nrows = *nrows;
    header.cellsize = *cellsize;
    header.xll = x_center ? *xll - 0.5 * header.cellsize : *xll;
    header.yll = y_center ? *yll - 0.5 * header.cellsize : *yll;

    const std::size_t expected = header.ncols * header.nrows;
    std::vector<double> values;
    values.reserve(expected);
    for (std::size_t i = 0; i < expected; ++i) {
        const Token tok = scan.next();
        if (tok.text.empty()) {
            throw ParseError(fmt::format("count mismatch: header declares {} cells, found {}", expected, i),
                             tok.line, 0);
        }
        auto v = parse_double(tok.text);
        if (!v || !std::isfinite(*v)) {
            throw ParseError(fmt::format("invalid cell value '{}'", tok.text), tok.line, tok.column);
        }
        if (*v < 0.0 && *v != header.nodata) {
            throw ParseError(fmt::format("negative luminosity {}", tok.text), tok.line, tok.column);
        }
        values.push_back(*v);
    }
    const Token extra = scan.next();
    if (!extra.text.empty()) {
        throw ParseError(fmt::format("count mismatch: header declares {} cells, found more", expected), extra.line,
                         extra.column);
    }
    return LuminosityGrid(header, std::move(values));
}

LuminosityGrid parse_ascii_grid(std::istream& in, CoordMode mode) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_ascii_grid(std::string_view(text), mode);
}

LuminosityGrid read_ascii_grid(const std::filesystem::path& path, CoordMode mode) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError(fmt::format("cannot open raster '{}'", path.string()));
    }
    try {
        return parse_ascii_grid(in, mode);
    } catch (const ParseError& e) {
        throw DataError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

void write_ascii_grid(const LuminosityGrid& grid, std::ostream& out) {
    const GridHeader& h = grid.header();
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "ncols {}\nnrows {}\nxllcorner {}\nyllcorner {}\ncellsize {}\nNODATA_value {}\n",
                   h.ncols, h.nrows, h.xll, h.yll, h.cellsize, h.nodata);
    const auto values = grid.values();
    for (std::size_t r = 0; r < h.nrows; ++r) {
        for (std::size_t c = 0; c < h.ncols; ++c) {
            if (c > 0) {
                buf.push_back(' ');
            }
            fmt::format_to(std::back_inserter(buf), "{}", values[r * h.ncols + c]);
        }
        buf.push_back('\n');
        if (buf.size() > (1u << 20)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_ascii_grid(const LuminosityGrid& grid, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError(fmt::format("cannot write raster '{}'", path.string()));
    }
    write_ascii_grid(grid, out);
}

std::string_view to_string(Region region) {
    switch (region) {
        case Region::US:
            return "US";
        case Region::EU:
            return "EU";
        case Region::CN:
            return "CN";
        case Region::Other:
            return "other";
    }
    return "other";
}

std::optional<Region> parse_region(std::string_view text) {
    if (text == "US") return Region::US;
    if (text == "EU") return Region::EU;
    if (text == "CN") return Region::CN;
    if (text == "other") return Region::Other;
    return std::nullopt;
}

namespace {

constexpr std::string_view kCityHeader = "city_id,name,region,population,gdp,raster_path";
constexpr std::string_view kCityHeaderWithArea = "city_id,name,region,population,gdp,raster_path,area_km2";

double positive_field(const std::string& text, std::string_view column, std::size_t line) {
    auto v = parse_double(text);
    if (!v || !std::isfinite(*v)) {
        throw ParseError(fmt::format("{} is not a number: '{}'", column, text), line, 0);
    }
    if (!(*v > 0.0)) {
        throw ParseError(fmt::format("{} must be positive", column), line, 0);
    }
    return *v;
}

}  // namespace

std::vector<CityRecord> load_city_table(std::istream& in) {
    std::string raw;
    if (!std::getline(in, raw)) {
        throw ParseError("empty city table", 1, 0);
    }
    const std::string_view header = csv::trim_record(raw, true);
    bool with_area = false;
    if (header == kCityHeaderWithArea) {
        with_area = true;
    } else if (header != kCityHeader) {
        throw ParseError(fmt::format("city table header must be '{}'", kCityHeader), 1, 0);
    }
    const std::size_t ncol = with_area ? 7 : 6;

    std::vector<CityRecord> out;
    std::set<std::string> ids;
    std::size_t line_no = 1;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = csv::trim_record(raw, false);
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        try {
            f = csv::split_line(line);
        } catch (const DataError& e) {
            throw ParseError(e.what(), line_no, 0);
        }
        if (f.size() != ncol) {
            throw ParseError(fmt::format("expected {} columns, found {} (missing column?)", ncol, f.size()), line_no,
                             0);
        }
        CityRecord rec;
        rec.city_id = f[0];
        if (rec.city_id.empty()) {
            throw ParseError("city_id is empty", line_no, 0);
        }
        if (!ids.insert(rec.city_id).second) {
            throw ParseError(fmt::format("duplicate city_id '{}'", rec.city_id), line_no, 0);
        }
        rec.name = f[1];
        auto region = parse_region(f[2]);
        if (!region) {
            throw ParseError(fmt::format("region must be one of US, EU, CN, other; got '{}'", f[2]), line_no, 0);
        }
        rec.region = *region;
        rec.population = positive_field(f[3], "population", line_no);
        rec.gdp = positive_field(f[4], "gdp", line_no);
        rec.raster_path = f[5];
        if (rec.raster_path.empty()) {
            throw ParseError("raster_path is empty", line_no, 0);
        }
        if (with_area && !f[6].empty()) {
            rec.area_km2 = positive_field(f[6], "area_km2", line_no);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<CityRecord> load_city_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError(fmt::format("cannot open city table '{}'", path.string()));
    }
    try {
        return load_city_table(in);
    } catch (const ParseError& e) {
        throw DataError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

void write_city_table(std::span<const CityRecord> cities, std::ostream& out) {
    const bool with_area = std::any_of(cities.begin(), cities.end(), [](const CityRecord& c) { return c.area_km2; });
    out << (with_area ? kCityHeaderWithArea : kCityHeader) << '\n';
    for (const CityRecord& c : cities) {
        out << csv::escape(c.city_id) << ',' << csv::escape(c.name) << ',' << to_string(c.region) << ','
            << format_double(c.population) << ',' << format_double(c.gdp) << ',' << csv::escape(c.raster_path);
        if (with_area) {
            out << ',' << (c.area_km2 ? format_double(*c.area_km2) : std::string());
        }
        out << '\n';
    }
}

CellProjection::CellProjection(const GridHeader& header) : header_(header) {
    if (header.coord_mode == CoordMode::PlanarMeters) {
        cell_area_ = header.cellsize * header.cellsize;
        return;
    }
    const double half_height = 0.5 * static_cast<double>(header.nrows) * header.cellsize;
    const double half_width = 0.5 * static_cast<double>(header.ncols) * header.cellsize;
    const double phi0 = header.yll + half_height;
    if (std::abs(phi0) >= kMaxProjectionLatitude) {
        throw DataError("projection unreliable near poles");
    }
    constexpr double deg = std::numbers::pi / 180.0;
    origin_x_ = header.xll + half_width;
    origin_y_ = phi0;
    y_scale_ = kEarthRadiusMeters * deg;
    x_scale_ = y_scale_ * std::cos(phi0 * deg);
    cell_area_ = header.cellsize * header.cellsize * x_scale_ * y_scale_;
}

Point2 CellProjection::center(std::size_t row, std::size_t col) const noexcept {
    const double cx = header_.xll + (static_cast<double>(col) + 0.5) * header_.cellsize;
    const double cy = header_.yll + (static_cast<double>(header_.nrows - row) - 0.5) * header_.cellsize;
    if (header_.coord_mode == CoordMode::PlanarMeters) {
        return {cx, cy};
    }
    return {x_scale_ * (cx - origin_x_), y_scale_ * (cy - origin_y_)};
}

CellPointSet cell_points(const LuminosityGrid& grid) {
    grid.require_valid_cells();
    const CellProjection proj(grid.header());
    CellPointSet out;
    out.cell_area = proj.cell_area();
    out.points.reserve(grid.valid_count());
    for (std::size_t r = 0; r < grid.rows(); ++r) {
        for (std::size_t c = 0; c < grid.cols(); ++c) {
            const std::size_t i = r * grid.cols() + c;
            if (!grid.is_valid(i)) {
                continue;
            }
            const Point2 p = proj.center(r, c);
            out.points.push_back({p.x, p.y, grid.values()[i], r, c});
        }
    }
    return out;
}

}  // namespace nightgrid
