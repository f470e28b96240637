#include "nightgrid/svg_report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "nightgrid/error.hpp"
#include "nightgrid/ols.hpp"

namespace nightgrid {

using namespace svg_layout;

AxisMap::AxisMap(std::span<const double> values, double px_from, double px_to)
    : px_from_(px_from), px_to_(px_to) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double span = *mx - *mn;
    const double pad = span > 0.0 ? kPadFraction * span : 0.5;
    lo_ = *mn - pad;
    hi_ = *mx + pad;
}

double AxisMap::operator()(double v) const noexcept {
    return px_from_ + (v - lo_) / (hi_ - lo_) * (px_to_ - px_from_);
}

namespace {

constexpr int kCurveSamples = 100;

const char* region_color(Region r) {
    switch (r) {
        case Region::US:
            return "#1f77b4";
        case Region::EU:
            return "#2ca02c";
        case Region::CN:
            return "#d62728";
        case Region::Other:
            return "#7f7f7f";
    }
    return "#7f7f7f";
}

void require_points(std::span<const CorpusRow> rows) {
    if (rows.size() < 3) {
        throw DataError(fmt::format("report needs at least 3 cities, got {}", rows.size()));
    }
}

void open_svg(std::ostream& out, std::string_view title) {
    out << fmt::format(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\">\n"
        "<title>{2}</title>\n"
        "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n"
        "<rect x=\"{3}\" y=\"{4}\" width=\"{5}\" height=\"{6}\" fill=\"none\" stroke=\"black\"/>\n",
        kWidth, kHeight, title, kLeft, kTop, kRight - kLeft, kBottom - kTop);
}

void axis_labels(std::ostream& out, const AxisMap& x, const AxisMap& y, std::string_view x_label,
                 std::string_view y_label) {
    out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                       0.5 * (kLeft + kRight), kHeight - 15.0, x_label);
    out << fmt::format(
        "<text x=\"20\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"14\" "
        "transform=\"rotate(-90 20 {:.2f})\">{}</text>\n",
        0.5 * (kTop + kBottom), 0.5 * (kTop + kBottom), y_label);
    for (int i = 0; i <= 4; ++i) {
        const double xv = x.lo() + (x.hi() - x.lo()) * i / 4.0;
        const double yv = y.lo() + (y.hi() - y.lo()) * i / 4.0;
        out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"11\">{:.3g}</text>\n",
                           x(xv), kBottom + 16.0, xv);
        out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-size=\"11\">{:.3g}</text>\n",
                           kLeft - 6.0, y(yv) + 4.0, yv);
    }
}

}  // namespace

void write_scaling_svg(std::span<const CorpusRow> rows, std::ostream& out) {
    require_points(rows);
    std::vector<double> xs, ys;
    for (const CorpusRow& r : rows) {
        if (!(r.population > 0.0) || r.n_hotspots < 1) {
            throw DataError(fmt::format("city '{}': population and hotspot count must be positive", r.city_id));
        }
        xs.push_back(std::log10(r.population));
        ys.push_back(std::log10(static_cast<double>(r.n_hotspots)));
    }

    std::vector<ScalingObservation> obs;
    for (const CorpusRow& r : rows) {
        obs.push_back({r.city_id, r.population, static_cast<double>(r.n_hotspots)});
    }
    const ScalingFit fit = fit_scaling(obs);
    const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    const double log10_alpha = fit.log_intercept / std::log(10.0);
    const double y_start = log10_alpha + fit.beta * *xmin;
    const double y_end = log10_alpha + fit.beta * *xmax;

    std::vector<double> y_extent = ys;
    y_extent.push_back(y_start);
    y_extent.push_back(y_end);
    const AxisMap xmap(xs, kLeft, kRight);
    const AxisMap ymap(y_extent, kBottom, kTop);

    open_svg(out, "Hotspot count vs population (log-log)");
    axis_labels(out, xmap, ymap, "log10 population", "log10 hotspot count");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"><title>{}</title></circle>\n",
                           xmap(xs[i]), ymap(ys[i]), region_color(rows[i].region), rows[i].city_id);
    }
    out << fmt::format(
        "<line class=\"fit\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\" "
        "stroke-width=\"1.5\"/>\n",
        xmap(*xmin), ymap(y_start), xmap(*xmax), ymap(y_end));
    out << fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\">N = {:.4g} P^{:.4f}  (R2 = {:.3f})</text>\n", kLeft + 10.0,
        kTop + 18.0, fit.alpha, fit.beta, fit.r2);
    out << "</svg>\n";
}

void write_growth_svg(std::span<const CorpusRow> rows, IndexKind index, std::ostream& out) {
    require_points(rows);
    std::vector<double> xs, ys;
    for (const CorpusRow& r : rows) {
        if (!(r.gdp > 0.0) || !(r.area_km2 > 0.0)) {
            throw DataError(fmt::format("city '{}': GDP and area must be positive", r.city_id));
        }
        xs.push_back(index == IndexKind::PI ? r.pi : r.ai);
        ys.push_back(std::log(r.gdp_per_km2()));
    }

    // Quadratic in the index alone; skipped when the index has too few
    // distinct values to support it.
    std::vector<std::pair<double, double>> curve;
    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd response(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double c = xs[static_cast<std::size_t>(i)];
        design.row(i) << 1.0, c, c * c;
        response(i) = ys[static_cast<std::size_t>(i)];
    }
    const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    try {
        const OlsResult q = ols(design, response);
        for (int s = 0; s <= kCurveSamples; ++s) {
            const double c = *xmin + (*xmax - *xmin) * s / kCurveSamples;
            curve.emplace_back(c, q.coefficients(0) + q.coefficients(1) * c + q.coefficients(2) * c * c);
        }
    } catch (const DataError&) {
        curve.clear();
    }

    std::vector<double> y_extent = ys;
    for (const auto& [c, v] : curve) {
        y_extent.push_back(v);
    }
    const AxisMap xmap(xs, kLeft, kRight);
    const AxisMap ymap(y_extent, kBottom, kTop);

    const std::string_view name = to_string(index);
    open_svg(out, fmt::format("ln(GDP per km2) vs {}", name));
    axis_labels(out, xmap, ymap, name, "ln(GDP per km2)");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"><title>{}</title></circle>\n",
                           xmap(xs[i]), ymap(ys[i]), region_color(rows[i].region), rows[i].city_id);
    }
    if (!curve.empty()) {
        out << "<polyline class=\"fit\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < curve.size(); ++i) {
            out << fmt::format("{}{:.2f},{:.2f}", i ? " " : "", xmap(curve[i].first), ymap(curve[i].second));
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

std::vector<std::filesystem::path> write_report(std::span<const CorpusRow> rows, const std::filesystem::path& out_dir) {
    // Render everything in memory first so a failure writes nothing.
    std::ostringstream scaling, growth_pi, growth_ai;
    write_scaling_svg(rows, scaling);
    write_growth_svg(rows, IndexKind::PI, growth_pi);
    write_growth_svg(rows, IndexKind::AI, growth_ai);

    std::filesystem::create_directories(out_dir);
    const std::vector<std::pair<std::filesystem::path, std::string>> files{
        {out_dir / "scaling.svg", scaling.str()},
        {out_dir / "growth_pi.svg", growth_pi.str()},
        {out_dir / "growth_ai.svg", growth_ai.str()},
    };
    std::vector<std::filesystem::path> written;
    for (const auto& [path, text] : files) {
        std::ofstream f(path, std::ios::binary);
        f << text;
        if (!f) {
            throw DataError(fmt::format("cannot write '{}'", path.string()));
        }
        written.push_back(path);
    }
    return written;
}

}  // namespace nightgrid
