#include "nightgrid/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "nightgrid/distributions.hpp"
#include "nightgrid/error.hpp"
#include "nightgrid/numeric.hpp"

namespace nightgrid {

namespace {

constexpr double kExactFitRatio = 1e-10;

double sample_sd(const Eigen::VectorXd& v) {
    const double mean = v.mean();
    return std::sqrt((v.array() - mean).square().sum() / static_cast<double>(v.size() - 1));
}

}  // namespace

ScalingFit fit_scaling(std::span<const ScalingObservation> cities) {
    if (cities.size() < 3) {
        throw DataError(fmt::format("scaling fit needs at least 3 cities, got {}", cities.size()));
    }
    const auto n = static_cast<Eigen::Index>(cities.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd response(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const ScalingObservation& c = cities[static_cast<std::size_t>(i)];
        if (!(c.population > 0.0) || !std::isfinite(c.population)) {
            throw DataError(fmt::format("city '{}': population must be positive", c.city_id));
        }
        if (!(c.hotspot_count > 0.0) || !std::isfinite(c.hotspot_count)) {
            throw DataError(fmt::format("city '{}': hotspot count must be positive", c.city_id));
        }
        design(i, 0) = 1.0;
        design(i, 1) = std::log(c.population);
        response(i) = std::log(c.hotspot_count);
    }

    const OlsResult fit = ols(design, response);
    ScalingFit out;
    out.log_intercept = fit.coefficients(0);
    out.alpha = std::exp(out.log_intercept);
    out.beta = fit.coefficients(1);
    out.beta_std_error = fit.std_errors(1);
    out.r2 = fit.r2;
    out.residuals.assign(fit.residuals.begin(), fit.residuals.end());

    const double sd = sample_sd(fit.residuals);
    const double response_sd = sample_sd(response);
    const bool exact = !(sd > kExactFitRatio * response_sd);
    out.std_residuals.resize(cities.size());
    for (std::size_t i = 0; i < cities.size(); ++i) {
        out.city_ids.push_back(cities[i].city_id);
        out.std_residuals[i] = exact ? 0.0 : out.residuals[i] / sd;
        if (std::abs(out.std_residuals[i]) > kOutlierZ) {
            out.outlier_ids.push_back(cities[i].city_id);
        }
    }
    return out;
}

int model_number(ModelVariant v) {
    return static_cast<int>(v);
}

ModelVariant model_from_number(int number) {
    if (number < 1 || number > 5) {
        throw UsageError(fmt::format("model must be 1..5, got {}", number));
    }
    return static_cast<ModelVariant>(number);
}

std::string_view model_name(ModelVariant v) {
    switch (v) {
        case ModelVariant::PopOnly:
            return "M1_pop_only";
        case ModelVariant::PopPi:
            return "M2_pop_pi";
        case ModelVariant::PopPiSq:
            return "M3_pop_pi_sq";
        case ModelVariant::PopAi:
            return "M4_pop_ai";
        case ModelVariant::PopAiSq:
            return "M5_pop_ai_sq";
    }
    return "M1_pop_only";
}

std::vector<std::string> model_covariates(ModelVariant v) {
    switch (v) {
        case ModelVariant::PopOnly:
            return {"ln_pop"};
        case ModelVariant::PopPi:
            return {"ln_pop", "pi"};
        case ModelVariant::PopPiSq:
            return {"ln_pop", "pi", "pi_sq"};
        case ModelVariant::PopAi:
            return {"ln_pop", "ai"};
        case ModelVariant::PopAiSq:
            return {"ln_pop", "ai", "ai_sq"};
    }
    return {"ln_pop"};
}

const Coefficient* RegressionFit::find(std::string_view name) const {
    for (const Coefficient& c : coefficients) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

double aic(double rss, std::size_t n, std::size_t p) {
    if (!(rss > 0.0)) {
        throw DataError("perfect fit: AIC undefined under Gaussian likelihood");
    }
    if (p < 1 || n <= p) {
        throw DataError(fmt::format("AIC needs n > p >= 1 (n = {}, p = {})", n, p));
    }
    const double nd = static_cast<double>(n);
    return nd * std::log(rss / nd) + 2.0 * static_cast<double>(p + 1);
}

FStatistic f_statistic(double r2, std::size_t n, std::size_t k) {
    if (k < 1 || n <= k + 1) {
        throw DataError(fmt::format("F statistic needs n > k + 1 >= 2 (n = {}, k = {})", n, k));
    }
    if (r2 >= 1.0) {
        throw DataError("perfect fit");
    }
    if (!(r2 >= 0.0)) {
        throw DataError("R^2 must be in [0, 1)");
    }
    const double d1 = static_cast<double>(k);
    const double d2 = static_cast<double>(n - k - 1);
    FStatistic out;
    out.f = (r2 / d1) / ((1.0 - r2) / d2);
    out.p_value = f_pvalue(out.f, d1, d2);
    return out;
}

std::optional<double> optimal_compactness(double linear, double quadratic) {
    if (!(quadratic < 0.0)) {
        return std::nullopt;
    }
    return -linear / (2.0 * quadratic);
}

std::string_view significance_stars(double p_value) {
    if (p_value < 0.01) return "***";
    if (p_value < 0.05) return "**";
    if (p_value < 0.1) return "*";
    return "";
}

RegressionFit fit_growth_model(std::span<const GrowthObservation> cities, ModelVariant variant) {
    const std::vector<std::string> covariates = model_covariates(variant);
    const std::size_t p = covariates.size() + 1;
    if (cities.size() < p + 2) {
        throw DataError(fmt::format("{} needs at least {} cities, got {}", model_name(variant), p + 2, cities.size()));
    }
    const auto n = static_cast<Eigen::Index>(cities.size());
    Eigen::MatrixXd design(n, static_cast<Eigen::Index>(p));
    Eigen::VectorXd response(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const GrowthObservation& c = cities[static_cast<std::size_t>(i)];
        if (!(c.gdp_per_km2 > 0.0) || !std::isfinite(c.gdp_per_km2)) {
            throw DataError(fmt::format("city '{}': GDP per km^2 must be positive", c.city_id));
        }
        if (!(c.population > 0.0) || !std::isfinite(c.population)) {
            throw DataError(fmt::format("city '{}': population must be positive", c.city_id));
        }
        if (!(c.pi >= 0.0 && c.pi <= 1.0) || !(c.ai >= 0.0 && c.ai <= 1.0)) {
            throw DataError(fmt::format("city '{}': compactness indices must lie in [0, 1]", c.city_id));
        }
        response(i) = std::log(c.gdp_per_km2);
        design(i, 0) = 1.0;
        for (std::size_t j = 0; j < covariates.size(); ++j) {
            const std::string& name = covariates[j];
            double v = 0.0;
            if (name == "ln_pop") v = std::log(c.population);
            else if (name == "pi") v = c.pi;
            else if (name == "pi_sq") v = c.pi * c.pi;
            else if (name == "ai") v = c.ai;
            else if (name == "ai_sq") v = c.ai * c.ai;
            design(i, static_cast<Eigen::Index>(j + 1)) = v;
        }
    }

    const OlsResult fit = ols(design, response);
    RegressionFit out;
    out.variant = variant;
    out.n_obs = cities.size();
    out.rss = fit.rss;
    out.r2 = fit.r2;
    const double nd = static_cast<double>(out.n_obs);
    const double dof = nd - static_cast<double>(p);
    out.adj_r2 = 1.0 - (1.0 - fit.r2) * (nd - 1.0) / dof;
    out.aic = aic(fit.rss, out.n_obs, p);
    const FStatistic f = f_statistic(std::max(0.0, fit.r2), out.n_obs, p - 1);
    out.f_statistic = f.f;
    out.f_pvalue = f.p_value;

    for (std::size_t j = 0; j < p; ++j) {
        Coefficient c;
        c.name = j == 0 ? "constant" : covariates[j - 1];
        c.estimate = fit.coefficients(static_cast<Eigen::Index>(j));
        c.std_error = fit.std_errors(static_cast<Eigen::Index>(j));
        c.t_value = c.estimate / c.std_error;
        c.p_value = t_pvalue(c.t_value, dof);
        out.coefficients.push_back(std::move(c));
    }
    if (variant == ModelVariant::PopPiSq || variant == ModelVariant::PopAiSq) {
        out.optimal_compactness = optimal_compactness(out.coefficients[2].estimate, out.coefficients[3].estimate);
    }
    return out;
}

std::size_t select_model(std::span<const RegressionFit> fits) {
    if (fits.empty()) {
        throw DataError("no models to select from");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < fits.size(); ++i) {
        if (fits[i].aic < fits[best].aic) {
            best = i;
        }
    }
    return best;
}

std::string_view to_string(IndexKind k) {
    return k == IndexKind::PI ? "PI" : "AI";
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw DataError("median of an empty set");
    }
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

IndexSummaryReport summarize_index(std::span<const IndexObservation> cities, std::span<const Region> regions) {
    IndexSummaryReport report;
    for (Region region : regions) {
        std::vector<double> pis;
        std::vector<double> ais;
        for (const IndexObservation& c : cities) {
            if (c.region == region) {
                pis.push_back(c.pi);
                ais.push_back(c.ai);
            }
        }
        if (pis.empty()) {
            report.warnings.push_back(fmt::format("region {}: no cities, summary omitted", to_string(region)));
            continue;
        }
        for (IndexKind kind : {IndexKind::PI, IndexKind::AI}) {
            const std::vector<double>& v = kind == IndexKind::PI ? pis : ais;
            IndexSummary s;
            s.region = region;
            s.index = kind;
            s.n = v.size();
            CompensatedSum sum;
            for (double x : v) {
                sum.add(x);
                const double scaled = std::floor(std::clamp(x, 0.0, 1.0) * static_cast<double>(kHistogramBins));
                const auto bin = std::min(kHistogramBins - 1, static_cast<std::size_t>(scaled));
                ++s.histogram[bin];
            }
            s.mean = sum.value() / static_cast<double>(v.size());
            s.median = median(v);
            report.summaries.push_back(s);
        }
    }
    return report;
}

}  // namespace nightgrid
