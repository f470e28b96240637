#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nightgrid/grid_io.hpp"
#include "nightgrid/ols.hpp"

namespace nightgrid {

// ---------------------------------------------------------------------------
// Scaling law N = alpha P^beta

struct ScalingObservation {
    std::string city_id;
    double population = 0.0;
    double hotspot_count = 0.0;
};

struct ScalingFit {
    double alpha = 0.0;
    double beta = 0.0;
    double log_intercept = 0.0;  // ln alpha
    double beta_std_error = 0.0;
    double r2 = 0.0;
    std::vector<std::string> city_ids;  // input order
    std::vector<double> residuals;      // ln N - fitted, per city
    std::vector<double> std_residuals;  // residual / sample sd of residuals
    std::vector<std::string> outlier_ids;
};

inline constexpr double kOutlierZ = 2.0;

/// OLS of ln(count) on ln(population). Cities with |standardized residual| > 2
/// are outliers. A fit whose residual spread is at rounding level (sd below
/// 1e-10 of the response sd) is treated as exact: all standardized residuals
/// are 0 and there are no outliers.
/// Throws DataError for fewer than 3 cities or a non-positive input (naming
/// the city).
ScalingFit fit_scaling(std::span<const ScalingObservation> cities);

// ---------------------------------------------------------------------------
// Growth regressions ln Y = b1 + b2 ln Pop + b3 Com + b4 Com^2 + e

enum class ModelVariant { PopOnly = 1, PopPi = 2, PopPiSq = 3, PopAi = 4, PopAiSq = 5 };

inline constexpr std::array<ModelVariant, 5> kAllModelVariants{
    ModelVariant::PopOnly, ModelVariant::PopPi, ModelVariant::PopPiSq, ModelVariant::PopAi, ModelVariant::PopAiSq};

int model_number(ModelVariant v);
/// 1..5; throws UsageError otherwise.
ModelVariant model_from_number(int number);
std::string_view model_name(ModelVariant v);
/// Covariate names after the constant, e.g. {"ln_pop", "pi", "pi_sq"}.
std::vector<std::string> model_covariates(ModelVariant v);

struct GrowthObservation {
    std::string city_id;
    double gdp_per_km2 = 0.0;
    double population = 0.0;
    double pi = 0.0;
    double ai = 0.0;
};

struct Coefficient {
    std::string name;  // "constant", "ln_pop", "pi", "pi_sq", "ai", "ai_sq"
    double estimate = 0.0;
    double std_error = 0.0;
    double t_value = 0.0;
    double p_value = 0.0;
};

struct RegressionFit {
    ModelVariant variant = ModelVariant::PopOnly;
    std::vector<Coefficient> coefficients;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double rss = 0.0;
    double aic = 0.0;
    double f_statistic = 0.0;
    double f_pvalue = 0.0;
    std::size_t n_obs = 0;
    std::optional<double> optimal_compactness;

    const Coefficient* find(std::string_view name) const;
};

/// Akaike information criterion n ln(rss / n) + 2 (p + 1), where p counts the
/// regression coefficients and the extra 1 is the error variance.
/// Throws DataError when rss == 0 or n <= p.
double aic(double rss, std::size_t n, std::size_t p);

struct FStatistic {
    double f = 0.0;
    double p_value = 1.0;
};

/// Overall regression F from R^2 with k slope coefficients and n observations.
/// Throws DataError("perfect fit") for r2 >= 1.
FStatistic f_statistic(double r2, std::size_t n, std::size_t k);

/// -b3 / (2 b4) when b4 < 0, the maximizer of b3 c + b4 c^2.
std::optional<double> optimal_compactness(double linear, double quadratic);

/// "***" p < 0.01, "**" p < 0.05, "*" p < 0.1, otherwise "".
std::string_view significance_stars(double p_value);

/// Fits one model variant. Requires at least p + 2 cities, positive GDP per
/// km^2 and population, and indices within [0, 1].
RegressionFit fit_growth_model(std::span<const GrowthObservation> cities, ModelVariant variant);

/// Index of the fit with the smallest AIC (first on ties).
std::size_t select_model(std::span<const RegressionFit> fits);

// ---------------------------------------------------------------------------
// Distribution summaries

enum class IndexKind { PI, AI };
std::string_view to_string(IndexKind k);

inline constexpr std::size_t kHistogramBins = 20;  // width 0.05 over [0, 1]

struct IndexObservation {
    Region region = Region::Other;
    double pi = 0.0;
    double ai = 0.0;
};

struct IndexSummary {
    Region region = Region::Other;
    IndexKind index = IndexKind::PI;
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    std::array<std::size_t, kHistogramBins> histogram{};
};

struct IndexSummaryReport {
    std::vector<IndexSummary> summaries;  // per requested region: PI then AI
    std::vector<std::string> warnings;    // one per requested region with no cities
};

/// Midpoint of the two central order statistics for an even count.
double median(std::vector<double> values);

IndexSummaryReport summarize_index(std::span<const IndexObservation> cities, std::span<const Region> regions);

}  // namespace nightgrid
