#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace uipt {

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double stderr_slope = 0;
    std::size_t n_points = 0;
};

// Ordinary least squares y = a + b x.
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Least-squares slope of log y against log x; entries with y <= 0 are skipped.
FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct GofReport {
    std::string test;
    double statistic = 0;
    double p_value = 0;
    double threshold = 0;  // significance level, or a KS distance bound
    bool pass = false;
    std::uint64_t n1 = 0, n2 = 0;  // sample sizes
    long dof = 0;
};

// Pearson chi-square of observed counts against expected probabilities.
// Buckets with expected count below min_expected are merged into their
// right neighbor (the caller usually pre-buckets the tail anyway).
GofReport chi_square_gof(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs,
                         double significance, double min_expected = 5.0);

double chi_square_pvalue(double stat, long dof);

// One-sample Kolmogorov-Smirnov against a continuous CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b);
// Asymptotic Kolmogorov tail probability for the given effective sample size.
double ks_pvalue(double d, double n_effective);

// Wilson score interval for a binomial proportion.
struct ProportionCI {
    double fraction = 0;
    double lo = 0;
    double hi = 0;
};
ProportionCI wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

// Regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double gamma_q(double a, double x);

}  // namespace uipt
