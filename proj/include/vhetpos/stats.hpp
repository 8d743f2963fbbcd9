#pragma once

#include <utility>
#include <vector>

namespace vhetpos {

// Inverse standard normal CDF (Acklam's rational approximation refined by one
// Halley step), accurate to well below 1e-9.
double normal_quantile(double p);

// Regularized lower incomplete gamma P(a, x).
double lower_gamma_regularized(double a, double x);

// Chi-square inverse CDF with `dof` degrees of freedom.
double chi2_quantile(double p, int dof);

// Empirical CDF: sorted values paired with fractions i/n.
std::vector<std::pair<double, double>> cdf(const std::vector<double>& values);

// Nearest-rank percentile: the ceil(p*n/100)-th sorted value, p in (0, 100].
double percentile(std::vector<double> values, double p);

struct AvailabilityStats {
    double mean = 0.0;
    double median = 0.0;
};

AvailabilityStats availability_stats(const std::vector<int>& counts);

}  // namespace vhetpos
