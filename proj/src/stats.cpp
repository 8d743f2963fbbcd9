#include "vhetpos/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vhetpos/errors.hpp"

namespace vhetpos {

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error("normal_quantile: p must be in (0, 1), got " + std::to_string(p));
    }

    // Acklam's rational approximation.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley refinement against the exact CDF.
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(x * x / 2.0);
    x -= u / (1.0 + x * u / 2.0);
    return x;
}

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) = 1 - P(a, x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double lower_gamma_regularized(double a, double x) {
    if (x < 0.0 || a <= 0.0) {
        throw Error("lower_gamma_regularized: invalid arguments");
    }
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double chi2_quantile(double p, int dof) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error("chi2_quantile: p must be in (0, 1)");
    }
    if (dof < 1) {
        throw Error("chi2_quantile: dof must be >= 1");
    }
    const double k = dof;

    // Wilson-Hilferty starting value, then Newton on the CDF.
    const double z = normal_quantile(p);
    double x = k * std::pow(1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k)), 3.0);
    if (x <= 0.0) x = 1e-8;
    for (int i = 0; i < 100; ++i) {
        const double f = lower_gamma_regularized(k / 2.0, x / 2.0) - p;
        const double pdf = 0.5 * std::exp((k / 2.0 - 1.0) * std::log(x / 2.0) - x / 2.0 -
                                          std::lgamma(k / 2.0));
        if (pdf <= 0.0) break;
        const double step = f / pdf;
        x -= step;
        if (x <= 0.0) x = 1e-12;
        if (std::abs(step) < 1e-12 * (1.0 + x)) break;
    }
    return x;
}

std::vector<std::pair<double, double>> cdf(const std::vector<double>& values) {
    if (values.empty()) throw EmptyInput("cdf: no values");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> out;
    out.reserve(sorted.size());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        out.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
    }
    return out;
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw EmptyInput("percentile: no values");
    if (!(p > 0.0 && p <= 100.0)) {
        throw Error("percentile: p must be in (0, 100]");
    }
    std::sort(values.begin(), values.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(p * static_cast<double>(values.size()) / 100.0));
    return values[std::max<std::size_t>(rank, 1) - 1];
}

AvailabilityStats availability_stats(const std::vector<int>& counts) {
    if (counts.empty()) throw EmptyInput("availability_stats: no epochs");
    double sum = 0.0;
    std::vector<double> v(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        sum += counts[i];
        v[i] = counts[i];
    }
    return {sum / static_cast<double>(counts.size()), percentile(std::move(v), 50.0)};
}

}  // namespace vhetpos
