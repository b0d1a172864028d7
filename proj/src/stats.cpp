#include "elcc/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace elcc {

double kl_divergence(double gamma, double delta) {
    if (!(gamma > 0.0 && gamma < 1.0) || !(delta > 0.0 && delta < 1.0))
        throw std::domain_error("kl_divergence: arguments must lie strictly in (0,1)");
    return gamma * std::log(gamma / delta) + (1.0 - gamma) * std::log((1.0 - gamma) / (1.0 - delta));
}

double kl_upper_rate(double gamma, double delta) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::domain_error("kl_upper_rate: gamma must lie in (0,1)");
    if (delta <= 0.0) throw std::domain_error("kl_upper_rate: delta must be positive");
    if (delta >= gamma) return 0.0;
    return kl_divergence(gamma, delta);
}

WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = phat + z2 / (2.0 * n);
    const double margin = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return {(center - margin) / denom, (center + margin) / denom};
}

namespace {

// Regularized incomplete gamma functions, series + continued fraction
// (Lentz). Adequate for the chi-square tail probabilities used in audits.
double gamma_p_series(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 1; n < 1000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi_square_sf(double x, double k) {
    if (x < 0.0 || k <= 0.0) throw std::domain_error("chi_square_sf: invalid arguments");
    if (x == 0.0) return 1.0;
    const double a = k / 2.0;
    const double xx = x / 2.0;
    if (xx < a + 1.0) return 1.0 - gamma_p_series(a, xx);
    return gamma_q_contfrac(a, xx);
}

}  // namespace elcc
