#pragma once

#include <cstdint>
#include <utility>

namespace elcc {

/// Bernoulli KL divergence D(gamma || delta), both strictly inside (0,1).
/// Throws std::domain_error at the boundary.
double kl_divergence(double gamma, double delta);

/// Large-deviation rate for the upper tail P[X >= gamma*L] of a mean-delta
/// walk: D(gamma || delta) when delta < gamma, and 0 otherwise (the bound is
/// vacuous once the mean reaches the threshold, including delta >= 1).
double kl_upper_rate(double gamma, double delta);

/// 95% Wilson score interval for successes/trials.
struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};
WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials);

/// Survival function of the chi-square distribution with k degrees of
/// freedom: P[X >= x]. Regularized upper incomplete gamma Q(k/2, x/2).
double chi_square_sf(double x, double k);

}  // namespace elcc
