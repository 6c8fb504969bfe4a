#pragma once

#include <cstdint>
#include <vector>

namespace exg {

struct IvSample {
    double x = 0.0;
    double a = 0.0;
    double b = 0.0;
};

// Instrumental-variable estimate of the causal strength of A on B,
// Cov(X,B) / Cov(X,A), from joint samples of (X, A, B).
double estimate_iv_strength(const std::vector<IvSample>& samples);

// Synthetic linear model with a hidden confounder: X, the confounder, and
// the structural noise are independent standard normals, A = X + noise,
// B = gamma * A + confounder. The true effect of A on B is gamma.
std::vector<IvSample> synthetic_linear_iv(double gamma, std::size_t count, std::uint64_t seed);

} // namespace exg
