#include "core/iv.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace exg {

double estimate_iv_strength(const std::vector<IvSample>& samples) {
    require(samples.size() >= 2, ErrorCode::invalid_argument,
            "need at least two samples to estimate covariances");
    const double n = static_cast<double>(samples.size());
    double mx = 0.0, ma = 0.0, mb = 0.0;
    for (const auto& s : samples) {
        mx += s.x;
        ma += s.a;
        mb += s.b;
    }
    mx /= n;
    ma /= n;
    mb /= n;
    double cov_xa = 0.0, cov_xb = 0.0;
    for (const auto& s : samples) {
        cov_xa += (s.x - mx) * (s.a - ma);
        cov_xb += (s.x - mx) * (s.b - mb);
    }
    cov_xa /= n - 1.0;
    cov_xb /= n - 1.0;
    require(std::abs(cov_xa) > 1e-12, ErrorCode::validation_error,
            "instrument is uncorrelated with the treatment; the effect is not identified");
    return cov_xb / cov_xa;
}

std::vector<IvSample> synthetic_linear_iv(double gamma, std::size_t count, std::uint64_t seed) {
    require(count >= 2, ErrorCode::invalid_argument, "need at least two samples");
    SplitMix64 rng(seed);
    std::vector<IvSample> out(count);
    for (auto& s : out) {
        double x = rng.next_gaussian();
        double confounder = rng.next_gaussian();
        double noise = rng.next_gaussian();
        s.x = x;
        s.a = x + noise;
        s.b = gamma * s.a + confounder;
    }
    return out;
}

} // namespace exg
