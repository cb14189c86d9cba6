#include "bellik/bernoulli.hpp"

#include <cmath>
#include <stdexcept>

namespace bellik {

LikelihoodPair bernoulli_likelihoods(const BeliefParams& params, const BernoulliCount& count) {
    if (!params.valid()) {
        throw std::invalid_argument("belief params need p, q >= 0 and p + q <= 1");
    }
    if (!count.valid()) {
        throw std::invalid_argument("need 0 <= k <= n and n >= 1");
    }
    const double k = static_cast<double>(count.k);
    const double nk = static_cast<double>(count.n - count.k);
    const double lower = std::pow(params.p, k) * std::pow(params.q, nk);
    const double upper = std::pow(1.0 - params.q, k) * std::pow(1.0 - params.p, nk);
    return {lower, upper};
}

BernoulliSurface bernoulli_surface(const BernoulliCount& count, double step) {
    if (!count.valid()) {
        throw std::invalid_argument("need 0 <= k <= n and n >= 1");
    }
    if (!(step > 0.0) || step > 0.5) {
        throw std::invalid_argument("step must lie in (0, 0.5]");
    }
    BernoulliSurface surface;
    surface.count = count;
    surface.step = step;

    const auto cells = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
    surface.points.reserve((cells + 1) * (cells + 2) / 2);
    bool first = true;
    for (std::size_t i = 0; i <= cells; ++i) {
        const double p = static_cast<double>(i) * step;
        for (std::size_t j = 0; j + i <= cells; ++j) {
            double q = static_cast<double>(j) * step;
            if (p + q > 1.0) {
                q = 1.0 - p;  // grid rounding pushed the diagonal past the simplex
            }
            const BeliefParams params{p, q};
            const auto lik = bernoulli_likelihoods(params, count);
            const SurfacePoint point{params.p, params.q, lik.lower, lik.upper};
            surface.points.push_back(point);
            // Strict > keeps the first (lexicographically smallest) maximizer.
            if (first || point.lower > surface.lower_argmax.lower) {
                surface.lower_argmax = point;
            }
            if (first || point.upper > surface.upper_argmax.upper) {
                surface.upper_argmax = point;
            }
            first = false;
        }
    }
    return surface;
}

}  // namespace bellik
