#pragma once

#include <cstddef>
#include <vector>

#include "bellik/likelihood.hpp"

namespace bellik {

/// Belief triple of one binary trial: p = m({T}), q = m({F}), r = 1 - p - q.
struct BeliefParams {
    double p = 0.0;
    double q = 0.0;

    double r() const { return 1.0 - p - q; }
    bool valid() const { return p >= 0.0 && q >= 0.0 && p + q <= 1.0; }
};

struct BernoulliCount {
    std::size_t k = 0;  ///< successes (T)
    std::size_t n = 0;  ///< total trials

    bool valid() const { return k <= n && n >= 1; }
};

/// Closed-form lower/upper likelihoods of a k-of-n sample under
/// equidistributed trials: lower = p^k q^(n-k), upper = (1-q)^k (1-p)^(n-k).
LikelihoodPair bernoulli_likelihoods(const BeliefParams& params, const BernoulliCount& count);

struct SurfacePoint {
    double p = 0.0;
    double q = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

/// Both likelihood surfaces over the simplex grid {(p,q): p,q >= 0, p+q <= 1}
/// at multiples of `step`, plus the grid argmax of each. Ties break toward
/// smaller (p, q) lexicographically.
struct BernoulliSurface {
    BernoulliCount count;
    double step = 0.0;
    std::vector<SurfacePoint> points;  ///< p ascending, then q ascending
    SurfacePoint lower_argmax;
    SurfacePoint upper_argmax;
};

BernoulliSurface bernoulli_surface(const BernoulliCount& count, double step);

}  // namespace bellik
