#include "bellik/logistic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bellik/random.hpp"

namespace bellik {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sigmoid(double t) {
    if (t >= 0.0) {
        return 1.0 / (1.0 + std::exp(-t));
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

/// log(sigmoid(t)), stable for large |t|.
double log_sigmoid(double t) {
    return t >= 0.0 ? -std::log1p(std::exp(-t)) : t - std::log1p(std::exp(t));
}

}  // namespace

Dataset::Dataset(std::vector<DataRow> rows) : rows_(std::move(rows)) {
    for (const auto& row : rows_) {
        if (!std::isfinite(row.x)) {
            throw std::invalid_argument("covariate values must be finite");
        }
        if (row.y && *row.y != 0 && *row.y != 1) {
            throw std::invalid_argument("outcomes must be 0 or 1");
        }
    }
}

std::size_t Dataset::missing_count() const {
    return static_cast<std::size_t>(
        std::count_if(rows_.begin(), rows_.end(), [](const DataRow& r) { return !r.y; }));
}

void Dataset::require_fittable() const {
    if (effective_size() < 2) {
        throw std::invalid_argument("fitting needs at least two observed outcomes");
    }
}

TrialBelief trial_belief(const LogisticParams& params, double x) {
    const double p = sigmoid(params.beta0 + params.beta1 * x);
    return {p, params.beta2 * (1.0 - p)};
}

LikelihoodKind kind_from_string(std::string_view name) {
    if (name == "lower") {
        return LikelihoodKind::lower;
    }
    if (name == "upper") {
        return LikelihoodKind::upper;
    }
    throw std::invalid_argument("unknown likelihood kind: " + std::string(name));
}

std::string to_string(LikelihoodKind kind) {
    return kind == LikelihoodKind::lower ? "lower" : "upper";
}

double lower_loglik(const LogisticParams& params, const Dataset& data) {
    double sum = 0.0;
    for (const auto& row : data.rows()) {
        if (!row.y) {
            continue;  // vacuous observation, factor 1
        }
        const double t = params.beta0 + params.beta1 * row.x;
        if (*row.y == 1) {
            sum += log_sigmoid(t);
        } else {
            sum += std::log(params.beta2) + log_sigmoid(-t);
        }
    }
    return sum;
}

double upper_loglik(const LogisticParams& params, const Dataset& data) {
    double sum = 0.0;
    for (const auto& row : data.rows()) {
        if (!row.y) {
            continue;
        }
        const double t = params.beta0 + params.beta1 * row.x;
        if (*row.y == 1) {
            const double q = params.beta2 * sigmoid(-t);
            sum += std::log1p(-q);
        } else {
            sum += log_sigmoid(-t);
        }
    }
    return sum;
}

double Gradient::norm() const {
    return std::sqrt(d_beta0 * d_beta0 + d_beta1 * d_beta1 + d_beta2 * d_beta2);
}

Gradient loglik_gradients(const LogisticParams& params, const Dataset& data,
                          LikelihoodKind which) {
    Gradient g;
    for (const auto& row : data.rows()) {
        if (!row.y) {
            continue;
        }
        const double t = params.beta0 + params.beta1 * row.x;
        const double p = sigmoid(t);
        const double y = static_cast<double>(*row.y);
        if (which == LikelihoodKind::lower) {
            const double dt = y - p;
            g.d_beta0 += dt;
            g.d_beta1 += dt * row.x;
            g.d_beta2 += (1.0 - y) / params.beta2;
        } else {
            const double one_minus_p = sigmoid(-t);
            const double q = params.beta2 * one_minus_p;
            const double dt = y * params.beta2 * p * one_minus_p / (1.0 - q) - (1.0 - y) * p;
            g.d_beta0 += dt;
            g.d_beta1 += dt * row.x;
            g.d_beta2 -= y * one_minus_p / (1.0 - q);
        }
    }
    return g;
}

ClassicalFit classical_fit(const Dataset& data, bool include_slope, double bound) {
    data.require_fittable();
    ClassicalFit result;
    double b0 = 0.0;
    double b1 = 0.0;

    auto loglik = [&](double beta0, double beta1) {
        double sum = 0.0;
        for (const auto& row : data.rows()) {
            if (!row.y) {
                continue;
            }
            const double t = beta0 + beta1 * row.x;
            sum += *row.y == 1 ? log_sigmoid(t) : log_sigmoid(-t);
        }
        return sum;
    };

    auto gradient_norm = [&](double beta0, double beta1) {
        double g0 = 0.0, g1 = 0.0;
        for (const auto& row : data.rows()) {
            if (!row.y) {
                continue;
            }
            const double d = static_cast<double>(*row.y) - sigmoid(beta0 + beta1 * row.x);
            g0 += d;
            g1 += d * row.x;
        }
        return include_slope ? std::hypot(g0, g1) : std::abs(g0);
    };

    const std::size_t max_iters = 500;
    double f = loglik(b0, b1);
    for (result.iterations = 0; result.iterations < max_iters; ++result.iterations) {
        double g0 = 0.0, g1 = 0.0;
        double h00 = 0.0, h01 = 0.0, h11 = 0.0;
        for (const auto& row : data.rows()) {
            if (!row.y) {
                continue;
            }
            const double p = sigmoid(b0 + b1 * row.x);
            const double d = static_cast<double>(*row.y) - p;
            const double w = p * (1.0 - p);
            g0 += d;
            g1 += d * row.x;
            h00 += w;
            h01 += w * row.x;
            h11 += w * row.x * row.x;
        }
        if ((include_slope ? std::hypot(g0, g1) : std::abs(g0)) < 1e-10) {
            break;
        }

        double step0 = 0.0, step1 = 0.0;
        if (include_slope) {
            const double det = h00 * h11 - h01 * h01;
            if (!(std::abs(det) > 1e-12)) {
                result.separation = true;  // information matrix collapsed
                break;
            }
            step0 = (h11 * g0 - h01 * g1) / det;
            step1 = (h00 * g1 - h01 * g0) / det;
        } else {
            if (!(h00 > 1e-12)) {
                result.separation = true;
                break;
            }
            step0 = g0 / h00;
        }

        double scale = 1.0;
        bool moved = false;
        for (int halvings = 0; halvings < 40; ++halvings) {
            const double c0 = b0 + scale * step0;
            const double c1 = b1 + scale * step1;
            const double fc = loglik(c0, c1);
            if (fc >= f && (c0 != b0 || c1 != b1)) {
                b0 = c0;
                b1 = c1;
                f = fc;
                moved = true;
                break;
            }
            scale *= 0.5;
        }
        if (!moved) {
            break;  // at numerical resolution of the objective
        }

        if (std::abs(b0) > bound || std::abs(b1) > bound) {
            result.separation = true;
            b0 = std::clamp(b0, -bound, bound);
            b1 = std::clamp(b1, -bound, bound);
            f = loglik(b0, b1);
            break;
        }
    }
    result.beta0 = b0;
    result.beta1 = b1;
    result.objective = f;
    result.gradient_norm = gradient_norm(b0, b1);
    // Residuals all near zero mean the data are (quasi-)separated and the
    // true maximizer sits at infinity, even though the gradient vanishes.
    double max_residual = 0.0;
    for (const auto& row : data.rows()) {
        if (!row.y) {
            continue;
        }
        max_residual = std::max(
            max_residual, std::abs(static_cast<double>(*row.y) - sigmoid(b0 + b1 * row.x)));
    }
    if (max_residual < 1e-4) {
        result.separation = true;
    }
    result.converged = !result.separation && result.gradient_norm < 1e-6;
    return result;
}

namespace {

struct Box {
    std::array<double, 3> lo;
    std::array<double, 3> hi;

    std::array<double, 3> project(const std::array<double, 3>& v) const {
        return {std::clamp(v[0], lo[0], hi[0]), std::clamp(v[1], lo[1], hi[1]),
                std::clamp(v[2], lo[2], hi[2])};
    }
};

double dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const std::array<double, 3>& a) {
    return std::sqrt(dot(a, a));
}

std::array<double, 3> minus(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

LogisticParams to_params(const std::array<double, 3>& v) {
    return {v[0], v[1], v[2]};
}

struct StartResult {
    std::array<double, 3> point{};
    double objective = -kInf;
    bool converged = false;
    std::size_t iterations = 0;
};

}  // namespace

FitResult fit(const Dataset& data, LikelihoodKind which, const OptimizerConfig& config) {
    data.require_fittable();
    if (config.fixed_beta2 &&
        (*config.fixed_beta2 < config.beta2_min || *config.fixed_beta2 > 1.0)) {
        throw std::invalid_argument("fixed beta2 outside [beta2_min, 1]");
    }

    Box box{{-config.box_bound, -config.box_bound, config.beta2_min},
            {config.box_bound, config.box_bound, 1.0}};
    std::array<bool, 3> pinned{false, config.no_slope, config.fixed_beta2.has_value()};
    if (config.no_slope) {
        box.lo[1] = box.hi[1] = 0.0;
    }
    if (config.fixed_beta2) {
        box.lo[2] = box.hi[2] = *config.fixed_beta2;
    }

    auto value = [&](const std::array<double, 3>& v) {
        const LogisticParams params = to_params(v);
        double f = which == LikelihoodKind::lower ? lower_loglik(params, data)
                                                  : upper_loglik(params, data);
        if (config.l2_penalty > 0.0) {
            f -= config.l2_penalty * (v[0] * v[0] + v[1] * v[1]);
        }
        return f;
    };
    auto gradient = [&](const std::array<double, 3>& v) {
        const Gradient g = loglik_gradients(to_params(v), data, which);
        std::array<double, 3> out{g.d_beta0, g.d_beta1, g.d_beta2};
        if (config.l2_penalty > 0.0) {
            out[0] -= 2.0 * config.l2_penalty * v[0];
            out[1] -= 2.0 * config.l2_penalty * v[1];
        }
        for (std::size_t i = 0; i < 3; ++i) {
            if (pinned[i]) {
                out[i] = 0.0;
            }
        }
        return out;
    };

    std::mt19937_64 gen(config.seed);
    StartResult best;
    std::size_t best_start = 0;
    for (std::size_t s = 0; s < std::max<std::size_t>(config.starts, 1); ++s) {
        std::array<double, 3> x{0.0, 0.0, 1.0};
        if (s > 0) {
            x[0] = rng::uniform(gen, -2.0, 2.0);
            x[1] = rng::uniform(gen, -2.0, 2.0);
            x[2] = rng::uniform(gen, config.beta2_min, 1.0);
        }
        x = box.project(x);

        StartResult run;
        double f = value(x);
        auto g = gradient(x);
        double step = 1.0 / (1.0 + norm(g));
        std::array<double, 3> prev_x = x;
        std::array<double, 3> prev_g = g;
        bool have_prev = false;

        for (run.iterations = 0; run.iterations < config.max_iters; ++run.iterations) {
            const auto pg = minus(box.project({x[0] + g[0], x[1] + g[1], x[2] + g[2]}), x);
            if (norm(pg) < config.tol) {
                run.converged = true;
                break;
            }

            if (have_prev) {
                // Spectral (Barzilai-Borwein) trial step, safeguarded.
                const auto sx = minus(x, prev_x);
                const auto sg = minus(g, prev_g);
                const double sg_dot = dot(sx, sg);
                if (std::abs(sg_dot) > 1e-300) {
                    step = std::clamp(std::abs(dot(sx, sx) / sg_dot), 1e-12, 1e12);
                }
            }

            double t = step;
            bool accepted = false;
            for (int backtracks = 0; backtracks < 70; ++backtracks) {
                const auto cand =
                    box.project({x[0] + t * g[0], x[1] + t * g[1], x[2] + t * g[2]});
                const auto dir = minus(cand, x);
                const double fc = value(cand);
                if (std::isfinite(fc) && fc >= f + config.armijo * dot(g, dir) &&
                    norm(dir) > 0.0) {
                    prev_x = x;
                    prev_g = g;
                    have_prev = true;
                    x = cand;
                    f = fc;
                    g = gradient(x);
                    accepted = true;
                    break;
                }
                t *= config.shrink;
            }
            if (!accepted) {
                break;  // line search stalled; flagged via converged=false
            }
        }
        run.point = x;
        run.objective = f;
        if (s == 0 || run.objective > best.objective) {
            best = run;
            best_start = s;
        }
    }

    FitResult result;
    result.params = to_params(best.point);
    result.which = which;
    result.objective = best.objective;
    result.converged = best.converged;
    result.iterations = best.iterations;
    result.best_start = best_start;
    result.excluded_missing = data.missing_count();

    // KKT diagnostics at the returned point.
    const auto g = gradient(best.point);
    KktReport kkt;
    kkt.gradient_norm = norm(g);
    std::array<double, 3> residual = g;
    auto activate_upper = [&](std::size_t i, double& mu, const std::string& name) {
        mu = std::max(g[i], 0.0);
        residual[i] -= mu;
        kkt.active.push_back(name);
    };
    auto activate_lower = [&](std::size_t i, double& mu, const std::string& name) {
        mu = std::max(-g[i], 0.0);
        residual[i] += mu;
        kkt.active.push_back(name);
    };
    const auto& v = best.point;
    bool boundary = false;
    if (!pinned[2]) {
        if (v[2] >= box.hi[2]) {
            activate_upper(2, kkt.mu_beta2_upper, "beta2<=1");
            boundary = true;
        } else if (v[2] <= box.lo[2]) {
            activate_lower(2, kkt.mu_beta2_lower, "beta2>=min");
            boundary = true;
        }
    }
    if (!pinned[0]) {
        if (v[0] >= box.hi[0]) {
            activate_upper(0, kkt.mu_beta0, "beta0<=bound");
            boundary = true;
        } else if (v[0] <= box.lo[0]) {
            activate_lower(0, kkt.mu_beta0, "beta0>=-bound");
            boundary = true;
        }
    }
    if (!pinned[1]) {
        if (v[1] >= box.hi[1]) {
            activate_upper(1, kkt.mu_beta1, "beta1<=bound");
            boundary = true;
        } else if (v[1] <= box.lo[1]) {
            activate_lower(1, kkt.mu_beta1, "beta1>=-bound");
            boundary = true;
        }
    }
    for (std::size_t i = 0; i < 3; ++i) {
        if (pinned[i]) {
            residual[i] = 0.0;
        }
    }
    kkt.stationarity_residual = norm(residual);
    kkt.beta2_upper_gap = v[2] - 1.0;
    kkt.data_constraint_max = -kInf;
    for (const auto& row : data.rows()) {
        if (!row.y) {
            continue;
        }
        kkt.data_constraint_max =
            std::max(kkt.data_constraint_max, -v[2] - std::exp(v[0] + v[1] * row.x));
    }
    // Active bounds sit exactly on their constraint, so every tracked
    // mu * g product vanishes; the per-row multipliers are identically zero.
    auto bound_gap = [&](std::size_t i) {
        return v[i] >= box.hi[i] ? v[i] - box.hi[i] : box.lo[i] - v[i];
    };
    kkt.max_slack = std::max({std::abs(kkt.mu_beta2_upper * (v[2] - 1.0)),
                              std::abs(kkt.mu_beta2_lower * (box.lo[2] - v[2])),
                              std::abs(kkt.mu_beta0 * bound_gap(0)),
                              std::abs(kkt.mu_beta1 * bound_gap(1))});
    result.kkt = kkt;
    result.active_constraints = kkt.active;
    result.boundary_hit = boundary;
    return result;
}

Prediction predict(const FitResult& lower_model, const FitResult& upper_model, double x) {
    for (const auto* model : {&lower_model, &upper_model}) {
        if (!model->converged && !model->boundary_hit) {
            throw std::invalid_argument(
                "model neither converged nor stopped on a reported boundary");
        }
    }
    auto package = [&](const FitResult& model) {
        const TrialBelief belief = trial_belief(model.params, x);
        return ModelPrediction{belief, belief.p, 1.0 - belief.q};
    };
    Prediction out;
    out.x = x;
    out.lower_model = package(lower_model);
    out.upper_model = package(upper_model);
    out.union_lo = std::min(out.lower_model.interval_lo, out.upper_model.interval_lo);
    out.union_hi = std::max(out.lower_model.interval_hi, out.upper_model.interval_hi);
    return out;
}

}  // namespace bellik
