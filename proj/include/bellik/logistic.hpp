#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bellik {

/// One observation: scalar covariate and a binary outcome. A missing outcome
/// is a vacuous observation; it contributes factor 1 to both likelihoods.
struct DataRow {
    double x = 0.0;
    std::optional<int> y;  ///< 0, 1, or missing
};

class Dataset {
  public:
    explicit Dataset(std::vector<DataRow> rows);

    const std::vector<DataRow>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    std::size_t missing_count() const;
    std::size_t effective_size() const { return rows_.size() - missing_count(); }

    /// Fitting requires at least two observed outcomes.
    void require_fittable() const;

  private:
    std::vector<DataRow> rows_;
};

/// Regression parameters: p = sigmoid(beta0 + beta1 x) is the mass of outcome
/// 1 and q = beta2 * (1 - p) the mass of outcome 0; the remainder 1 - p - q
/// stays on the whole frame.
struct LogisticParams {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double beta2 = 1.0;
};

/// Belief masses of one trial at covariate x.
struct TrialBelief {
    double p = 0.0;
    double q = 0.0;
    double r() const { return 1.0 - p - q; }
};

TrialBelief trial_belief(const LogisticParams& params, double x);

enum class LikelihoodKind { lower, upper };

LikelihoodKind kind_from_string(std::string_view name);
std::string to_string(LikelihoodKind kind);

/// Log of the lower likelihood: sum over observed rows of
/// y log p + (1 - y) log q. Returns -inf when a zero mass is hit.
double lower_loglik(const LogisticParams& params, const Dataset& data);

/// Log of the upper likelihood: sum over observed rows of
/// y log(1 - q) + (1 - y) log(1 - p).
double upper_loglik(const LogisticParams& params, const Dataset& data);

struct Gradient {
    double d_beta0 = 0.0;
    double d_beta1 = 0.0;
    double d_beta2 = 0.0;

    double norm() const;
};

/// Analytic partials of the chosen log-likelihood at `params`.
Gradient loglik_gradients(const LogisticParams& params, const Dataset& data,
                          LikelihoodKind which);

struct ClassicalFit {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double objective = 0.0;
    double gradient_norm = 0.0;
    bool converged = false;
    /// Complete separation: coefficients diverged to the reporting bound.
    bool separation = false;
    std::size_t iterations = 0;
};

/// Maximum-likelihood logistic regression (Newton iterations with step
/// halving). With include_slope = false only the intercept is fitted.
ClassicalFit classical_fit(const Dataset& data, bool include_slope = true, double bound = 50.0);

struct OptimizerConfig {
    double box_bound = 50.0;   ///< |beta0|, |beta1| <= box_bound
    double beta2_min = 1e-8;   ///< beta2 >= beta2_min keeps q nonnegative
    std::size_t max_iters = 10000;
    double tol = 1e-6;         ///< projected-gradient norm at convergence
    std::size_t starts = 5;    ///< multi-start count (start 0 is (0, 0, 1))
    std::uint64_t seed = 20230817;
    double armijo = 1e-4;
    double shrink = 0.5;
    double l2_penalty = 0.0;   ///< optional ridge on (beta0, beta1); off by default
    bool no_slope = false;     ///< pin beta1 = 0
    std::optional<double> fixed_beta2;
};

/// First-order optimality diagnostics at the returned solution. Multipliers
/// are recovered from the gradient on the active bounds; the per-row
/// constraints -beta2 - e^(beta0 + beta1 x_i) <= 0 are strictly slack
/// whenever beta2 > 0, so their multipliers are zero.
struct KktReport {
    double stationarity_residual = 0.0;  ///< norm of gradient minus multiplier pullback
    double gradient_norm = 0.0;
    double mu_beta2_upper = 0.0;  ///< multiplier of beta2 - 1 <= 0
    double mu_beta2_lower = 0.0;  ///< multiplier of beta2 >= beta2_min
    double mu_beta0 = 0.0;        ///< multiplier of the active |beta0| bound, if any
    double mu_beta1 = 0.0;
    double beta2_upper_gap = 0.0;     ///< value of beta2 - 1
    double data_constraint_max = 0.0; ///< max_i of -beta2 - e^(beta0 + beta1 x_i)
    double max_slack = 0.0;           ///< max |mu * g| over all tracked constraints
    std::vector<std::string> active;
};

struct FitResult {
    LogisticParams params;
    LikelihoodKind which = LikelihoodKind::lower;
    double objective = 0.0;
    KktReport kkt;
    std::vector<std::string> active_constraints;
    bool converged = false;
    bool boundary_hit = false;
    std::size_t iterations = 0;
    std::size_t best_start = 0;
    std::size_t excluded_missing = 0;
};

/// Projected gradient ascent with backtracking line search over the feasible
/// box, multi-start; returns the best objective across starts (exact ties go
/// to the lowest start index).
FitResult fit(const Dataset& data, LikelihoodKind which, const OptimizerConfig& config = {});

struct ModelPrediction {
    TrialBelief belief;
    double interval_lo = 0.0;  ///< belief of outcome 1: p
    double interval_hi = 0.0;  ///< plausibility of outcome 1: 1 - q
};

struct Prediction {
    double x = 0.0;
    ModelPrediction lower_model;
    ModelPrediction upper_model;
    double union_lo = 0.0;
    double union_hi = 0.0;
};

/// Probability intervals for outcome 1 at covariate x under both fitted
/// models. Each model must have converged or stopped on a reported boundary.
Prediction predict(const FitResult& lower_model, const FitResult& upper_model, double x);

}  // namespace bellik
