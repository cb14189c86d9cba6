// Command-line front end: evidence combination, repeated-trial likelihoods,
// factorization verification, likelihood surfaces, and generalized logistic
// regression fits.
//
// Exit codes: 0 success, 1 usage/input error, 2 total conflict,
// 3 non-convergence.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellik/errors.hpp"
#include "bellik/io.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConflict = 2;
constexpr int kExitNoConvergence = 3;

struct AppConfig {
    bellik::SizeCaps caps;
    bellik::OptimizerConfig optimizer;
    double grid_step = 0.01;
};

AppConfig load_config(const std::string& path) {
    AppConfig config;
    if (path.empty()) {
        return config;
    }
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    json j = json::parse(in);
    config.caps.frame_cap = j.value("frame_cap", config.caps.frame_cap);
    config.caps.product_cap = j.value("product_cap", config.caps.product_cap);
    config.grid_step = j.value("grid_step", config.grid_step);
    if (j.contains("optimizer")) {
        const auto& opt = j.at("optimizer");
        auto& o = config.optimizer;
        o.box_bound = opt.value("box_bound", o.box_bound);
        o.beta2_min = opt.value("beta2_min", o.beta2_min);
        o.max_iters = opt.value("max_iters", o.max_iters);
        o.tol = opt.value("tol", o.tol);
        o.starts = opt.value("starts", o.starts);
        o.seed = opt.value("seed", o.seed);
        o.armijo = opt.value("armijo", o.armijo);
        o.shrink = opt.value("shrink", o.shrink);
        o.l2_penalty = opt.value("l2_penalty", o.l2_penalty);
    }
    return config;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open file: " + path);
    }
    return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot write file: " + path);
    }
    out << text;
}

void write_json(const std::string& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// combine

struct CombineArgs {
    std::vector<std::string> files;
    std::string rule = "dempster";
    bool product = false;
    std::string output;
};

int cmd_combine(const CombineArgs& args, const AppConfig& config) {
    const auto rule = bellik::rule_from_string(args.rule);
    std::vector<bellik::MassFunction> masses;
    for (const auto& file : args.files) {
        masses.push_back(bellik::mass_from_json(load_json_file(file), config.caps));
    }

    if (args.product) {
        auto combined = bellik::combine_many(masses, rule, config.caps.product_cap);
        write_json(args.output, bellik::mass_to_json(combined));
        return kExitOk;
    }

    json out;
    switch (rule) {
        case bellik::CombinationRule::conjunctive:
            out = bellik::mass_to_json(bellik::combine_conjunctive_all(masses));
            break;
        case bellik::CombinationRule::dempster:
            out = bellik::mass_to_json(bellik::combine_dempster_all(masses));
            break;
        case bellik::CombinationRule::disjunctive:
            out = bellik::mass_to_json(bellik::combine_disjunctive_all(masses));
            break;
    }
    write_json(args.output, out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// likelihood

struct LikelihoodArgs {
    std::vector<std::string> files;
    std::string sample;
    std::string rule = "conjunctive";
    std::string method = "factorized";
};

int cmd_likelihood(const LikelihoodArgs& args, const AppConfig& config) {
    bellik::TrialModel model;
    model.rule = bellik::rule_from_string(args.rule);
    for (const auto& file : args.files) {
        model.trials.push_back(bellik::mass_from_json(load_json_file(file), config.caps));
    }
    const auto sample = bellik::SharpSample::parse(args.sample);
    if (sample.outcomes.size() != model.size()) {
        throw std::invalid_argument("sample arity " + std::to_string(sample.outcomes.size()) +
                                    " does not match model count " +
                                    std::to_string(model.size()));
    }

    const bool factorized = args.method == "factorized" || args.method == "both";
    const bool bruteforce = args.method == "bruteforce" || args.method == "both";
    if (!factorized && !bruteforce) {
        throw std::invalid_argument("unknown method: " + args.method);
    }

    std::ostringstream out;
    out << "rule=" << args.rule << "\n";

    if (model.rule == bellik::CombinationRule::disjunctive) {
        std::optional<bellik::LikelihoodPair> fast;
        if (factorized) {
            fast = bellik::disjunctive_complement_likelihood(model, sample);
            out << "complement_lower=" << bellik::format_double(fast->lower) << "\n";
            out << "complement_upper=" << bellik::format_double(fast->upper) << "\n";
        }
        if (bruteforce) {
            auto combined =
                bellik::combine_many(model.trials, model.rule, config.caps.product_cap);
            auto complement = bellik::ProductSubset::singleton_tuple(combined.domain(),
                                                                     sample.outcomes)
                                  .complement();
            const double lower = combined.belief(complement);
            const double upper = combined.plausibility(complement);
            out << "bruteforce_complement_lower=" << bellik::format_double(lower) << "\n";
            out << "bruteforce_complement_upper=" << bellik::format_double(upper) << "\n";
            if (fast) {
                out << "lower_discrepancy="
                    << bellik::format_double(std::abs(fast->lower - lower)) << "\n";
                out << "upper_discrepancy="
                    << bellik::format_double(std::abs(fast->upper - upper)) << "\n";
            }
        }
        std::cout << out.str();
        return kExitOk;
    }

    std::optional<double> fast_lower;
    std::optional<bellik::UpperLikelihood> fast_upper;
    if (factorized) {
        fast_lower = bellik::lower_likelihood_sharp(model, sample);
        out << "lower=" << bellik::format_double(*fast_lower) << "\n";
        if (model.all_binary()) {
            fast_upper = bellik::upper_likelihood_sharp(model, sample);
            out << "upper=" << bellik::format_double(fast_upper->value) << "\n";
            out << "upper_conjecture_based="
                << (fast_upper->conjecture_based ? "true" : "false") << "\n";
        } else {
            out << "upper=unavailable (factorized upper needs binary frames; use --method "
                   "bruteforce)\n";
        }
    }
    if (bruteforce) {
        const auto oracle =
            bellik::likelihood_bruteforce_sharp(model, sample, config.caps.product_cap);
        out << "bruteforce_lower=" << bellik::format_double(oracle.lower) << "\n";
        out << "bruteforce_upper=" << bellik::format_double(oracle.upper) << "\n";
        if (fast_lower) {
            out << "lower_discrepancy="
                << bellik::format_double(std::abs(*fast_lower - oracle.lower)) << "\n";
        }
        if (fast_upper) {
            out << "upper_discrepancy="
                << bellik::format_double(std::abs(fast_upper->value - oracle.upper)) << "\n";
        }
    }
    std::cout << out.str();
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::size_t n = 3;
    std::size_t trials = 100;
    std::uint64_t seed = 7;
    std::string output;
};

int cmd_verify(const VerifyArgs& args, const AppConfig& config) {
    auto report =
        bellik::verify_factorization(args.n, args.trials, args.seed, config.caps.product_cap);
    write_json(args.output, bellik::report_to_json(report));
    if (!report.proven_claims_ok()) {
        std::cerr << "proven factorization claims exceeded tolerance "
                  << bellik::format_double(report.tolerance) << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// surface

struct SurfaceArgs {
    std::size_t k = 0;
    std::size_t n = 0;
    double step = std::numeric_limits<double>::quiet_NaN();  // NaN: take the config value
    std::string output;
};

int cmd_surface(const SurfaceArgs& args, const AppConfig& config) {
    const double step = std::isnan(args.step) ? config.grid_step : args.step;
    auto surface = bellik::bernoulli_surface({args.k, args.n}, step);
    std::ostringstream out;
    bellik::surface_to_csv(out, surface);
    write_text(args.output, out.str());
    if (!args.output.empty()) {
        std::cout << "argmax_lower p=" << bellik::format_double(surface.lower_argmax.p)
                  << " q=" << bellik::format_double(surface.lower_argmax.q) << "\n"
                  << "argmax_upper p=" << bellik::format_double(surface.upper_argmax.p)
                  << " q=" << bellik::format_double(surface.upper_argmax.q) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fit / predict

struct FitArgs {
    std::string data_file;
    std::string which = "lower";
    bool no_slope = false;
    double fix_beta2 = -1.0;  // < 0: free
    std::string output;
};

int cmd_fit(const FitArgs& args, const AppConfig& config) {
    std::ifstream in(args.data_file);
    if (!in) {
        throw std::invalid_argument("cannot open dataset: " + args.data_file);
    }
    auto data = bellik::dataset_from_csv(in);

    if (args.which == "classical") {
        auto result = bellik::classical_fit(data, !args.no_slope, config.optimizer.box_bound);
        json j{{"which", "classical"},
               {"beta", {result.beta0, result.beta1}},
               {"objective", result.objective},
               {"gradient_norm", result.gradient_norm},
               {"converged", result.converged},
               {"separation", result.separation},
               {"iterations", result.iterations}};
        write_json(args.output, j);
        return result.converged || result.separation ? kExitOk : kExitNoConvergence;
    }

    auto optimizer = config.optimizer;
    optimizer.no_slope = args.no_slope;
    if (args.fix_beta2 >= 0.0) {
        optimizer.fixed_beta2 = args.fix_beta2;
    }
    auto result = bellik::fit(data, bellik::kind_from_string(args.which), optimizer);
    write_json(args.output, bellik::fit_result_to_json(result));
    if (!result.converged && !result.boundary_hit) {
        std::cerr << "fit did not converge after " << result.iterations
                  << " iterations (projected-gradient tolerance "
                  << bellik::format_double(optimizer.tol) << ")\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}

struct PredictArgs {
    std::string lower_file;
    std::string upper_file;
    std::vector<double> xs;
    std::string output;
};

int cmd_predict(const PredictArgs& args) {
    auto lower_model = bellik::fit_result_from_json(load_json_file(args.lower_file));
    auto upper_model = bellik::fit_result_from_json(load_json_file(args.upper_file));

    std::ostringstream out;
    out << "x,lower_p,lower_q,lower_lo,lower_hi,upper_p,upper_q,upper_lo,upper_hi,"
           "union_lo,union_hi\n";
    for (double x : args.xs) {
        const auto prediction = bellik::predict(lower_model, upper_model, x);
        const auto& lm = prediction.lower_model;
        const auto& um = prediction.upper_model;
        out << bellik::format_double(x) << ',' << bellik::format_double(lm.belief.p) << ','
            << bellik::format_double(lm.belief.q) << ',' << bellik::format_double(lm.interval_lo)
            << ',' << bellik::format_double(lm.interval_hi) << ','
            << bellik::format_double(um.belief.p) << ',' << bellik::format_double(um.belief.q)
            << ',' << bellik::format_double(um.interval_lo) << ','
            << bellik::format_double(um.interval_hi) << ','
            << bellik::format_double(prediction.union_lo) << ','
            << bellik::format_double(prediction.union_hi) << '\n';
    }
    write_text(args.output, out.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"belief likelihoods over finite random sets"};
    app.require_subcommand(1);

    std::string config_path;
    if (const char* env = std::getenv("BELLIK_CONFIG")) {
        config_path = env;
    }
    app.add_option("--config", config_path, "JSON config file (env: BELLIK_CONFIG)");

    CombineArgs combine_args;
    auto* combine = app.add_subcommand("combine", "combine mass functions");
    combine->add_option("files", combine_args.files, "mass JSON files")
        ->required()
        ->expected(2, -1);
    combine->add_option("--rule", combine_args.rule, "dempster|conjunctive|disjunctive")
        ->required();
    combine->add_flag("--product", combine_args.product,
                      "treat inputs as per-factor masses and combine on their product frame");
    combine->add_option("-o,--output", combine_args.output, "output path (default: stdout)");

    LikelihoodArgs likelihood_args;
    auto* likelihood = app.add_subcommand("likelihood", "likelihood of a sharp sample");
    likelihood->add_option("models", likelihood_args.files, "per-trial mass JSON files")
        ->required()
        ->expected(1, -1);
    likelihood->add_option("--sample", likelihood_args.sample, "comma-separated outcomes")
        ->required();
    likelihood->add_option("--rule", likelihood_args.rule, "dempster|conjunctive|disjunctive");
    likelihood->add_option("--method", likelihood_args.method, "factorized|bruteforce|both");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "check factorization claims against brute force");
    verify->add_option("--n", verify_args.n, "trials per model");
    verify->add_option("--trials", verify_args.trials, "random models to sample");
    verify->add_option("--seed", verify_args.seed, "RNG seed");
    verify->add_option("-o,--output", verify_args.output, "report path (default: stdout)");

    SurfaceArgs surface_args;
    auto* surface = app.add_subcommand("surface", "lower/upper likelihood surfaces");
    surface->add_option("--k", surface_args.k, "successes")->required();
    surface->add_option("--n", surface_args.n, "trials")->required();
    surface->add_option("--step", surface_args.step, "grid step in (0, 0.5]");
    surface->add_option("-o,--output", surface_args.output, "CSV path (default: stdout)");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "fit a regression model");
    fit->add_option("data", fit_args.data_file, "dataset CSV (header x,y)")->required();
    fit->add_option("--which", fit_args.which, "classical|lower|upper")->required();
    fit->add_flag("--no-slope", fit_args.no_slope, "pin beta1 = 0");
    fit->add_option("--fix-beta2", fit_args.fix_beta2, "pin beta2 to a value in [min, 1]");
    fit->add_option("-o,--output", fit_args.output, "model JSON path (default: stdout)");

    PredictArgs predict_args;
    auto* predict = app.add_subcommand("predict", "probability intervals at covariates");
    predict->add_option("--lower", predict_args.lower_file, "lower model JSON")->required();
    predict->add_option("--upper", predict_args.upper_file, "upper model JSON")->required();
    predict->add_option("x", predict_args.xs, "covariate values")->required()->expected(1, -1);
    predict->add_option("-o,--output", predict_args.output, "output path (default: stdout)");

    // optimizer overrides for fit; unset sentinels defer to config values
    double opt_box_bound = -1.0, opt_beta2_min = -1.0, opt_tol = -1.0, opt_l2 = -1.0;
    std::int64_t opt_max_iters = -1, opt_starts = -1, opt_seed = -1;
    fit->add_option("--box-bound", opt_box_bound, "bound on |beta0|, |beta1|");
    fit->add_option("--beta2-min", opt_beta2_min, "lower bound for beta2");
    fit->add_option("--max-iters", opt_max_iters, "iteration cap per start");
    fit->add_option("--tol", opt_tol, "projected-gradient tolerance");
    fit->add_option("--starts", opt_starts, "multi-start count");
    fit->add_option("--seed", opt_seed, "multi-start RNG seed");
    fit->add_option("--l2", opt_l2, "ridge penalty on (beta0, beta1)");

    try {
        app.parse(argc, argv);

        AppConfig config = load_config(config_path);
        if (opt_box_bound >= 0.0) config.optimizer.box_bound = opt_box_bound;
        if (opt_beta2_min >= 0.0) config.optimizer.beta2_min = opt_beta2_min;
        if (opt_tol >= 0.0) config.optimizer.tol = opt_tol;
        if (opt_l2 >= 0.0) config.optimizer.l2_penalty = opt_l2;
        if (opt_max_iters >= 0) {
            config.optimizer.max_iters = static_cast<std::size_t>(opt_max_iters);
        }
        if (opt_starts >= 0) {
            config.optimizer.starts = static_cast<std::size_t>(opt_starts);
        }
        if (opt_seed >= 0) {
            config.optimizer.seed = static_cast<std::uint64_t>(opt_seed);
        }

        if (combine->parsed()) {
            return cmd_combine(combine_args, config);
        }
        if (likelihood->parsed()) {
            return cmd_likelihood(likelihood_args, config);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_args, config);
        }
        if (surface->parsed()) {
            return cmd_surface(surface_args, config);
        }
        if (fit->parsed()) {
            return cmd_fit(fit_args, config);
        }
        if (predict->parsed()) {
            return cmd_predict(predict_args);
        }
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const bellik::TotalConflictError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConflict;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
