#include "bellik/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bellik/random.hpp"

namespace bellik {

namespace {

void require_nonempty(const TrialModel& model) {
    if (model.trials.empty()) {
        throw std::invalid_argument("trial model needs at least one trial");
    }
}

void require_conjunctive(const TrialModel& model) {
    if (model.rule == CombinationRule::disjunctive) {
        throw std::invalid_argument(
            "factorized path applies to conjunctive/dempster combination; "
            "use the disjunctive complement operations instead");
    }
}

void require_binary(const TrialModel& model) {
    if (!model.all_binary()) {
        throw std::invalid_argument("factorized path requires binary trial frames");
    }
}

void require_arity(const TrialModel& model, std::size_t got) {
    if (got != model.size()) {
        throw std::invalid_argument("sample arity " + std::to_string(got) +
                                    " does not match trial count " +
                                    std::to_string(model.size()));
    }
}

std::vector<SubsetMask> sample_singletons(const TrialModel& model, const SharpSample& sample) {
    require_arity(model, sample.outcomes.size());
    std::vector<SubsetMask> out;
    out.reserve(model.size());
    for (std::size_t i = 0; i < model.size(); ++i) {
        out.push_back(SubsetMask::singleton(model.trials[i].domain(), sample.outcomes[i]));
    }
    return out;
}

ProductSubset sharp_event(const TrialModel& model, const SharpSample& sample,
                          const ProductFramePtr& product) {
    require_arity(model, sample.outcomes.size());
    return ProductSubset::singleton_tuple(product, sample.outcomes);
}

}  // namespace

bool TrialModel::all_binary() const {
    return std::all_of(trials.begin(), trials.end(),
                       [](const MassFunction& m) { return m.domain()->size() == 2; });
}

bool TrialModel::equidistributed() const {
    return std::all_of(trials.begin(), trials.end(),
                       [&](const MassFunction& m) { return m == trials.front(); });
}

ProductFramePtr TrialModel::product(std::size_t cap) const {
    std::vector<FramePtr> factors;
    factors.reserve(trials.size());
    for (const auto& m : trials) {
        factors.push_back(m.domain());
    }
    return ProductFrame::make(std::move(factors), cap);
}

SharpSample SharpSample::parse(std::string_view text) {
    SharpSample out;
    std::string token;
    std::istringstream in{std::string(text)};
    while (std::getline(in, token, ',')) {
        // trim surrounding whitespace
        const auto first = token.find_first_not_of(" \t");
        const auto last = token.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw std::invalid_argument("empty outcome in sample");
        }
        out.outcomes.push_back(token.substr(first, last - first + 1));
    }
    if (out.outcomes.empty()) {
        throw std::invalid_argument("empty sample");
    }
    return out;
}

SharpSample SharpSample::constant(std::string label, std::size_t n) {
    SharpSample out;
    out.outcomes.assign(n, std::move(label));
    return out;
}

double belief_likelihood_bruteforce(const TrialModel& model, const ProductSubset& event,
                                    std::size_t cap) {
    require_nonempty(model);
    auto combined = combine_many(model.trials, model.rule, cap);
    return combined.belief(event);
}

LikelihoodPair likelihood_bruteforce_sharp(const TrialModel& model, const SharpSample& sample,
                                           std::size_t cap) {
    require_nonempty(model);
    auto combined = combine_many(model.trials, model.rule, cap);
    auto event = sharp_event(model, sample, combined.domain());
    return {combined.belief(event), combined.plausibility(event)};
}

double lower_likelihood_sharp(const TrialModel& model, const SharpSample& sample) {
    require_nonempty(model);
    require_conjunctive(model);
    auto singletons = sample_singletons(model, sample);
    double prod = 1.0;
    for (std::size_t i = 0; i < model.size(); ++i) {
        prod *= model.trials[i].belief(singletons[i]);
    }
    return prod;
}

UpperLikelihood upper_likelihood_sharp(const TrialModel& model, const SharpSample& sample) {
    require_nonempty(model);
    require_conjunctive(model);
    require_binary(model);
    auto singletons = sample_singletons(model, sample);
    double prod = 1.0;
    for (std::size_t i = 0; i < model.size(); ++i) {
        prod *= model.trials[i].plausibility(singletons[i]);
    }
    const bool all_bayesian = std::all_of(model.trials.begin(), model.trials.end(),
                                          [](const MassFunction& m) { return m.is_bayesian(); });
    const bool constant_sample =
        std::all_of(sample.outcomes.begin(), sample.outcomes.end(),
                    [&](const std::string& s) { return s == sample.outcomes.front(); });
    const bool proven = all_bayesian || (model.equidistributed() && constant_sample);
    return {prod, !proven};
}

double belief_likelihood_box(const TrialModel& model, std::span<const SubsetMask> box) {
    require_nonempty(model);
    require_conjunctive(model);
    require_binary(model);
    require_arity(model, box.size());
    double prod = 1.0;
    for (std::size_t i = 0; i < model.size(); ++i) {
        require_same_frame(*box[i].frame(), *model.trials[i].domain());
        if (box[i].none()) {
            throw std::invalid_argument("box component must be nonempty");
        }
        prod *= model.trials[i].belief(SubsetMask(model.trials[i].domain(), box[i].bits()));
    }
    return prod;
}

LikelihoodPair disjunctive_complement_likelihood(const TrialModel& model,
                                                 const SharpSample& sample) {
    require_nonempty(model);
    if (model.rule != CombinationRule::disjunctive) {
        throw std::invalid_argument("complement likelihood applies to disjunctive combination");
    }
    require_binary(model);
    auto singletons = sample_singletons(model, sample);
    double prod = 1.0;
    for (std::size_t i = 0; i < model.size(); ++i) {
        prod *= model.trials[i].belief(singletons[i].complement());
    }
    return {prod, 1.0};
}

FocalStructureReport enumerate_focal_structure(const TrialModel& model, std::size_t cap) {
    require_nonempty(model);
    FocalStructureReport report;
    report.rule = model.rule;
    report.trial_count = model.size();

    auto combined = combine_many(model.trials, model.rule, cap);
    const auto& product = combined.domain();
    report.focal_count = combined.focal_count();

    if (model.rule != CombinationRule::disjunctive) {
        // Predicted: every product of per-trial focal elements, with the
        // product of their masses.
        std::size_t predicted = 1;
        for (const auto& m : model.trials) {
            predicted *= m.focal_count();
        }
        report.predicted_count = predicted;

        bool all_boxes = true;
        double max_dev = 0.0;
        for (const auto& [set, mass] : combined.focal()) {
            std::vector<SubsetMask> components;
            components.reserve(product->arity());
            double predicted_mass = 1.0;
            for (std::size_t i = 0; i < product->arity(); ++i) {
                auto proj = project(set, i);
                predicted_mass *= model.trials[i].mass(proj);
                components.push_back(std::move(proj));
            }
            if (BoxSubset(product, components).to_subset() != set) {
                all_boxes = false;
                continue;
            }
            max_dev = std::max(max_dev, std::abs(mass - predicted_mass));
        }
        report.all_boxes = all_boxes;
        report.max_mass_deviation = max_dev;
        return report;
    }

    // Disjunctive: on binary frames the focal elements are tuple complements
    // plus (possibly) the full product.
    if (!model.all_binary()) {
        report.predicted_count = std::nullopt;
        return report;
    }
    double complement_mass_total = 0.0;
    std::size_t positive_complements = 0;
    for (std::size_t idx = 0; idx < product->size(); ++idx) {
        double predicted_mass = 1.0;
        for (std::size_t i = 0; i < product->arity(); ++i) {
            const auto& trial = model.trials[i];
            auto singleton =
                SubsetMask(trial.domain(), 1u << product->component_index(idx, i));
            predicted_mass *= trial.belief(singleton.complement());
        }
        complement_mass_total += predicted_mass;
        if (predicted_mass > 0.0) {
            ++positive_complements;
        }
    }
    const double full_mass = 1.0 - complement_mass_total;
    report.predicted_count = positive_complements + (full_mass > kMassDust ? 1 : 0);

    bool shape_ok = true;
    double max_dev = 0.0;
    for (const auto& [set, mass] : combined.focal()) {
        if (set.count() == product->size()) {
            max_dev = std::max(max_dev, std::abs(mass - full_mass));
            continue;
        }
        if (set.count() != product->size() - 1) {
            shape_ok = false;
            continue;
        }
        // Complement of the single missing tuple.
        const std::size_t missing = set.complement().indices().front();
        double predicted_mass = 1.0;
        for (std::size_t i = 0; i < product->arity(); ++i) {
            const auto& trial = model.trials[i];
            auto singleton =
                SubsetMask(trial.domain(), 1u << product->component_index(missing, i));
            predicted_mass *= trial.belief(singleton.complement());
        }
        max_dev = std::max(max_dev, std::abs(mass - predicted_mass));
    }
    report.all_tuple_complements_or_full = shape_ok;
    report.max_mass_deviation = max_dev;
    return report;
}

namespace {

MassFunction random_binary_mass(const FramePtr& frame, std::mt19937_64& gen) {
    const auto m = rng::simplex3(gen, 0.05);
    return make_mass(frame, {{SubsetMask::singleton(frame, frame->label(0)), m[0]},
                             {SubsetMask::singleton(frame, frame->label(1)), m[1]},
                             {SubsetMask::full(frame), m[2]}});
}

std::array<double, 3> mass_triple(const MassFunction& m) {
    const auto& frame = m.domain();
    return {m.mass(SubsetMask::singleton(frame, frame->label(0))),
            m.mass(SubsetMask::singleton(frame, frame->label(1))),
            m.mass(SubsetMask::full(frame))};
}

void record(ClaimCheck& claim, double discrepancy) {
    claim.max_discrepancy = std::max(claim.max_discrepancy, discrepancy);
    ++claim.checks;
}

}  // namespace

bool FactorizationReport::proven_claims_ok() const {
    return std::all_of(claims.begin(), claims.end(), [&](const ClaimCheck& c) {
        return !c.proven || c.max_discrepancy <= tolerance;
    });
}

FactorizationReport verify_factorization(std::size_t n, std::size_t trials, std::uint64_t seed,
                                         std::size_t cap, double tolerance) {
    if (n == 0) {
        throw std::invalid_argument("need at least one trial");
    }
    FactorizationReport report;
    report.n = n;
    report.trials = trials;
    report.seed = seed;
    report.tolerance = tolerance;

    ClaimCheck sharp_lower{"sharp_lower_conjunctive", true, 0.0, 0};
    ClaimCheck sharp_upper{"sharp_upper_conjunctive", false, 0.0, 0};
    ClaimCheck box_lower{"box_lower_conjunctive", true, 0.0, 0};
    ClaimCheck disj_lower{"complement_lower_disjunctive", true, 0.0, 0};
    ClaimCheck disj_pl{"complement_plausibility_disjunctive", true, 0.0, 0};
    ClaimCheck equi_upper{"upper_equidistributed_constant_sample", true, 0.0, 0};

    auto frame = Frame::make({"T", "F"});
    std::mt19937_64 gen(seed);

    for (std::size_t t = 0; t < trials; ++t) {
        TrialModel model;
        model.rule = CombinationRule::conjunctive;
        for (std::size_t i = 0; i < n; ++i) {
            model.trials.push_back(random_binary_mass(frame, gen));
        }
        auto combined = combine_many(model.trials, model.rule, cap);
        const auto& product = combined.domain();

        TrialModel disjunctive{model.trials, CombinationRule::disjunctive};
        auto combined_disj = combine_many(disjunctive.trials, disjunctive.rule, cap);

        for (std::size_t idx = 0; idx < product->size(); ++idx) {
            SharpSample sample{product->index_tuple(idx)};
            auto event = ProductSubset::singleton_index(product, idx);

            record(sharp_lower,
                   std::abs(lower_likelihood_sharp(model, sample) - combined.belief(event)));

            const double oracle_pl = combined.plausibility(event);
            const auto upper = upper_likelihood_sharp(model, sample);
            const double gap = std::abs(upper.value - oracle_pl);
            record(sharp_upper, gap);
            if (gap > tolerance && !report.conjecture_counterexample) {
                ConjectureCounterexample ce;
                for (const auto& m : model.trials) {
                    ce.trial_masses.push_back(mass_triple(m));
                }
                ce.sample = sample.outcomes;
                ce.factorized = upper.value;
                ce.bruteforce = oracle_pl;
                report.conjecture_counterexample = std::move(ce);
            }

            record(disj_lower,
                   std::abs(disjunctive_complement_likelihood(disjunctive, sample).lower -
                            combined_disj.belief(event.complement())));
            record(disj_pl, std::abs(combined_disj.plausibility(event.complement()) - 1.0));
        }

        // All boxes: one component per trial in {{T}, {F}, {T,F}}.
        std::vector<std::size_t> choice(n, 0);
        while (true) {
            std::vector<SubsetMask> box;
            box.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                box.push_back(SubsetMask(frame, choice[i] == 0 ? 0b01u
                                                : choice[i] == 1 ? 0b10u
                                                                 : 0b11u));
            }
            record(box_lower, std::abs(belief_likelihood_box(model, box) -
                                       combined.belief(BoxSubset(product, box).to_subset())));
            std::size_t i = n;
            bool done = true;
            while (i-- > 0) {
                if (++choice[i] < 3) {
                    done = false;
                    break;
                }
                choice[i] = 0;
            }
            if (done) {
                break;
            }
        }

        // Equidistributed sub-case: one shared mass, constant sample.
        TrialModel equi;
        equi.rule = CombinationRule::conjunctive;
        auto shared = random_binary_mass(frame, gen);
        for (std::size_t i = 0; i < n; ++i) {
            equi.trials.push_back(shared);
        }
        auto sample = SharpSample::constant(frame->label(0), n);
        const auto upper = upper_likelihood_sharp(equi, sample);
        if (upper.conjecture_based) {
            throw std::logic_error("equidistributed constant sample must be the proven case");
        }
        auto equi_combined = combine_many(equi.trials, equi.rule, cap);
        const double oracle =
            equi_combined.plausibility(sharp_event(equi, sample, equi_combined.domain()));
        record(equi_upper, std::abs(upper.value - oracle));
    }

    report.claims = {sharp_lower, sharp_upper, box_lower, disj_lower, disj_pl, equi_upper};
    return report;
}

}  // namespace bellik
