#include "bellik/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bellik {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

json frame_to_json(const Frame& frame) {
    return json{{"labels", frame.labels()}};
}

FramePtr frame_from_json(const json& j, std::size_t cap) {
    if (!j.is_object() || !j.contains("labels") || !j.at("labels").is_array()) {
        throw std::invalid_argument("frame descriptor needs a \"labels\" array");
    }
    return Frame::make(j.at("labels").get<std::vector<std::string>>(), cap);
}

namespace {

json product_to_json(const ProductFrame& product) {
    json factors = json::array();
    for (const auto& f : product.factors()) {
        factors.push_back(frame_to_json(*f));
    }
    return json{{"factors", std::move(factors)}};
}

ProductFramePtr product_from_json(const json& j, const SizeCaps& caps) {
    if (!j.is_object() || !j.contains("factors") || !j.at("factors").is_array()) {
        throw std::invalid_argument("product frame descriptor needs a \"factors\" array");
    }
    std::vector<FramePtr> factors;
    for (const auto& f : j.at("factors")) {
        factors.push_back(frame_from_json(f, caps.frame_cap));
    }
    return ProductFrame::make(std::move(factors), caps.product_cap);
}

json set_to_json(const SubsetMask& set) {
    return json(set.sorted_labels());
}

json set_to_json(const ProductSubset& set) {
    json tuples = json::array();
    for (std::size_t idx : set.indices()) {
        tuples.push_back(set.product()->index_tuple(idx));
    }
    return tuples;
}

SubsetMask set_from_json(const json& j, const FramePtr& frame) {
    if (!j.is_array()) {
        throw std::invalid_argument("focal set must be an array of labels");
    }
    return SubsetMask::of(frame, j.get<std::vector<std::string>>());
}

ProductSubset set_from_json(const json& j, const ProductFramePtr& product) {
    if (!j.is_array()) {
        throw std::invalid_argument("focal set must be an array of label tuples");
    }
    Bitset bits(product->size());
    for (const auto& tuple : j) {
        const auto labels = tuple.get<std::vector<std::string>>();
        bits.set(product->tuple_index(labels));
    }
    return ProductSubset(product, std::move(bits));
}

template <class Mass>
json focal_to_json(const Mass& mass) {
    json focal = json::array();
    for (const auto& [set, m] : mass.focal()) {
        focal.push_back(json{{"set", set_to_json(set)}, {"mass", m}});
    }
    return focal;
}

template <class Mass, class DomainPtr>
Mass mass_from_json_impl(const json& j, DomainPtr domain) {
    if (!j.contains("focal") || !j.at("focal").is_array()) {
        throw std::invalid_argument("mass function needs a \"focal\" array");
    }
    std::vector<std::pair<typename Mass::set_type, double>> assignments;
    for (const auto& entry : j.at("focal")) {
        if (!entry.contains("set") || !entry.contains("mass") ||
            !entry.at("mass").is_number()) {
            throw std::invalid_argument("each focal entry needs \"set\" and numeric \"mass\"");
        }
        assignments.emplace_back(set_from_json(entry.at("set"), domain),
                                 entry.at("mass").get<double>());
    }
    return Mass::make(std::move(domain), std::move(assignments));
}

}  // namespace

json mass_to_json(const MassFunction& mass) {
    return json{{"frame", frame_to_json(*mass.domain())}, {"focal", focal_to_json(mass)}};
}

json mass_to_json(const ProductMassFunction& mass) {
    return json{{"frame", product_to_json(*mass.domain())}, {"focal", focal_to_json(mass)}};
}

json mass_to_json(const UnnormalizedMass& mass) {
    return json{{"frame", frame_to_json(*mass.domain())},
                {"conflict", mass.conflict()},
                {"focal", focal_to_json(mass)}};
}

json mass_to_json(const ProductUnnormalizedMass& mass) {
    return json{{"frame", product_to_json(*mass.domain())},
                {"conflict", mass.conflict()},
                {"focal", focal_to_json(mass)}};
}

MassFunction mass_from_json(const json& j, const SizeCaps& caps) {
    if (!j.is_object() || !j.contains("frame")) {
        throw std::invalid_argument("mass function needs a \"frame\" descriptor");
    }
    return mass_from_json_impl<MassFunction>(j, frame_from_json(j.at("frame"), caps.frame_cap));
}

ProductMassFunction product_mass_from_json(const json& j, const SizeCaps& caps) {
    if (!j.is_object() || !j.contains("frame")) {
        throw std::invalid_argument("mass function needs a \"frame\" descriptor");
    }
    return mass_from_json_impl<ProductMassFunction>(j, product_from_json(j.at("frame"), caps));
}

json fit_result_to_json(const FitResult& result) {
    json kkt{{"stationarity_residual", result.kkt.stationarity_residual},
             {"gradient_norm", result.kkt.gradient_norm},
             {"mu_beta2_upper", result.kkt.mu_beta2_upper},
             {"mu_beta2_lower", result.kkt.mu_beta2_lower},
             {"mu_beta0", result.kkt.mu_beta0},
             {"mu_beta1", result.kkt.mu_beta1},
             {"beta2_upper_gap", result.kkt.beta2_upper_gap},
             {"data_constraint_max", result.kkt.data_constraint_max},
             {"max_slack", result.kkt.max_slack},
             {"active", result.kkt.active}};
    return json{{"which", to_string(result.which)},
                {"beta", {result.params.beta0, result.params.beta1, result.params.beta2}},
                {"objective", result.objective},
                {"kkt", std::move(kkt)},
                {"active_constraints", result.active_constraints},
                {"converged", result.converged},
                {"boundary_hit", result.boundary_hit},
                {"iterations", result.iterations},
                {"best_start", result.best_start},
                {"excluded_missing", result.excluded_missing}};
}

FitResult fit_result_from_json(const json& j) {
    FitResult result;
    const auto beta = j.at("beta").get<std::vector<double>>();
    if (beta.size() != 3) {
        throw std::invalid_argument("model \"beta\" must have three entries");
    }
    result.params = {beta[0], beta[1], beta[2]};
    result.which = kind_from_string(j.at("which").get<std::string>());
    result.objective = j.value("objective", 0.0);
    result.converged = j.at("converged").get<bool>();
    result.boundary_hit = j.at("boundary_hit").get<bool>();
    result.iterations = j.value("iterations", std::size_t{0});
    result.best_start = j.value("best_start", std::size_t{0});
    result.excluded_missing = j.value("excluded_missing", std::size_t{0});
    if (j.contains("kkt")) {
        const auto& kkt = j.at("kkt");
        result.kkt.stationarity_residual = kkt.value("stationarity_residual", 0.0);
        result.kkt.gradient_norm = kkt.value("gradient_norm", 0.0);
        result.kkt.mu_beta2_upper = kkt.value("mu_beta2_upper", 0.0);
        result.kkt.mu_beta2_lower = kkt.value("mu_beta2_lower", 0.0);
        result.kkt.mu_beta0 = kkt.value("mu_beta0", 0.0);
        result.kkt.mu_beta1 = kkt.value("mu_beta1", 0.0);
        result.kkt.beta2_upper_gap = kkt.value("beta2_upper_gap", 0.0);
        result.kkt.data_constraint_max = kkt.value("data_constraint_max", 0.0);
        result.kkt.max_slack = kkt.value("max_slack", 0.0);
        result.kkt.active = kkt.value("active", std::vector<std::string>{});
    }
    result.active_constraints = j.value("active_constraints", std::vector<std::string>{});
    return result;
}

json report_to_json(const FactorizationReport& report) {
    json claims = json::array();
    for (const auto& claim : report.claims) {
        claims.push_back(json{{"claim", claim.claim},
                              {"proven", claim.proven},
                              {"max_discrepancy", claim.max_discrepancy},
                              {"checks", claim.checks}});
    }
    json counterexample;
    if (report.conjecture_counterexample) {
        const auto& ce = *report.conjecture_counterexample;
        counterexample = json{{"trial_masses", ce.trial_masses},
                              {"sample", ce.sample},
                              {"factorized", ce.factorized},
                              {"bruteforce", ce.bruteforce}};
    }
    return json{{"n", report.n},
                {"trials", report.trials},
                {"seed", report.seed},
                {"tolerance", report.tolerance},
                {"claims", std::move(claims)},
                {"conjecture_counterexample", std::move(counterexample)},
                {"proven_claims_ok", report.proven_claims_ok()}};
}

json structure_to_json(const FocalStructureReport& report) {
    json j{{"rule", to_string(report.rule)},
           {"trial_count", report.trial_count},
           {"focal_count", report.focal_count},
           {"all_boxes", report.all_boxes},
           {"all_tuple_complements_or_full", report.all_tuple_complements_or_full},
           {"max_mass_deviation", report.max_mass_deviation}};
    if (report.predicted_count) {
        j["predicted_count"] = *report.predicted_count;
    } else {
        j["predicted_count"] = nullptr;
    }
    return j;
}

namespace {

std::string strip(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

Dataset dataset_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip(line) != "x,y") {
        throw std::invalid_argument("dataset CSV must start with header \"x,y\"");
    }
    std::vector<DataRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = strip(line);
        if (trimmed.empty()) {
            continue;
        }
        const auto comma = trimmed.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected \"x,y\"");
        }
        DataRow row;
        try {
            const std::string xs = strip(trimmed.substr(0, comma));
            std::size_t used = 0;
            row.x = std::stod(xs, &used);
            if (used != xs.size()) {
                throw std::invalid_argument("trailing junk");
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": bad covariate value");
        }
        const std::string y = strip(trimmed.substr(comma + 1));
        if (y == "NA") {
            row.y = std::nullopt;
        } else if (y == "0") {
            row.y = 0;
        } else if (y == "1") {
            row.y = 1;
        } else {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": outcome must be 0, 1 or NA");
        }
        rows.push_back(row);
    }
    return Dataset(std::move(rows));
}

void dataset_to_csv(std::ostream& out, const Dataset& data) {
    out << "x,y\n";
    for (const auto& row : data.rows()) {
        out << format_double(row.x) << ',' << (row.y ? std::to_string(*row.y) : "NA") << '\n';
    }
}

void surface_to_csv(std::ostream& out, const BernoulliSurface& surface) {
    out << "p,q,lower,upper\n";
    for (const auto& point : surface.points) {
        out << format_double(point.p) << ',' << format_double(point.q) << ','
            << format_double(point.lower) << ',' << format_double(point.upper) << '\n';
    }
    out << "# argmax_lower p=" << format_double(surface.lower_argmax.p)
        << " q=" << format_double(surface.lower_argmax.q)
        << " value=" << format_double(surface.lower_argmax.lower) << '\n';
    out << "# argmax_upper p=" << format_double(surface.upper_argmax.p)
        << " q=" << format_double(surface.upper_argmax.q)
        << " value=" << format_double(surface.upper_argmax.upper) << '\n';
}

}  // namespace bellik
