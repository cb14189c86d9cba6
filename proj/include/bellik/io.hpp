#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bellik/bernoulli.hpp"
#include "bellik/combination.hpp"
#include "bellik/likelihood.hpp"
#include "bellik/logistic.hpp"

namespace bellik {

/// 17 significant digits: enough to reproduce any double exactly.
std::string format_double(double value);

struct SizeCaps {
    std::size_t frame_cap = kDefaultFrameCap;
    std::size_t product_cap = kDefaultProductCap;
};

nlohmann::json frame_to_json(const Frame& frame);
FramePtr frame_from_json(const nlohmann::json& j, std::size_t cap = kDefaultFrameCap);

/// Mass functions serialize focal sets as label arrays in frame order, never
/// as raw bitmasks; product-frame sets are arrays of label tuples.
nlohmann::json mass_to_json(const MassFunction& mass);
nlohmann::json mass_to_json(const ProductMassFunction& mass);
nlohmann::json mass_to_json(const UnnormalizedMass& mass);
nlohmann::json mass_to_json(const ProductUnnormalizedMass& mass);

MassFunction mass_from_json(const nlohmann::json& j, const SizeCaps& caps = {});
ProductMassFunction product_mass_from_json(const nlohmann::json& j, const SizeCaps& caps = {});

nlohmann::json fit_result_to_json(const FitResult& result);
FitResult fit_result_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const FactorizationReport& report);
nlohmann::json structure_to_json(const FocalStructureReport& report);

/// CSV with header `x,y`; y is 0, 1 or NA.
Dataset dataset_from_csv(std::istream& in);
void dataset_to_csv(std::ostream& out, const Dataset& data);

/// CSV with header `p,q,lower,upper`, followed by argmax summary comments.
void surface_to_csv(std::ostream& out, const BernoulliSurface& surface);

}  // namespace bellik
