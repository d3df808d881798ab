#pragma once

#include <map>
#include <string>
#include <vector>

#include "kkmforge/convex.hpp"
#include "kkmforge/covers.hpp"
#include "kkmforge/io.hpp"
#include "kkmforge/line_bundle.hpp"
#include "kkmforge/pl_sections.hpp"

namespace kkmforge {

Json to_json(const CheckReport& report);
Json to_json(const SimplicialComplex& complex, const CupVanishingReport& report);
Json to_json(const SimplicialComplex& complex, const EulerClassReport& report);
Json to_json(const Centerpoint& result);
Json to_json(const CentralPointReport& report);
Json to_json(const HellyResult& result);
Json to_json(const BaranyResult& result);
Json to_json(const TverbergWitness& witness);
Json to_json(const TverbergReport& report);
Json to_json(const TwoArcDemo& demo);

// Certificate re-validation for emitted reports. Each returns an empty string
// when the report checks out and a reason otherwise. Nothing is re-searched:
// certificates are substituted into the input data.

std::string verify_check_report(const GridCover& cover, const Json& report);
std::string verify_cupvanish_report(const SimplicialComplex& complex,
                                    const std::map<std::string, SimplicialComplex>& sets,
                                    const std::vector<Gf2Cochain>& classes, const Json& report);
std::string verify_centerpoint_report(const std::vector<RationalVector>& points, const Json& report);
std::string verify_helly_report(const std::vector<std::vector<ConvexSet>>& classes, std::size_t dim,
                                const Json& report);
std::string verify_barany_report(const std::vector<RationalVector>& k_points,
                                 const std::vector<std::vector<RationalVector>>& classes, std::size_t dim,
                                 const Json& report);
std::string verify_tverberg_report(const TverbergInstance& instance, const Json& report);
std::string verify_cohomology_report(const SimplicialComplex& complex, const Json& report);

TverbergWitness witness_from_json(const Json& value);

}  // namespace kkmforge
