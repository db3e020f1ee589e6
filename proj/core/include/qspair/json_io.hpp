#ifndef QSPAIR_JSON_IO_HPP
#define QSPAIR_JSON_IO_HPP

#include <json.hpp>

#include "qspair/charring.hpp"
#include "qspair/qsp.hpp"
#include "qspair/spherical.hpp"

namespace qspair {

// all emitters use ordered maps and sorted containers, so identical inputs
// produce byte-identical output
using Json = nlohmann::ordered_json;

std::string rat_string(const Rat& r);
Json weight_json(const WeightVec& w);                                // simple-root coords
Json weight_fund_json(const RootDatum& rd, const WeightVec& w);      // fundamental coords
Json character_json(const Character& phi);
Json pair_json(const InvolutionDatum& inv);
Json module_json(const ModuleRep& m);
Json relation_outcome_json(const RootDatum& rd, const RelationOutcome& oc);

}  // namespace qspair

#endif
