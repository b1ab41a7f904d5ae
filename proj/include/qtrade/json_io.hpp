#pragma once

#include <string>

#include <json.hpp>

#include "qtrade/search.hpp"
#include "qtrade/spectra.hpp"
#include "qtrade/trades.hpp"

namespace qtrade {

using Json = nlohmann::json;

// Big integers are serialized as decimal strings: several quantities here
// (cardinalities, eigenvalues, q-binomials) overflow doubles and JSON
// numbers are not reliable carriers for them.
std::string big_to_string(const BigInt& x);

Json subspace_to_json(const CanonicalSubspace& s);
CanonicalSubspace subspace_from_json(const Json& j, const FieldPtr& field);

// Compact single-line form "101;010" (rows joined by ';', entries as hex
// digits) used by CSV output and violation certificates.
std::string subspace_compact(const CanonicalSubspace& s);

Json bitrade_to_json(const Bitrade& b);
Bitrade bitrade_from_json(const Json& j, unsigned max_field_order = FieldSpec::kDefaultMaxOrder);

Json report_to_json(const VerifyReport& r);
std::string report_to_text(const VerifyReport& r);

Json wdist_to_json(const WeightDistribution& wd, const CanonicalSubspace& zprime,
                   const TradeParams& params);

Json intersection_to_json(const IntersectionNumbers& nums, const CanonicalSubspace& x,
                          unsigned q, int v, int k);

Json verdict_to_json(const SearchVerdict& verdict, const TradeParams& params,
                     const BigInt& bound);

}  // namespace qtrade
