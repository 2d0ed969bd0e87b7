#pragma once

#include <string>

#include "json.hpp"
#include "multipoly/bohnenblust_hille.hpp"
#include "multipoly/compose.hpp"
#include "multipoly/norms.hpp"
#include "multipoly/polarization.hpp"
#include "multipoly/polynomial.hpp"

namespace multipoly {

// Polynomials round-trip bit-exactly: terms are emitted in stored (lex key)
// order and doubles serialize with shortest round-trip digits. Readers
// throw Error with the offending field named in the message.
nlohmann::json poly_to_json(const MultiPolynomial& p);
MultiPolynomial poly_from_json(const nlohmann::json& j);

nlohmann::json form_to_json(const SymmetricForm& a);
SymmetricForm form_from_json(const nlohmann::json& j);

// entries is a nested array of rows; each entry is a number or [re, im]
nlohmann::json map_to_json(const LinearMap& m);
LinearMap map_from_json(const nlohmann::json& j);

nlohmann::json estimate_to_json(const NormEstimate& est);
nlohmann::json report_to_json(const InequalityReport& rep);
nlohmann::json summing_to_json(const SummingReport& rep);

// one line per (r, seed) cell; header
// n,p,r,seed,norm_lower,norm_upper,lp_norm,ratio_lower,ratio_upper
// comma separated, LF line ends, '.' decimal point, 17 significant digits,
// multidegree rendered as degrees joined by '|'
std::string scan_csv(const RatioScanResult& res);
nlohmann::json scan_summary(const RatioScanResult& res);

}  // namespace multipoly
