#include "multipoly/json_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>

namespace multipoly {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* name, const char* ctx) {
  auto it = j.find(name);
  if (it == j.end()) throw Error(std::string("missing field '") + name + "' in " + ctx);
  return *it;
}

double require_number(const json& j, const char* name, const char* ctx) {
  const json& v = require_field(j, name, ctx);
  if (!v.is_number()) throw Error(std::string("field '") + name + "' in " + ctx + " must be a number");
  return v.get<double>();
}

std::uint32_t require_nat(const json& j, const char* name, const char* ctx) {
  const json& v = require_field(j, name, ctx);
  if (!v.is_number_unsigned())
    throw Error(std::string("field '") + name + "' in " + ctx + " must be a nonnegative integer");
  return v.get<std::uint32_t>();
}

std::vector<std::uint32_t> require_nat_array(const json& j, const char* name, const char* ctx) {
  const json& v = require_field(j, name, ctx);
  if (!v.is_array()) throw Error(std::string("field '") + name + "' in " + ctx + " must be an array");
  std::vector<std::uint32_t> out;
  for (const auto& e : v) {
    if (!e.is_number_unsigned())
      throw Error(std::string("field '") + name + "' in " + ctx +
                  " must hold nonnegative integers");
    out.push_back(e.get<std::uint32_t>());
  }
  return out;
}

json scalar_to_json(Scalar v) {
  if (v.imag() == 0.0) return v.real();
  return json::array({v.real(), v.imag()});
}

Scalar scalar_from_json(const json& v, const char* ctx) {
  if (v.is_number()) return Scalar(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Scalar(v[0].get<double>(), v[1].get<double>());
  throw Error(std::string("entry in ") + ctx + " must be a number or [re, im]");
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json poly_to_json(const MultiPolynomial& p) {
  json terms = json::array();
  for (const auto& [key, coeff] : p.terms()) {
    json alphas = json::array();
    for (const auto& alpha : key.alphas) {
      json block = json::array();
      for (const auto& [coord, expo] : alpha.entries()) block.push_back({{"i", coord}, {"e", expo}});
      alphas.push_back(std::move(block));
    }
    terms.push_back(
        {{"alphas", std::move(alphas)}, {"re", coeff.real()}, {"im", coeff.imag()}});
  }
  return {{"field", p.field() == Field::real ? "real" : "complex"},
          {"multidegree", p.multidegree().degrees},
          {"dims", p.dims()},
          {"terms", std::move(terms)}};
}

MultiPolynomial poly_from_json(const json& j) {
  if (!j.is_object()) throw Error("polynomial must be a JSON object");
  const json& f = require_field(j, "field", "polynomial");
  Field field;
  if (f == "real")
    field = Field::real;
  else if (f == "complex")
    field = Field::complex;
  else
    throw Error("field 'field' in polynomial must be \"real\" or \"complex\"");

  MultiDegree md;
  md.degrees = require_nat_array(j, "multidegree", "polynomial");
  const auto dims = require_nat_array(j, "dims", "polynomial");

  const json& terms = require_field(j, "terms", "polynomial");
  if (!terms.is_array()) throw Error("field 'terms' in polynomial must be an array");
  std::vector<MultiPolynomial::Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    const json& alphas = require_field(t, "alphas", "term");
    if (!alphas.is_array()) throw Error("field 'alphas' in term must be an array");
    CoefficientKey key;
    for (const auto& block : alphas) {
      if (!block.is_array()) throw Error("field 'alphas' in term must hold arrays of entries");
      std::vector<MultiIndex::Entry> entries;
      for (const auto& e : block)
        entries.push_back({require_nat(e, "i", "exponent entry"), require_nat(e, "e", "exponent entry")});
      key.alphas.push_back(MultiIndex::from_entries(std::move(entries)));
    }
    const double re = require_number(t, "re", "term");
    const double im = t.contains("im") ? require_number(t, "im", "term") : 0.0;
    out.push_back({std::move(key), Scalar(re, im)});
  }
  return MultiPolynomial::create(field, std::move(md), dims, std::move(out));
}

json form_to_json(const SymmetricForm& a) {
  json entries = json::array();
  for (const auto& e : a.entries())
    entries.push_back({{"key", e.key}, {"re", e.value.real()}, {"im", e.value.imag()}});
  return {{"field", a.field() == Field::real ? "real" : "complex"},
          {"arity", a.arity()},
          {"dim", a.dim()},
          {"entries", std::move(entries)}};
}

SymmetricForm form_from_json(const json& j) {
  if (!j.is_object()) throw Error("form must be a JSON object");
  Field field = Field::real;
  if (j.contains("field")) {
    if (j["field"] == "complex")
      field = Field::complex;
    else if (j["field"] != "real")
      throw Error("field 'field' in form must be \"real\" or \"complex\"");
  }
  const std::uint32_t arity = require_nat(j, "arity", "form");
  const std::uint32_t dim = require_nat(j, "dim", "form");
  const json& entries = require_field(j, "entries", "form");
  if (!entries.is_array()) throw Error("field 'entries' in form must be an array");
  std::vector<SymmetricForm::Entry> out;
  for (const auto& e : entries) {
    SymmetricForm::Entry entry;
    entry.key = require_nat_array(e, "key", "form entry");
    const double re = require_number(e, "re", "form entry");
    const double im = e.contains("im") ? require_number(e, "im", "form entry") : 0.0;
    entry.value = Scalar(re, im);
    out.push_back(std::move(entry));
  }
  return SymmetricForm::create(field, arity, dim, std::move(out));
}

json map_to_json(const LinearMap& m) {
  json rows = json::array();
  for (std::uint32_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::uint32_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

LinearMap map_from_json(const json& j) {
  if (!j.is_object()) throw Error("linear map must be a JSON object");
  const std::uint32_t rows = require_nat(j, "rows", "linear map");
  const std::uint32_t cols = require_nat(j, "cols", "linear map");
  const json& entries = require_field(j, "entries", "linear map");
  if (!entries.is_array() || entries.size() != rows)
    throw Error("field 'entries' in linear map must be an array of 'rows' rows");
  std::vector<Scalar> flat;
  flat.reserve(std::size_t(rows) * cols);
  for (const auto& row : entries) {
    if (!row.is_array() || row.size() != cols)
      throw Error("field 'entries' in linear map must hold rows of 'cols' entries");
    for (const auto& e : row) flat.push_back(scalar_from_json(e, "linear map entries"));
  }
  return LinearMap::create(rows, cols, std::move(flat));
}

json estimate_to_json(const NormEstimate& est) {
  json witness = json::array();
  for (const auto& block : est.witness) {
    json b = json::array();
    for (const auto& v : block) b.push_back(scalar_to_json(v));
    witness.push_back(std::move(b));
  }
  return {{"lower", est.lower},
          {"upper", est.upper},
          {"method", norm_method_name(est.method)},
          {"witness", std::move(witness)}};
}

json report_to_json(const InequalityReport& rep) {
  return {{"lhs_lower", rep.lhs_lower},
          {"lhs_upper", rep.lhs_upper},
          {"rhs", rep.rhs},
          {"pass", rep.pass}};
}

json summing_to_json(const SummingReport& rep) {
  json out = {{"lhs", rep.lhs},
              {"rhs", rep.rhs},
              {"mode", rep.mode == SummingMode::abs ? "abs" : "full"},
              {"infinite", rep.infinite}};
  out["ratio"] = rep.infinite ? json() : json(rep.ratio);
  return out;
}

std::string scan_csv(const RatioScanResult& res) {
  std::string n_label;
  for (std::size_t i = 0; i < res.n.degrees.size(); ++i) {
    if (i) n_label += '|';
    n_label += std::to_string(res.n.degrees[i]);
  }
  std::string out = "n,p,r,seed,norm_lower,norm_upper,lp_norm,ratio_lower,ratio_upper\n";
  char buf[256];
  for (const auto& c : res.cells) {
    std::snprintf(buf, sizeof buf, "%s,%s,%" PRIu32 ",%" PRIu64 ",%s,%s,%s,%s,%s\n",
                  n_label.c_str(), fmt17(res.p).c_str(), c.r, c.seed,
                  fmt17(c.norm_lower).c_str(), fmt17(c.norm_upper).c_str(),
                  fmt17(c.lp_norm).c_str(), fmt17(c.ratio_lower).c_str(),
                  fmt17(c.ratio_upper).c_str());
    out += buf;
  }
  return out;
}

json scan_summary(const RatioScanResult& res) {
  return {{"fitted_slope", res.fitted_slope},
          {"fitted_K", res.fitted_K},
          {"expected_slope", res.expected_slope}};
}

}  // namespace multipoly
