#pragma once

// JSON encodings:
//   FracPoly  {"denominator": r, "terms": [[k, "coeff"], ...]}   (t^(k/r), k ascending)
//   IntPoly   {"coefficients": ["c0", "c1", ...]}
//   Polytope  {"ambient_rank": d, "vertices": [[x, ...], ...]}  (numbers below 2^53, else strings)
// and the polytope names accepted on the command line.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ehrhart/exactmath.hpp"
#include "ehrhart/gallery.hpp"
#include "ehrhart/polytope.hpp"
#include "ehrhart/theory.hpp"

namespace ehrhart {

using Json = nlohmann::json;

inline Json to_json(const FracPoly& f) {
  Json terms = Json::array();
  for (const auto& [k, c] : f.terms()) terms.push_back(Json::array({k, c.str()}));
  return Json{{"denominator", f.denominator()}, {"terms", std::move(terms)}};
}

inline FracPoly frac_poly_from_json(const Json& j) {
  try {
    FracPoly::Terms terms;
    for (const auto& t : j.at("terms")) {
      const auto k = t.at(0).get<std::int64_t>();
      if (!terms.emplace(k, BigInt(t.at(1).get<std::string>())).second)
        throw Error("repeated exponent in FracPoly JSON");
    }
    return FracPoly(j.at("denominator").get<std::int64_t>(), std::move(terms));
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed FracPoly JSON: ") + e.what());
  }
}

inline Json to_json(const IntPoly& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coefficients()) coeffs.push_back(c.str());
  return Json{{"coefficients", std::move(coeffs)}};
}

inline IntPoly int_poly_from_json(const Json& j) {
  try {
    std::vector<BigInt> coeffs;
    for (const auto& c : j.at("coefficients")) coeffs.emplace_back(c.get<std::string>());
    return IntPoly(std::move(coeffs));
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed IntPoly JSON: ") + e.what());
  }
}

namespace detail {

inline Json integer_to_json(const BigInt& v) {
  static const BigInt kSafe = BigInt(1) << 53;
  if (boost::multiprecision::abs(v) < kSafe) return v.convert_to<std::int64_t>();
  return v.str();
}

inline BigInt integer_from_json(const Json& v) {
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return BigInt(v.get<std::string>());
    } catch (const std::exception&) {
      throw Error("'" + v.get<std::string>() + "' is not a decimal integer");
    }
  }
  throw Error("vertex coordinates must be integers or decimal strings");
}

}  // namespace detail

inline Json to_json(const LatticePolytope& p) {
  Json verts = Json::array();
  for (const auto& v : p.vertices()) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(detail::integer_to_json(x));
    verts.push_back(std::move(row));
  }
  return Json{{"ambient_rank", p.rank()}, {"vertices", std::move(verts)}};
}

inline LatticePolytope polytope_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient_rank") || !j.contains("vertices"))
    throw Error("polytope JSON needs \"ambient_rank\" and \"vertices\"");
  if (!j.at("ambient_rank").is_number_unsigned()) throw Error("ambient_rank must be a positive integer");
  const auto rank = j.at("ambient_rank").get<std::size_t>();
  std::vector<IntVector> pts;
  for (const auto& row : j.at("vertices")) {
    if (!row.is_array()) throw Error("each vertex must be an array");
    IntVector v;
    for (const auto& x : row) v.push_back(detail::integer_from_json(x));
    pts.push_back(std::move(v));
  }
  return LatticePolytope::from_vertices(rank, std::move(pts));
}

inline Json to_json(const CltReport& r, const std::string& label) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"n", e.n}, {"sup_dist", e.sup_dist}, {"moments", {{"mean", e.mean}, {"variance", e.variance}}}});
  return Json{{"polytope", label}, {"sigma_tilde_sq", r.sigma_tilde_sq.str()}, {"entries", std::move(entries)}};
}

namespace detail {

inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw Error("bad integer '" + item + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw Error("bad integer '" + item + "' in list '" + text + "'");
    }
  }
  if (out.empty()) throw Error("empty integer list");
  return out;
}

}  // namespace detail

// paper:<name>, simplex:<d>, payne:<a,b,...>, cyclotomic:<n>, or a JSON file.
inline LatticePolytope load_polytope(const std::string& spec) {
  auto prefixed = [&](const std::string& prefix) { return spec.rfind(prefix, 0) == 0; };
  if (prefixed("paper:")) {
    const std::string name = spec.substr(6);
    auto all = paper_examples();
    auto it = all.find(name);
    if (it == all.end()) throw Error("unknown paper example '" + name + "'");
    return it->second;
  }
  if (prefixed("simplex:")) {
    const auto d = detail::parse_int_list(spec.substr(8));
    if (d.size() != 1 || d[0] < 1 || d[0] > static_cast<std::int64_t>(kMaxAmbientRank))
      throw Error("simplex:<d> needs 1 <= d <= " + std::to_string(kMaxAmbientRank));
    return standard_simplex(static_cast<std::size_t>(d[0]));
  }
  if (prefixed("payne:")) return payne_simplex(PayneWeights(detail::parse_int_list(spec.substr(6))));
  if (prefixed("cyclotomic:")) {
    const auto n = detail::parse_int_list(spec.substr(11));
    if (n.size() != 1) throw Error("cyclotomic:<n> takes one integer");
    return cyclotomic_polytope(n[0]);
  }
  std::ifstream in(spec);
  if (!in) throw Error("no such polytope file or gallery name: '" + spec + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error("cannot parse " + spec + ": " + e.what());
  }
  return polytope_from_json(j);
}

}  // namespace ehrhart
