#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nrhw/numberfield.hpp"
#include "nrhw/tensor.hpp"

// The JSON exchange format for a Galois number ring:
//
//   {"name": str, "f": [int...], "sigmas": [[int...]...], "order": [int...]?}
//
// f lists the defining polynomial constant term first and must be monic;
// sigmas[i] holds the power-basis coordinates of the i-th automorphism image
// of the generator, the identity first; order, when present, is a permutation
// of 1..n choosing the working order of the automorphisms (1-based).

namespace nrhw {

using Json = nlohmann::ordered_json;

struct FieldSpec {
  std::string name;
  std::vector<std::int64_t> f;
  std::vector<std::vector<std::int64_t>> sigmas;
  std::vector<int> order;  // empty = declaration order
};

namespace detail {

inline std::vector<std::int64_t> int_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw std::invalid_argument(where + " must be an array of integers");
  std::vector<std::int64_t> v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw std::invalid_argument(where + " must hold only integers");
    v.push_back(x.get<std::int64_t>());
  }
  return v;
}

}  // namespace detail

inline FieldSpec field_spec_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("field spec must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "name" && key != "f" && key != "sigmas" && key != "order")
      throw std::invalid_argument("unknown field spec key: " + key);
  }
  if (!j.contains("name") || !j["name"].is_string())
    throw std::invalid_argument("field spec needs a string \"name\"");
  if (!j.contains("f")) throw std::invalid_argument("field spec needs \"f\"");
  if (!j.contains("sigmas") || !j["sigmas"].is_array())
    throw std::invalid_argument("field spec needs \"sigmas\", an array of coordinate vectors");

  FieldSpec spec;
  spec.name = j["name"].get<std::string>();
  spec.f = detail::int_list(j["f"], "\"f\"");
  for (std::size_t i = 0; i < j["sigmas"].size(); ++i)
    spec.sigmas.push_back(detail::int_list(j["sigmas"][i], "\"sigmas\"[" + std::to_string(i) + "]"));

  if (j.contains("order")) {
    auto ord = detail::int_list(j["order"], "\"order\"");
    const int n = static_cast<int>(spec.sigmas.size());
    std::vector<bool> seen(n, false);
    for (auto v : ord) {
      if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
        throw std::invalid_argument("\"order\" must be a permutation of 1.." + std::to_string(n));
      seen[static_cast<std::size_t>(v - 1)] = true;
      spec.order.push_back(static_cast<int>(v));
    }
    if (static_cast<int>(spec.order.size()) != n)
      throw std::invalid_argument("\"order\" must list all of 1.." + std::to_string(n));
  }
  return spec;
}

inline FieldSpec parse_field_spec(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("field spec is not valid JSON at byte " + std::to_string(e.byte) +
                                ": " + e.what());
  }
  return field_spec_from_json(j);
}

inline Json field_spec_to_json(const FieldSpec& spec) {
  Json j;
  j["name"] = spec.name;
  j["f"] = spec.f;
  j["sigmas"] = spec.sigmas;
  if (!spec.order.empty()) j["order"] = spec.order;
  return j;
}

inline std::string render_field_spec(const FieldSpec& spec) {
  return field_spec_to_json(spec).dump(2) + "\n";
}

inline GaloisGroup group_from_spec(const FieldSpec& spec) {
  IntPoly f(std::vector<Int>(spec.f.begin(), spec.f.end()));
  std::vector<IntVec> images;
  images.reserve(spec.sigmas.size());
  for (const auto& s : spec.sigmas) images.emplace_back(s.begin(), s.end());
  return build_group(std::move(f), std::move(images));
}

// The working order comes from the spec file unless the caller passes an
// override (both 1-based); the ring itself uses 0-based group indices.
inline TensorRing tensor_from_spec(const GaloisGroup& G, const FieldSpec& spec,
                                   const std::vector<int>& override_order = {}) {
  const std::vector<int>& ord1 = override_order.empty() ? spec.order : override_order;
  if (ord1.empty()) return TensorRing(G);
  std::vector<int> ord;
  ord.reserve(ord1.size());
  for (int v : ord1) ord.push_back(v - 1);
  return TensorRing(G, std::move(ord));
}

// --- built-in example families ------------------------------------------------

inline FieldSpec quadratic_field_spec(std::int64_t d) {
  if (d < 2) throw std::invalid_argument("quadratic example needs d >= 2");
  std::int64_t r = d % 4;
  if (r != 2 && r != 3)
    throw std::invalid_argument("quadratic example needs d = 2 or 3 mod 4 (got d = " +
                                std::to_string(d) + ")");
  for (std::int64_t q = 2; q * q <= d; ++q)
    if (d % (q * q) == 0)
      throw std::invalid_argument("quadratic example needs squarefree d (got d = " +
                                  std::to_string(d) + ")");
  FieldSpec spec;
  spec.name = "sqrt" + std::to_string(d);
  spec.f = {-d, 0, 1};
  spec.sigmas = {{0, 1}, {0, -1}};
  return spec;
}

inline FieldSpec cyclotomic_field_spec(int m) {
  if (m < 3 || !is_prime_i64(m))
    throw std::invalid_argument("cyclotomic example needs a prime m >= 3 (got m = " +
                                std::to_string(m) + ")");
  FieldSpec spec;
  spec.name = "zeta" + std::to_string(m);
  spec.f.assign(static_cast<std::size_t>(m), 1);
  IntPoly f(std::vector<Int>(spec.f.begin(), spec.f.end()));
  NumberRing R(f);
  for (int k = 1; k < m; ++k) {
    NumberRing::Elem zk = R.pow(R.theta(), static_cast<unsigned>(k));
    std::vector<std::int64_t> coords;
    coords.reserve(zk.size());
    for (const auto& c : zk) coords.push_back(to_i64(c));
    spec.sigmas.push_back(std::move(coords));
  }
  return spec;
}

}  // namespace nrhw
