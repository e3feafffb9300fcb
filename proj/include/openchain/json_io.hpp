#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "openchain/bethe.hpp"
#include "openchain/state.hpp"

namespace openchain {

using Json = nlohmann::ordered_json;

// Exact scalars serialize as "num/den" strings, floats as {"re":, "im":}.
inline Json scalar_to_json(const Rational& r) { return Json(r.str()); }

inline Json scalar_to_json(const Complex& c) {
  Json j;
  j["re"] = c.real();
  j["im"] = c.imag();
  return j;
}

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string()) fail("ParseError", "expected a \"num/den\" string");
  return Rational::parse(j.get<std::string>());
}

inline Complex complex_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    fail("ParseError", "expected {\"re\":, \"im\":}");
  return Complex(j["re"].get<double>(), j["im"].get<double>());
}

// Sparse-triplet operator export: {n_sites, entries: [[row, col, scalar]...]}.
template <class S>
Json operator_to_json(const DenseMatrix<S>& m, int n_sites) {
  Json j;
  j["n_sites"] = n_sites;
  Json entries = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      if (scalar_traits<S>::is_zero(m(r, c))) continue;
      entries.push_back(Json::array({r, c, scalar_to_json(m(r, c))}));
    }
  j["entries"] = std::move(entries);
  return j;
}

inline DenseMatrix<Rational> operator_from_json(const Json& j) {
  int n = j.at("n_sites").get<int>();
  DenseMatrix<Rational> m(1 << n, 1 << n);
  for (const auto& e : j.at("entries"))
    m(e.at(0).get<int>(), e.at(1).get<int>()) = rational_from_json(e.at(2));
  return m;
}

// Dense CSV export, one matrix row per line; desk-scale sizes only.
template <class S>
std::string operator_to_csv(const DenseMatrix<S>& m) {
  if (m.rows() > 64) fail("Precondition", "dense CSV export capped at N = 6");
  std::string out;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out.push_back(',');
      out += scalar_to_json(m(r, c)).is_string()
                 ? scalar_to_json(m(r, c)).template get<std::string>()
                 : scalar_to_json(m(r, c)).dump();
    }
    out.push_back('\n');
  }
  return out;
}

template <class S>
Json state_to_json(const StateVector<S>& v) {
  Json j = Json::object();
  for (std::size_t b = 0; b < v.dim(); ++b) {
    if (scalar_traits<S>::is_zero(v.amp[b])) continue;
    j[std::to_string(b)] = scalar_to_json(v.amp[b]);
  }
  return j;
}

inline StateVector<Rational> state_from_json(const Json& j, int n_sites) {
  StateVector<Rational> v(n_sites);
  for (auto it = j.begin(); it != j.end(); ++it)
    v.amp.at(std::stoul(it.key())) = rational_from_json(it.value());
  return v;
}

// Root sets serialize as {reference, roots: [scalar...]}.
template <class S>
Json roots_to_json(const BetheRoots<S>& rs) {
  Json j;
  j["reference"] = rs.reference == BetheReference::Plus ? "plus" : "minus";
  Json arr = Json::array();
  for (const auto& r : rs.roots) arr.push_back(scalar_to_json(r));
  j["roots"] = std::move(arr);
  return j;
}

}  // namespace openchain
