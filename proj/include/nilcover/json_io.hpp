#pragma once

// JSON encodings for every value that crosses the CLI boundary. All
// emission goes through ordered_json with canonical element ordering, so
// serialized output is byte-identical across runs and thread counts.
// Loaders validate structural invariants and reject violations.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilcover/approx.hpp"
#include "nilcover/cover.hpp"
#include "nilcover/generators.hpp"
#include "nilcover/rational.hpp"
#include "nilcover/subalgebra.hpp"
#include "nilcover/symset.hpp"
#include "nilcover/unitri.hpp"

namespace nilcover {

using ojson = nlohmann::ordered_json;

namespace json_detail {

inline int ambient_from(const ojson& j, const char* what) {
  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw ParseError(std::string(what) + ": missing integer field \"n\"");
  int n = j.at("n").get<int>();
  if (n < kMinAmbient || n > kMaxAmbient)
    throw ParseError(std::string(what) + ": n out of range [2,8]");
  return n;
}

inline std::string string_at(const ojson& j, const char* what) {
  if (!j.is_string())
    throw ParseError(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

}  // namespace json_detail

// ---- elements ----

inline ojson element_to_json(const UniTri& g) {
  ojson rows = ojson::array();
  for (int i = 0; i < g.n(); ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < g.n(); ++j) row.push_back(g.entry(i, j).str());
    rows.push_back(std::move(row));
  }
  return ojson{{"n", g.n()}, {"rows", std::move(rows)}};
}

inline UniTri element_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("rows"))
    throw ParseError("element: expected {\"n\", \"rows\"}");
  int n = json_detail::ambient_from(j, "element");
  const ojson& rows = j.at("rows");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw ParseError("element: expected " + std::to_string(n) + " rows");
  const GradedOrder& ord = GradedOrder::get(n);
  UpperCoords upper(static_cast<std::size_t>(coord_dim(n)));
  for (int i = 0; i < n; ++i) {
    const ojson& row = rows.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError("element: row " + std::to_string(i) + " has wrong length");
    for (int jj = 0; jj < n; ++jj) {
      Rational v = Rational::from_string(
          json_detail::string_at(row.at(static_cast<std::size_t>(jj)), "element entry"));
      if (i == jj && !v.is_one())
        throw ParseError("element: diagonal entry must be 1");
      if (i > jj && !v.is_zero())
        throw ParseError("element: entries below the diagonal must be 0");
      if (i < jj) upper[static_cast<std::size_t>(ord.index(i, jj))] = std::move(v);
    }
  }
  return UniTri::from_upper(n, std::move(upper));
}

// ---- sets ----

inline ojson symset_to_json(const SymSet& A) {
  ojson elems = ojson::array();
  for (const auto& g : A.elements()) elems.push_back(element_to_json(g));
  return ojson{{"n", A.n()}, {"elements", std::move(elems)}};
}

inline SymSet symset_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("elements") || !j.at("elements").is_array())
    throw ParseError("set: expected {\"n\", \"elements\"}");
  int n = json_detail::ambient_from(j, "set");
  std::vector<UniTri> elems;
  for (const auto& e : j.at("elements")) {
    UniTri g = element_from_json(e);
    if (g.n() != n) throw ParseError("set: element with mismatched n");
    elems.push_back(std::move(g));
  }
  return SymSet::from_elements(n, std::move(elems));
}

// ---- subalgebras ----

inline ojson subalgebra_to_json(const Subalgebra& s) {
  ojson basis = ojson::array();
  for (const auto& row : s.space.basis) {
    ojson r = ojson::array();
    for (const auto& x : row) r.push_back(x.str());
    basis.push_back(std::move(r));
  }
  return ojson{{"n", s.n()}, {"basis", std::move(basis)}};
}

inline Subalgebra subalgebra_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("basis") || !j.at("basis").is_array())
    throw ParseError("subalgebra: expected {\"n\", \"basis\"}");
  int n = json_detail::ambient_from(j, "subalgebra");
  std::vector<CoordVector> rows;
  for (const auto& r : j.at("basis")) {
    if (!r.is_array() || static_cast<int>(r.size()) != coord_dim(n))
      throw ParseError("subalgebra: basis row has wrong length");
    CoordVector v;
    for (const auto& x : r)
      v.push_back(Rational::from_string(json_detail::string_at(x, "subalgebra entry")));
    rows.push_back(std::move(v));
  }
  Subspace space = rref(n, std::move(rows));
  if (!bracket_closed(space))
    throw ParseError("subalgebra: basis is not bracket-closed");
  return Subalgebra{std::move(space)};
}

// ---- certificates and reports ----

inline ojson cert_to_json(const ApproxCert& c) {
  ojson x = ojson::array();
  for (const auto& g : c.X.elements()) x.push_back(element_to_json(g));
  return ojson{{"K", c.K.str()}, {"X", std::move(x)}};
}

inline ApproxCert cert_from_json(const ojson& j, int n) {
  if (!j.is_object() || !j.contains("K") || !j.contains("X"))
    throw ParseError("certificate: expected {\"K\", \"X\"}");
  Rational K = Rational::from_string(json_detail::string_at(j.at("K"), "certificate K"));
  if (K < Rational(1)) throw ParseError("certificate: K must be >= 1");
  std::vector<UniTri> elems;
  for (const auto& e : j.at("X")) elems.push_back(element_from_json(e));
  return ApproxCert{std::move(K), SymSet::from_elements(n, std::move(elems))};
}

inline ojson clause_to_json(const ClauseReport& c) {
  ojson j{{"clause", c.clause}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}};
  if (c.skipped) j["skipped"] = true;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline ojson clauses_to_json(const std::vector<ClauseReport>& cs) {
  ojson arr = ojson::array();
  for (const auto& c : cs) arr.push_back(clause_to_json(c));
  return arr;
}

inline ojson witness_to_json(const CentralizerWitness& w) {
  ojson j{{"gamma", element_to_json(w.gamma)},
          {"depth", w.depth},
          {"popular_value", element_to_json(w.popular_value)},
          {"count", w.count},
          {"centralizer_count", w.centralizer_count},
          {"centralizer", subalgebra_to_json(w.centralizer)},
          {"a6_count", w.a6_count},
          {"a6_trivial", w.a6_trivial},
          {"a6_pass", w.a6_pass}};
  if (w.a6_skipped) {
    j["a6_skipped"] = true;
    j["a6_note"] = w.a6_note;
  }
  if (w.exhaustive) {
    j["best_gamma"] = element_to_json(w.best_gamma);
    j["best_count"] = w.best_count;
  }
  return j;
}

inline ojson centralizer_report_to_json(const CentralizerBoundReport& r) {
  return ojson{{"set_size", r.set_size},
               {"K", r.K.str()},
               {"witness", witness_to_json(r.witness)},
               {"bound_pass", r.bound_pass},
               {"d_chain_size", r.d_chain_size},
               {"d_chain_pass", r.d_chain_pass},
               {"pass", r.pass()},
               {"clauses", clauses_to_json(r.clauses)}};
}

inline ojson cover_to_json(const CoverResult& r) {
  ojson steps = ojson::array();
  for (const auto& s : r.trace) {
    steps.push_back(ojson{{"index", s.index},
                          {"G", subalgebra_to_json(s.G)},
                          {"H", subalgebra_to_json(s.H)},
                          {"gamma", element_to_json(s.gamma)},
                          {"density", s.density},
                          {"exponent", s.exponent},
                          {"quotient_size", s.quotient_size},
                          {"centralizer_count", s.centralizer_count},
                          {"witness", witness_to_json(s.witness)},
                          {"checks", clauses_to_json(s.checks)}});
  }
  ojson cosets = ojson::array();
  for (const auto& c : r.cosets) cosets.push_back(element_to_json(c));
  return ojson{{"n", r.n},
               {"set_size", r.set_size},
               {"K", r.K.str()},
               {"a2_size", r.a2_size},
               {"trace", std::move(steps)},
               {"final_H", subalgebra_to_json(r.final_H)},
               {"final_dim", r.final_dim},
               {"cosets", std::move(cosets)},
               {"final_checks", clauses_to_json(r.final_checks)},
               {"all_pass", r.all_checks_pass()}};
}

inline ojson gleason_to_json(const GleasonWitness& w) {
  ojson chain = ojson::array();
  for (const auto& s : w.chain) chain.push_back(subalgebra_to_json(s));
  ojson elems = ojson::array();
  for (std::size_t i = 0; i < w.h_elems.size(); ++i) {
    ojson e{{"found", static_cast<bool>(w.found[i])}};
    if (w.found[i]) e["element"] = element_to_json(w.h_elems[i]);
    elems.push_back(std::move(e));
  }
  ojson j{{"chain", std::move(chain)},
          {"witnesses", std::move(elems)},
          {"all_found", w.all_found},
          {"disjoint_ok", w.disjoint_ok},
          {"hypothesis_met", w.hypothesis_met},
          {"ratio", w.ratio.str()},
          {"pass", w.pass}};
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

// ---- file IO ----

inline ojson load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  ojson j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

inline void save_json(const std::string& path, const ojson& j) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace nilcover
