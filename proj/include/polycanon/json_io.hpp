#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "polycanon/circle.hpp"
#include "polycanon/levinson.hpp"
#include "polycanon/mixed_powers.hpp"
#include "polycanon/multi_series.hpp"
#include "polycanon/poly.hpp"
#include "polycanon/root_operators.hpp"
#include "polycanon/uni_series.hpp"
#include "polycanon/weierstrass.hpp"

namespace polycanon {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Invariant violation in an input document; carries the offending field.
class validation_error : public std::runtime_error {
 public:
  validation_error(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// ---- series ----------------------------------------------------------

inline multi_series series_from_json(const json& j) {
  if (!j.is_object()) throw validation_error("series", "expected an object");
  if (!j.contains("nvars") || !j["nvars"].is_number_integer()) {
    throw validation_error("nvars", "missing or not an integer");
  }
  if (!j.contains("trunc") || !j["trunc"].is_number_integer()) {
    throw validation_error("trunc", "missing or not an integer");
  }
  const int nvars = j["nvars"].get<int>();
  const int trunc = j["trunc"].get<int>();
  if (nvars < 1) throw validation_error("nvars", "must be at least 1");
  if (trunc < 0 || trunc > 256) throw validation_error("trunc", "must be in 0..256");

  multi_series s(nvars, trunc);
  if (!j.contains("coeffs") || !j["coeffs"].is_array()) {
    throw validation_error("coeffs", "missing or not an array");
  }
  std::set<multi_index> seen;
  for (const auto& entry : j["coeffs"]) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_array()) {
      throw validation_error("coeffs", "each entry must be [[e1..ed], re, im]");
    }
    multi_index e;
    for (const auto& p : entry[0]) {
      if (!p.is_number_integer()) throw validation_error("coeffs", "exponent must be an integer");
      e.push_back(p.get<int>());
      if (e.back() < 0) throw validation_error("coeffs", "negative exponent");
    }
    if (static_cast<int>(e.size()) != nvars) {
      throw validation_error("coeffs", "multi-index length must equal nvars");
    }
    if (total_degree(e) > trunc) {
      throw validation_error("coeffs", "multi-index exceeds the truncation order");
    }
    if (!seen.insert(e).second) throw validation_error("coeffs", "duplicate multi-index");
    const cplx v{entry[1].get<double>(), entry[2].get<double>()};
    if (!is_finite(v)) throw validation_error("coeffs", "non-finite coefficient");
    s.set_coeff(e, v);
  }
  return s;
}

inline ordered_json series_to_json(const multi_series& s) {
  ordered_json j;
  j["nvars"] = s.nvars();
  j["trunc"] = s.trunc();
  ordered_json coeffs = ordered_json::array();
  for (const auto& [e, v] : s.coeffs()) {
    coeffs.push_back(ordered_json::array({e, v.real(), v.imag()}));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

inline uni_series uni_from_json(const json& j) {
  const multi_series s = series_from_json(j);
  if (s.nvars() != 1) throw validation_error("nvars", "expected a univariate series");
  return s.axis_series();
}

inline ordered_json uni_to_json(const uni_series& s) {
  multi_series m(1, s.trunc());
  for (int n = 0; n <= s.trunc(); ++n) {
    if (s.coeff(n) != cplx{0.0, 0.0}) m.set_coeff({n}, s.coeff(n));
  }
  return series_to_json(m);
}

// ---- polynomials and root data ---------------------------------------

inline poly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty()) {
    throw validation_error("coeffs", "polynomial needs a nonempty coeffs array");
  }
  std::vector<cplx> c;
  for (const auto& entry : j["coeffs"]) {
    if (!entry.is_array() || entry.size() != 2) {
      throw validation_error("coeffs", "each polynomial coefficient must be [re, im]");
    }
    c.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    if (!is_finite(c.back())) throw validation_error("coeffs", "non-finite coefficient");
  }
  try {
    return poly(std::move(c));
  } catch (const std::invalid_argument& e) {
    throw validation_error("coeffs", e.what());
  }
}

inline ordered_json poly_to_json(const poly& p) {
  ordered_json coeffs = ordered_json::array();
  for (int n = 0; n <= p.degree(); ++n) {
    coeffs.push_back(ordered_json::array({p.coeff(n).real(), p.coeff(n).imag()}));
  }
  ordered_json j;
  j["coeffs"] = std::move(coeffs);
  return j;
}

inline std::vector<cplx> roots_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw validation_error("roots", "expected a nonempty array");
  std::vector<cplx> roots;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2) {
      throw validation_error("roots", "each root must be [re, im]");
    }
    roots.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    if (!is_finite(roots.back())) throw validation_error("roots", "non-finite root");
  }
  return roots;
}

inline ordered_json roots_to_json(const std::vector<cplx>& roots) {
  ordered_json j = ordered_json::array();
  for (cplx z : roots) j.push_back(ordered_json::array({z.real(), z.imag()}));
  return j;
}

// ---- composite inputs -------------------------------------------------

inline factor_system factor_system_from_json(const json& j) {
  factor_system sys;
  if (!j.is_object() || !j.contains("factors") || !j["factors"].is_array()) {
    throw validation_error("factors", "missing factor array");
  }
  for (const auto& f : j["factors"]) sys.factors.push_back(uni_from_json(f));
  if (!j.contains("weights") || !j["weights"].is_array()) {
    throw validation_error("weights", "missing weight array");
  }
  for (const auto& w : j["weights"]) {
    if (!w.is_number_integer()) throw validation_error("weights", "weights must be integers");
    sys.weights.push_back(w.get<long long>());
  }
  if (!j.contains("n0") || !j["n0"].is_number_integer()) {
    throw validation_error("n0", "missing or not an integer");
  }
  sys.target_power = j["n0"].get<long long>();
  try {
    sys.validate();
  } catch (const std::invalid_argument& e) {
    throw validation_error("factors", e.what());
  }
  return sys;
}

inline ordered_json factor_system_to_json(const factor_system& sys) {
  ordered_json j;
  ordered_json factors = ordered_json::array();
  for (const uni_series& f : sys.factors) factors.push_back(uni_to_json(f));
  j["factors"] = std::move(factors);
  j["weights"] = sys.weights;
  j["n0"] = sys.target_power;
  return j;
}

// ---- canonical forms --------------------------------------------------

inline ordered_json weierstrass_to_json(const weierstrass_form& form) {
  ordered_json j;
  j["k"] = form.k;
  j["trunc"] = form.trunc;
  j["V"] = series_to_json(form.unit);
  ordered_json u = ordered_json::array();
  for (const multi_series& uj : form.lower) u.push_back(series_to_json(uj));
  j["u"] = std::move(u);
  return j;
}

inline weierstrass_form weierstrass_from_json(const json& j) {
  weierstrass_form form;
  if (!j.contains("k") || !j["k"].is_number_integer()) throw validation_error("k", "missing");
  form.k = j["k"].get<int>();
  form.unit = series_from_json(j.at("V"));
  form.trunc = j.contains("trunc") ? j["trunc"].get<int>() : form.unit.trunc();
  for (const auto& u : j.at("u")) form.lower.push_back(series_from_json(u));
  if (static_cast<int>(form.lower.size()) != form.k) {
    throw validation_error("u", "expected k coefficient functions");
  }
  return form;
}

inline ordered_json levinson_to_json(const levinson_form& form) {
  ordered_json j;
  j["k"] = form.k;
  j["trunc"] = form.trunc;
  ordered_json v = ordered_json::array();
  for (const multi_series& vj : form.coeff_fns) v.push_back(series_to_json(vj));
  j["v"] = std::move(v);
  j["x"] = series_to_json(form.aux);
  return j;
}

inline levinson_form levinson_from_json(const json& j) {
  levinson_form form;
  if (!j.contains("k") || !j["k"].is_number_integer()) throw validation_error("k", "missing");
  form.k = j["k"].get<int>();
  for (const auto& v : j.at("v")) form.coeff_fns.push_back(series_from_json(v));
  form.aux = series_from_json(j.at("x"));
  form.trunc = j.contains("trunc") ? j["trunc"].get<int>() : form.aux.trunc();
  if (static_cast<int>(form.coeff_fns.size()) != form.k + 1) {
    throw validation_error("v", "expected k+1 coefficient functions");
  }
  return form;
}

}  // namespace polycanon
