#pragma once

// Stable JSON forms for elements, decompositions, certificates and reports.
// Field order is fixed (ordered_json) so output is byte-reproducible.

#include <string>
#include <vector>

#include "json.hpp"
#include "polytc/certify.hpp"
#include "polytc/parity.hpp"
#include "polytc/ring.hpp"
#include "polytc/tensor.hpp"

namespace polytc {

using Json = nlohmann::ordered_json;

inline Json support_to_json(std::uint64_t mask) {
  Json a = Json::array();
  for (std::uint64_t b = mask; b; b &= b - 1) a.push_back(__builtin_ctzll(b) + 1);
  return a;
}

inline Json to_json(const RingElement& e) {
  Json j;
  j["degree"] = e.degree;
  Json terms = Json::array();
  for (auto m : e.terms) terms.push_back(support_to_json(m));
  j["terms"] = std::move(terms);
  return j;
}

inline Json to_json(const TensorElement& e) {
  Json comps = Json::object();
  for (const auto& [bd, c] : e.comps) {
    if (c.empty()) continue;
    Json pairs = Json::array();
    for (const auto& t : c)
      pairs.push_back(Json::array({support_to_json(class_support(t.left)),
                                   support_to_json(class_support(t.right))}));
    comps[std::to_string(bd.first) + "," + std::to_string(bd.second)] = std::move(pairs);
  }
  Json j;
  j["components"] = std::move(comps);
  return j;
}

inline Json to_json(const ParamDecomp& p) {
  Json j;
  j["n"] = p.n;
  j["k"] = p.k;
  j["t"] = p.t;
  j["k0"] = p.k0;
  j["B"] = p.B;
  j["D"] = p.D;
  j["C"] = p.C;
  j["case"] = to_string(p.wcase);
  if (p.ell) j["ell"] = *p.ell;
  if (p.A) j["A"] = *p.A;
  if (p.gamma) j["gamma"] = *p.gamma;
  if (p.m) j["m"] = *p.m;
  return j;
}

inline Json factors_to_json(const FactorList& factors) {
  Json a = Json::array();
  for (const auto& [y, e] : factors) {
    if (y.r && y.v == 0) {
      a.push_back(Json::array({"R", 0, e}));
    } else if (!y.r && support_size(y.v) == 1) {
      a.push_back(Json::array({"V", __builtin_ctzll(y.v) + 1, e}));
    } else {
      // General degree-1 class (vanishing counterexamples only).
      Json sum = Json::array();
      if (y.r) sum.push_back(Json::array({"R", 0}));
      for (std::uint64_t b = y.v; b; b &= b - 1)
        sum.push_back(Json::array({"V", __builtin_ctzll(b) + 1}));
      a.push_back(Json::array({"SUM", std::move(sum), e}));
    }
  }
  return a;
}

inline Json to_json(const Certificate& c) {
  Json j;
  j["n"] = c.n;
  j["k"] = c.k;
  j["case"] = to_string(c.params.wcase);
  j["factors"] = factors_to_json(c.witness.factors);
  j["functionals"] = Json::array({to_string(c.witness.left), to_string(c.witness.right)});
  j["evaluation"] = c.evaluation;
  j["zdcl_lower"] = c.zdcl_lower;
  j["tc_lower"] = c.tc_lower;
  j["tc_upper"] = c.tc_upper;
  j["engine_version"] = c.engine_version;
  return j;
}

inline Json to_json(const VanishingReport& r) {
  Json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["strategy"] = to_string(r.strategy);
  j["sample_count"] = r.sample_count;
  if (r.strategy == VanishStrategy::Random) j["seed"] = r.seed;
  j["all_vanished"] = r.all_vanished;
  if (r.counterexample) j["counterexample"] = factors_to_json(*r.counterexample);
  return j;
}

// ---------------------------------------------------------------------------
// Certificate replay.

struct ReplayResult {
  bool ok = false;
  std::string message;
};

inline FactorList factors_from_json(const Json& a) {
  FactorList out;
  for (const auto& f : a) {
    const std::string kind = f.at(0).get<std::string>();
    if (kind == "R") {
      out.push_back({h1_R(), f.at(2).get<int>()});
    } else if (kind == "V") {
      out.push_back({h1_V(f.at(1).get<int>()), f.at(2).get<int>()});
    } else if (kind == "SUM") {
      H1Vector y;
      for (const auto& t : f.at(1)) {
        if (t.at(0).get<std::string>() == "R")
          y.r = true;
        else
          y.v |= std::uint64_t(1) << (t.at(1).get<int>() - 1);
      }
      out.push_back({y, f.at(2).get<int>()});
    } else {
      throw std::invalid_argument("unknown factor kind: " + kind);
    }
  }
  return out;
}

inline Functional functional_from_string(const std::string& s) {
  if (s == "PHI1") return Functional::Phi1;
  if (s == "PHI2") return Functional::Phi2;
  if (s == "PHI3") return Functional::Phi3;
  throw std::invalid_argument("unknown functional: " + s);
}

// Re-expands the certificate's factor list and compares every recorded field
// against a fresh evaluation.  The replay trusts nothing but (n, k) and the
// factors.
inline ReplayResult replay_certificate(const Json& j) {
  ReplayResult res;
  try {
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    PolygonRing ring(n, k);
    const ParamDecomp p = ring.params();
    if (to_string(p.wcase) != j.at("case").get<std::string>()) {
      res.message = "case tag does not match the (n,k) decomposition";
      return res;
    }
    const FactorList factors = factors_from_json(j.at("factors"));
    long long total = 0;
    for (const auto& [y, e] : factors) total += e;
    if (total != 2LL * n - 7) {
      res.message = "factor exponents do not sum to 2n-7";
      return res;
    }
    const Functional fl = functional_from_string(j.at("functionals").at(0).get<std::string>());
    const Functional fr = functional_from_string(j.at("functionals").at(1).get<std::string>());
    const TensorElement prod = expand(ring, factors);
    const int eval = pair_evaluate(ring, fl, fr, prod);
    if (eval != j.at("evaluation").get<int>()) {
      res.message = "evaluation mismatch: replay got " + std::to_string(eval);
      return res;
    }
    const int want_zdcl = eval == 1 ? 2 * n - 7 : 0;
    const int want_tc_lower = eval == 1 ? 2 * n - 6 : 0;
    if (j.at("zdcl_lower").get<int>() != want_zdcl ||
        j.at("tc_lower").get<int>() != want_tc_lower ||
        j.at("tc_upper").get<int>() != 2 * n - 5) {
      res.message = "recorded bounds do not match the evaluation";
      return res;
    }
    res.ok = true;
    res.message = "certificate verified";
  } catch (const std::exception& e) {
    res.message = std::string("replay failed: ") + e.what();
  }
  return res;
}

}  // namespace polytc
