#include "pilex/json_io.hpp"

namespace pilex {

namespace {

std::vector<Rat> rat_list_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rat> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(rat_from_json(item));
  return out;
}

Json rat_list_to_json(const std::vector<Rat>& values) {
  Json out = Json::array();
  for (const Rat& v : values) out.push_back(rat_to_json(v));
  return out;
}

int q_from_component_count(std::size_t count) {
  int q = 0;
  while ((std::size_t{1} << q) < count) ++q;
  if ((std::size_t{1} << q) != count || q < 1) {
    throw ParseError("component count " + std::to_string(count) + " is not 2^q");
  }
  return q;
}

}  // namespace

Json rat_to_json(const Rat& value) { return format_rat(value); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) throw ParseError("expected a rational as \"num/den\" string");
  return parse_rat(j.get<std::string>());
}

Json to_json(const PSpectrum& spectrum) {
  Json out = Json::array();
  for (int i = 0; i <= spectrum.q(); ++i) out.push_back(spectrum.level(i));
  return out;
}

Json to_json(const SimplexVector& x) { return Json{{"x", rat_list_to_json(x.components())}}; }

SimplexVector simplex_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("x")) throw ParseError("expected {\"x\": [...]}");
  auto components = rat_list_from_json(j.at("x"));
  const int q = q_from_component_count(components.size());
  return SimplexVector(q, std::move(components));
}

Json to_json(const DiscreteMeasure& m) {
  return Json{{"points", rat_list_to_json(m.points())},
              {"weights", rat_list_to_json(m.weights())}};
}

DiscreteMeasure measure_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j.contains("weights")) {
    throw ParseError("expected {\"points\": [...], \"weights\": [...]}");
  }
  return DiscreteMeasure(rat_list_from_json(j.at("points")),
                         rat_list_from_json(j.at("weights")));
}

Json to_json(const PTParams& params) {
  std::vector<Rat> p, tau;
  for (int c = 0; c <= params.color_count(); ++c) p.push_back(params.p(c));
  for (int c = 1; c <= params.color_count(); ++c) tau.push_back(params.tau(c));
  return Json{{"p", rat_list_to_json(p)},
              {"tau", rat_list_to_json(tau)},
              {"tau0", to_json(params.tau0())}};
}

PTParams pt_params_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("tau") || !j.contains("tau0")) {
    throw ParseError("expected {\"p\": [...], \"tau\": [...], \"tau0\": {...}}");
  }
  return PTParams(rat_list_from_json(j.at("p")), rat_list_from_json(j.at("tau")),
                  measure_from_json(j.at("tau0")));
}

Json to_json(const ProbFn& fn) {
  switch (fn.kind()) {
    case ProbFn::Kind::Wx:
      return Json{{"wx", to_json(fn.simplex())}};
    case ProbFn::Kind::Vpt:
      return Json{{"vpt", to_json(fn.pt_params())}};
    case ProbFn::Kind::Vptn: {
      Json params = to_json(fn.pt_params());
      params["n"] = fn.vptn_n();
      return Json{{"vptn", std::move(params)}};
    }
    case ProbFn::Kind::Zx:
      return Json{{"zx", to_json(fn.simplex())}};
    case ProbFn::Kind::Mixture:
    case ProbFn::Kind::Signed: {
      const bool is_mixture = fn.kind() == ProbFn::Kind::Mixture;
      Json items = Json::array();
      for (const auto& c : fn.components()) {
        items.push_back(Json{{is_mixture ? "w" : "c", rat_to_json(c.weight)},
                             {"fn", to_json(c.fn)}});
      }
      return Json{{is_mixture ? "mix" : "signed", std::move(items)}};
    }
  }
  throw InternalError("unreachable function kind");
}

ProbFn prob_fn_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) {
    throw ParseError("expected a single-key tagged function document");
  }
  const std::string tag = j.begin().key();
  const Json& body = j.begin().value();
  if (tag == "wx") return ProbFn::wx(simplex_from_json(body));
  if (tag == "zx") return ProbFn::zx(simplex_from_json(body));
  if (tag == "vpt") return ProbFn::vpt(pt_params_from_json(body));
  if (tag == "vptn") {
    if (!body.contains("n")) throw ParseError("vptn document needs \"n\"");
    return ProbFn::vptn(pt_params_from_json(body), body.at("n").get<int>());
  }
  if (tag == "mix" || tag == "signed") {
    if (!body.is_array()) throw ParseError("mixture body must be an array");
    std::vector<ProbFn::Component> components;
    for (const auto& item : body) {
      const char* weight_key = tag == "mix" ? "w" : "c";
      if (!item.contains(weight_key) || !item.contains("fn")) {
        throw ParseError("mixture components need weight and \"fn\"");
      }
      components.push_back({rat_from_json(item.at(weight_key)),
                            prob_fn_from_json(item.at("fn"))});
    }
    return tag == "mix" ? ProbFn::mixture(std::move(components))
                        : ProbFn::signed_combination(std::move(components));
  }
  throw ParseError("unknown function tag '" + tag + "'");
}

ProbFn prob_fn_from_params(const std::string& kind, const Json& j) {
  // Tagged documents are accepted regardless of the requested kind.
  if (j.is_object() && j.size() == 1) {
    const std::string tag = j.begin().key();
    if (tag == "wx" || tag == "zx" || tag == "vpt" || tag == "vptn" || tag == "mix" ||
        tag == "signed") {
      return prob_fn_from_json(j);
    }
  }
  if (kind == "wx") return ProbFn::wx(simplex_from_json(j));
  if (kind == "zx") return ProbFn::zx(simplex_from_json(j));
  if (kind == "vpt") return ProbFn::vpt(pt_params_from_json(j));
  if (kind == "vptn") {
    if (!j.contains("n")) throw ParseError("vptn parameters need \"n\"");
    return ProbFn::vptn(pt_params_from_json(j), j.at("n").get<int>());
  }
  if (kind == "mixture") throw ParseError("mixture parameters need a tagged \"mix\" document");
  throw ParseError("unknown function kind '" + kind + "'");
}

Json to_json(const PrincipleReport& report) {
  Json bounds{{"q", report.q}, {"n", report.n}};
  for (const auto& [key, value] : report.extra_bounds) bounds[key] = value;
  Json out{{"principle", principle_name(report.principle)},
           {"verdict", report.pass ? "pass" : "fail"},
           {"witness", nullptr},
           {"bounds", std::move(bounds)}};
  if (report.witness) {
    Json w = Json::object();
    const Witness& witness = *report.witness;
    if (witness.theta) w["theta"] = format_sd(*witness.theta);
    if (witness.phi) w["phi"] = format_sd(*witness.phi);
    if (witness.theta_sentence) w["theta_sentence"] = *witness.theta_sentence;
    if (witness.phi_sentence) w["phi_sentence"] = *witness.phi_sentence;
    if (witness.permutation) w["perm"] = *witness.permutation;
    if (witness.lhs) w["lhs"] = rat_to_json(*witness.lhs);
    if (witness.rhs) w["rhs"] = rat_to_json(*witness.rhs);
    if (!witness.note.empty()) w["note"] = witness.note;
    out["witness"] = std::move(w);
  }
  return out;
}

Json to_json(const DecompositionResult& result) {
  Json tau_rows = Json::array();
  for (const auto& row : result.taus.rows) tau_rows.push_back(rat_list_to_json(row));
  return Json{{"lambda", rat_to_json(result.lambda)},
              {"det", rat_to_json(result.taus.det)},
              {"seed", result.taus.seed},
              {"attempts", result.taus.attempts},
              {"verified_length", result.verified_length},
              {"tau_table", std::move(tau_rows)},
              {"w1", to_json(result.w1)},
              {"w2", to_json(result.w2)}};
}

Json certificate_to_json(const DecompositionResult& result) {
  Json items = Json::array();
  for (const auto& v : result.certificate) {
    items.push_back(Json{{"sd", format_sd(v.sd)},
                         {"lhs", rat_to_json(v.lhs)},
                         {"rhs", rat_to_json(v.rhs)}});
  }
  return Json{{"identity", "(1+lambda) w1 - lambda w2"}, {"values", std::move(items)}};
}

}  // namespace pilex
