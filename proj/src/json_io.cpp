#include "ckmax/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace ckmax {

Json index_to_json(Index p) {
  if (p.is_inf()) return "inf";
  return p.value();
}

Index index_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return Index::infinity();
    throw std::invalid_argument("index: expected a positive number or \"inf\"");
  }
  return Index(j.get<double>());
}

Json space_to_json(const AtomicSpace& space) {
  return Json{{"atoms", space.weights()}};
}

AtomicSpace space_from_json(const Json& j) {
  return AtomicSpace(j.at("atoms").get<std::vector<double>>());
}

Json weight_to_json(const WeightFunction& w) {
  if (w.kind() == WeightFunction::Kind::Power) {
    return Json{{"kind", "power"}, {"c", w.power_c()}, {"a", w.power_a()}};
  }
  return Json{{"kind", "piecewise"},
              {"breakpoints", w.breakpoints()},
              {"levels", w.levels()}};
}

WeightFunction weight_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") {
    return WeightFunction::power(j.at("c").get<double>(), j.at("a").get<double>());
  }
  if (kind == "lorentz") {
    return WeightFunction::lorentz(j.at("p").get<double>(), j.at("r").get<double>());
  }
  if (kind == "piecewise") {
    return WeightFunction::piecewise(j.at("breakpoints").get<std::vector<double>>(),
                                     j.at("levels").get<std::vector<double>>());
  }
  throw std::invalid_argument("weight: unknown kind " + kind);
}

Json norm_to_json(const QuasiNorm& norm) {
  return std::visit(
      [&](const auto& fam) -> Json {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, WeightedLp>) {
          return Json{{"family", "weighted-lp"}, {"p", index_to_json(fam.p)}};
        } else if constexpr (std::is_same_v<T, LorentzLambda>) {
          return Json{{"family", "lorentz-lambda"},
                      {"r", fam.r},
                      {"weight", weight_to_json(fam.weight)}};
        } else if constexpr (std::is_same_v<T, LorentzGamma>) {
          return Json{{"family", "lorentz-gamma"},
                      {"r", fam.r},
                      {"weight", weight_to_json(fam.weight)},
                      {"quad_tol", fam.quad_tol}};
        } else if constexpr (std::is_same_v<T, ClassicalLorentz>) {
          return Json{{"family", "classical-lorentz"},
                      {"p", fam.p},
                      {"r", index_to_json(fam.r)}};
        } else {
          Json blocks = Json::array();
          for (const auto& [lo, hi] : fam.blocks) blocks.push_back(Json{lo, hi});
          return Json{{"family", "amalgam"},
                      {"r", index_to_json(fam.local)},
                      {"s", index_to_json(fam.outer)},
                      {"blocks", blocks}};
        }
      },
      norm.family());
}

QuasiNorm norm_from_json(const AtomicSpace& space, const Json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "weighted-lp" || family == "lp") {
    return QuasiNorm(space, WeightedLp{index_from_json(j.at("p"))});
  }
  if (family == "lorentz-lambda") {
    return QuasiNorm(space, LorentzLambda{j.at("r").get<double>(),
                                          weight_from_json(j.at("weight"))});
  }
  if (family == "lorentz-gamma") {
    LorentzGamma g{j.at("r").get<double>(), weight_from_json(j.at("weight"))};
    if (j.contains("quad_tol")) g.quad_tol = j.at("quad_tol").get<double>();
    return QuasiNorm(space, std::move(g));
  }
  if (family == "classical-lorentz") {
    return QuasiNorm(space, ClassicalLorentz{j.at("p").get<double>(),
                                             index_from_json(j.at("r"))});
  }
  if (family == "amalgam") {
    Amalgam am{index_from_json(j.at("r")), index_from_json(j.at("s")), {}};
    for (const auto& b : j.at("blocks")) {
      am.blocks.emplace_back(b.at(0).get<std::size_t>(), b.at(1).get<std::size_t>());
    }
    return QuasiNorm(space, std::move(am));
  }
  throw std::invalid_argument("norm: unknown family " + family);
}

Json vector_to_json(const LatticeVector& f) {
  return Json{{"values", f.values()}};
}

LatticeVector vector_from_json(const AtomicSpace& space, const Json& j) {
  if (j.is_array()) return LatticeVector(space, j.get<std::vector<double>>());
  return LatticeVector(space, j.at("values").get<std::vector<double>>());
}

NormProblem problem_from_json(const Json& j) {
  AtomicSpace space = space_from_json(j.at("space"));
  QuasiNorm norm = norm_from_json(space, j.at("norm"));
  std::optional<LatticeVector> vec;
  if (j.contains("vector")) vec = vector_from_json(space, j.at("vector"));
  return NormProblem{std::move(space), std::move(norm), std::move(vec)};
}

Json to_json(const SearchConfig& cfg) {
  return Json{{"seed", cfg.seed},         {"restarts", cfg.restarts},
              {"iterations", cfg.iterations}, {"step_init", cfg.step_init},
              {"step_decay", cfg.step_decay}, {"step_min", cfg.step_min},
              {"tolerance", cfg.tolerance},   {"trials", cfg.trials},
              {"workers", cfg.workers}};
}

Json to_json(const SearchStats& stats) {
  return Json{{"restarts", stats.restarts},
              {"iterations", stats.iterations},
              {"evaluations", stats.evaluations},
              {"improvements", stats.improvements}};
}

Json to_json(const EstimateResult& r) {
  Json witness = Json::array();
  for (const auto& w : r.witness) witness.push_back(w.values());
  return Json{{"value", r.value},
              {"exact", r.exact},
              {"witness", witness},
              {"trials", to_json(r.trials)}};
}

Json to_json(const ConstantsReport& r) {
  Json j{{"p", std::isinf(r.p) ? Json("inf") : Json(r.p)},
         {"q", std::isinf(r.q) ? Json("inf") : Json(r.q)},
         {"tau", r.tau},
         {"kappa", r.kappa},
         {"ell", r.ell},
         {"u", r.u},
         {"feasible", r.feasible}};
  j["gamma"] = r.gamma ? Json(*r.gamma) : Json(nullptr);
  j["delta"] = r.delta ? Json(*r.delta) : Json(nullptr);
  j["classical"] = r.classical ? Json(*r.classical) : Json(nullptr);
  return j;
}

Json to_json(const DualityReport& r) {
  return Json{{"p", r.p},
              {"p_conjugate", r.p_conj},
              {"lower", to_json(r.ell)},
              {"dual_upper", to_json(r.dual_upper)},
              {"gap", r.gap},
              {"upper", to_json(r.upper)},
              {"dual_lower", to_json(r.dual_ell)},
              {"mirror_gap", r.mirror_gap}};
}

Json to_json(const CKReport& r) {
  Json j{{"op_norm", to_json(r.op_norm)},
         {"kappa", r.kappa},
         {"ell", r.ell},
         {"u", r.u},
         {"gamma", r.gamma},
         {"max_ratio", r.max_ratio},
         {"trial_count", r.trial_count},
         {"margin", r.margin},
         {"tolerance", r.tolerance},
         {"verdict_available", r.verdict_available},
         {"pass", r.pass}};
  j["worst_witness"] = Json{{"re", r.worst_witness_re}};
  if (!r.worst_witness_im.empty()) j["worst_witness"]["im"] = r.worst_witness_im;
  return j;
}

Json to_json(const DualVerifyReport& r) {
  return Json{{"dual_run", to_json(r.ck)},
              {"primal_norm", r.primal_norm},
              {"primal_norm_exact", r.primal_norm_exact},
              {"dual_norm", r.dual_norm},
              {"dual_norm_exact", r.dual_norm_exact},
              {"norm_consistency", r.norm_consistency},
              {"pairing_max_rel_err", r.pairing_max_rel_err}};
}

Json to_json(const MpzReport& r) {
  return Json{{"ok", r.ok}, {"min_slack", r.min_slack}, {"max_violation", r.max_violation}};
}

Json to_json(const AmalgamHYReport& r) {
  return Json{{"n", r.n},
              {"r", r.r},
              {"s", r.s},
              {"blocks", r.blocks},
              {"p", r.p},
              {"q", r.q},
              {"report", to_json(r.ck)},
              {"norm_upper_bound", r.norm_upper_bound},
              {"sanity_pass", r.sanity_pass}};
}

}  // namespace ckmax
