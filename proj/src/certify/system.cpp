#include "pwaeb/certify.hpp"
#include "pwaeb/errors.hpp"

namespace pwaeb::certify {

pwa::MinMaxFunction residual_function(const ConstraintSystem& sys) {
  for (const auto* list : {&sys.equalities, &sys.inequalities})
    for (const auto& g : *list)
      if (g.dim() != sys.dim) throw InputError("system component has dimension " + std::to_string(g.dim()) +
                                               ", system has " + std::to_string(sys.dim));
  std::optional<pwa::MinMaxFunction> norm_f;
  for (const auto& g : sys.equalities) {
    auto a = pwa::pa_abs(g);
    norm_f = norm_f ? pwa::pa_max(*norm_f, a) : a;
  }
  auto phi = norm_f.value_or(pwa::pa_constant(sys.dim, 0));
  for (const auto& g : sys.inequalities) phi = pwa::pa_add(phi, pwa::pa_clamp_plus(g));
  return phi;
}

Certificate certify_system(const ConstraintSystem& sys, const SetSpec& v, const TauConfig& cfg) {
  const auto phi = residual_function(sys);
  if (dimension(v) != sys.dim) throw InputError("set dimension does not match the system");
  validate(v);

  Certificate c;
  c.theorem = "system";
  c.scope = std::holds_alternative<FullSpace>(v) ? "global" : "set";
  c.set("equalities", Rational(static_cast<long>(sys.equalities.size())));
  c.set("inequalities", Rational(static_cast<long>(sys.inequalities.size())));
  c.set("residual_pieces", Rational(static_cast<long>(phi.pieces().size())));
  c.set("residual_terms", Rational(static_cast<long>(phi.term_count())));
  c.notes.push_back("residual built with the max norm on equalities");

  bool sufficient = false, fails = false;
  auto take = [&](Certificate part) {
    if (part.verdict == Verdict::Holds) sufficient = true;
    if (part.theorem == "polyhedral" && part.verdict == Verdict::Fails) {
      fails = true;
      c.witness_rays = part.witness_rays;
      c.cones = part.cones;
    }
    c.parts.push_back(std::move(part));
  };

  if (std::holds_alternative<Box>(v) || std::holds_alternative<PointList>(v)) {
    take(certify_bounded(phi, v, cfg));
  } else if (std::holds_alternative<StrictSublevel>(v)) {
    take(certify_strict_sublevel(phi, v));
  } else {
    if (std::holds_alternative<FullSpace>(v)) {
      auto rob = classify_robinson(phi);
      const bool global = rob.scope == "global";
      take(std::move(rob));
      Certificate hom;
      hom.theorem = "homogeneous";
      hom.scope = "global";
      hom.condition = pwa::is_homogeneous_representation(phi);
      // A zero-offset representation has 0 in S(phi), hence every piece minimum is nonpositive.
      hom.verdict = *hom.condition ? Verdict::Holds : Verdict::Inconclusive;
      take(std::move(hom));
      if (global) c.notes.push_back("every piece minimum of the residual is nonpositive");
    }
    if (std::holds_alternative<ConeSet>(v)) take(check_coercive_on_cone(phi, v));
    if (!std::holds_alternative<FullSpace>(v)) {
      auto g = check_growth(phi, v, cfg);
      // Only the sufficient direction of the growth test is used here.
      if (g.verdict == Verdict::Fails) g.verdict = Verdict::Inconclusive;
      take(std::move(g));
    }
    take(certify_polyhedral(phi, v, cfg.norm));
  }
  take(estimate_tau(phi, v, cfg));

  c.condition = sufficient;
  c.verdict = fails ? Verdict::Fails : sufficient ? Verdict::Holds : Verdict::Inconclusive;
  if (fails && sufficient) throw std::logic_error("system certificate parts contradict each other");
  return c;
}

}  // namespace pwaeb::certify
