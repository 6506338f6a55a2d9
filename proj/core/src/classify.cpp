#include "teamcheck/classify.hpp"

namespace tc {

std::string_view fragment_name(Fragment fragment) {
  switch (fragment) {
    case Fragment::kFirstOrder: return "FO";
    case Fragment::kDependence: return "FO(dep)";
    case Fragment::kInclusion: return "FO(inc)";
    case Fragment::kIndependence: return "FO(indep)";
    case Fragment::kMixed: return "mixed";
  }
  return "?";
}

std::string PrefixClass::name() const {
  switch (lead) {
    case Lead::kNone: return "Sigma_0/Pi_0";
    case Lead::kExists: return "Sigma_" + std::to_string(blocks);
    case Lead::kForall: return "Pi_" + std::to_string(blocks);
  }
  return "?";
}

namespace {

void scan_atoms(const Formula& f, FragmentReport& report) {
  switch (f.op()) {
    case Op::kDep: report.has_dep = true; return;
    case Op::kInc: report.has_inc = true; return;
    case Op::kIndep: report.has_indep = true; return;
    case Op::kAnd:
    case Op::kOr:
      scan_atoms(f.left(), report);
      scan_atoms(f.right(), report);
      return;
    case Op::kExists:
    case Op::kForall:
      scan_atoms(f.body(), report);
      return;
    default:
      return;
  }
}

bool quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  if (f.is_connective()) return quantifier_free(f.left()) && quantifier_free(f.right());
  return true;
}

std::optional<PrefixClass> prefix_of(const Formula& formula) {
  PrefixClass prefix;
  const Formula* f = &formula;
  std::optional<Op> last;
  while (f->is_quantifier()) {
    if (!last) prefix.lead = f->op() == Op::kExists ? PrefixClass::Lead::kExists
                                                    : PrefixClass::Lead::kForall;
    if (f->op() != last) ++prefix.blocks;
    last = f->op();
    f = &f->body();
  }
  if (!quantifier_free(*f)) return std::nullopt;
  return prefix;
}

}  // namespace

FragmentReport classify(const Formula& formula) {
  FragmentReport report;
  scan_atoms(formula, report);
  int kinds = int(report.has_dep) + int(report.has_inc) + int(report.has_indep);
  if (kinds == 0)
    report.fragment = Fragment::kFirstOrder;
  else if (kinds > 1)
    report.fragment = Fragment::kMixed;
  else if (report.has_dep)
    report.fragment = Fragment::kDependence;
  else if (report.has_inc)
    report.fragment = Fragment::kInclusion;
  else
    report.fragment = Fragment::kIndependence;
  report.prefix = prefix_of(formula);
  report.free_vars = free_vars(formula);
  return report;
}

bool is_first_order(const Formula& formula) {
  return classify(formula).fragment == Fragment::kFirstOrder;
}

bool is_downward_closed(const Formula& formula) {
  auto r = classify(formula);
  return !r.has_inc && !r.has_indep;
}

bool is_inclusion_fragment(const Formula& formula) {
  auto r = classify(formula);
  return !r.has_dep && !r.has_indep;
}

}  // namespace tc
