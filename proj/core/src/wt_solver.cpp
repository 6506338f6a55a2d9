#include "teamcheck/wt_solver.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <thread>

#include "teamcheck/classify.hpp"
#include "teamcheck/error.hpp"

namespace tc {

namespace {

using Check = std::function<bool(std::span<const Tuple>)>;

// Next k-subset of {0..m-1} in colex order; c is strictly increasing.
bool next_colex(std::vector<std::size_t>& c, std::size_t m) {
  const std::size_t k = c.size();
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t limit = j + 1 < k ? c[j + 1] : m;
    if (c[j] + 1 < limit) {
      ++c[j];
      for (std::size_t i = 0; i < j; ++i) c[i] = i;
      return true;
    }
  }
  return false;
}

std::vector<Tuple> select(const std::vector<Tuple>& pool, const std::vector<std::size_t>& idx) {
  std::vector<Tuple> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(pool[i]);
  return out;
}

// First k-subset of `pool` (colex) accepted by a check. `make_check` builds
// one checker per worker.
std::optional<std::vector<Tuple>> first_subset(const std::vector<Tuple>& pool, std::size_t k,
                                               unsigned jobs,
                                               const std::function<Check()>& make_check,
                                               std::uint64_t& examined) {
  if (k > pool.size()) return std::nullopt;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;

  if (jobs <= 1) {
    auto check = make_check();
    do {
      ++examined;
      auto rows = select(pool, c);
      if (check(rows)) return rows;
    } while (next_colex(c, pool.size()));
    return std::nullopt;
  }

  std::vector<Check> checks;
  for (unsigned j = 0; j < jobs; ++j) checks.push_back(make_check());
  const std::size_t batch = 64 * std::size_t{jobs};
  bool more = true;
  while (more) {
    std::vector<std::vector<std::size_t>> work;
    while (more && work.size() < batch) {
      work.push_back(c);
      more = next_colex(c, pool.size());
    }
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) {
      threads.emplace_back([&, j] {
        for (std::size_t i = j; i < work.size(); i += jobs) {
          if (i > best.load()) return;
          if (checks[j](select(pool, work[i]))) {
            auto cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return;
          }
        }
      });
    }
    for (auto& t : threads) t.join();
    if (best.load() != std::numeric_limits<std::size_t>::max()) {
      examined += best.load() + 1;
      return select(pool, work[best.load()]);
    }
    examined += work.size();
  }
  return std::nullopt;
}

// Colex search for downward-closed formulas: the largest position is fixed
// first, and any partial team that fails cuts the branch.
bool closed_search(const std::vector<Tuple>& pool, std::size_t remaining, std::size_t bound,
                   std::vector<std::size_t>& chosen, const Check& check,
                   std::uint64_t& examined) {
  if (remaining == 0) return true;
  for (std::size_t p = remaining - 1; p < bound; ++p) {
    chosen.push_back(p);
    ++examined;
    auto rows = select(pool, chosen);
    if (check(rows) && closed_search(pool, remaining - 1, p, chosen, check, examined)) return true;
    chosen.pop_back();
  }
  return false;
}

std::vector<std::string> sorted_free_vars(const Formula& formula) {
  auto fv = free_vars(formula);
  return {fv.begin(), fv.end()};
}

}  // namespace

WtResult wt_search(const WtInstance& instance, const WtSolveOptions& options) {
  const auto& structure = instance.structure;
  const auto vars = sorted_free_vars(instance.formula);
  const std::size_t n = structure.domain_size();
  const std::size_t k = instance.k;
  WtResult result;

  Evaluator ev(structure, instance.formula, vars, options.eval);
  if (k == 0) {
    result.path = "empty";
    result.witness = Team(vars);
    return result;
  }
  const std::uint64_t total = assignment_count(n, vars.size());
  if (k > total) {
    result.path = "too-large";
    return result;
  }

  auto report = classify(instance.formula);
  if (options.fast_path && report.fragment == Fragment::kFirstOrder) {
    result.path = "first-order";
    std::vector<Tuple> rows;
    for (std::uint64_t i = 0; i < total && rows.size() < k; ++i) {
      auto t = assignment_tuple(n, vars.size(), i);
      if (ev.tarski(t)) rows.push_back(std::move(t));
    }
    result.candidates = 1;
    if (rows.size() == k) result.witness = Team(vars, std::move(rows));
    return result;
  }

  // Rows outside the classical skeleton belong to no satisfying team.
  std::vector<Tuple> pool;
  for (std::uint64_t i = 0; i < total; ++i) {
    auto t = assignment_tuple(n, vars.size(), i);
    if (ev.must(t)) pool.push_back(std::move(t));
  }

  const auto& structure_ref = structure;
  const auto& formula = instance.formula;
  const auto eval_options = options.eval;
  std::optional<std::vector<Tuple>> found;

  if (options.fast_path && !report.has_dep && !report.has_indep) {
    result.path = "inclusion";
    pool = ev.max_subteam(pool);
    found = first_subset(
        pool, k, options.jobs,
        [&]() -> Check {
          auto local = std::make_shared<Evaluator>(structure_ref, formula, vars, eval_options);
          return [local, k](std::span<const Tuple> rows) {
            return local->max_subteam(rows).size() == k;
          };
        },
        result.candidates);
  } else if (options.fast_path && !report.has_inc && !report.has_indep) {
    result.path = "dependence";
    std::erase_if(pool, [&](const Tuple& t) { return !ev.satisfies(std::span<const Tuple>(&t, 1)); });
    std::vector<std::size_t> chosen;
    Check check = [&](std::span<const Tuple> rows) { return ev.satisfies(rows); };
    if (k <= pool.size() && closed_search(pool, k, pool.size(), chosen, check, result.candidates)) {
      std::sort(chosen.begin(), chosen.end());
      found = select(pool, chosen);
    }
  } else {
    result.path = "generic";
    found = first_subset(
        pool, k, options.jobs,
        [&]() -> Check {
          auto local = std::make_shared<Evaluator>(structure_ref, formula, vars, eval_options);
          return [local](std::span<const Tuple> rows) { return local->satisfies(rows); };
        },
        result.candidates);
  }
  if (found) result.witness = Team(vars, std::move(*found));
  return result;
}

std::optional<Team> wt_solve(const WtInstance& instance, const WtSolveOptions& options) {
  return wt_search(instance, options).witness;
}

bool wt_solve_fo(const Structure& structure, const Formula& formula, std::size_t k) {
  if (!is_first_order(formula))
    throw EvalError("the counting path needs a first-order formula");
  if (k == 0) return true;
  const auto vars = sorted_free_vars(formula);
  Evaluator ev(structure, formula, vars);
  const std::uint64_t total = assignment_count(structure.domain_size(), vars.size());
  std::size_t count = 0;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (ev.tarski(assignment_tuple(structure.domain_size(), vars.size(), i)) && ++count >= k)
      return true;
  }
  return false;
}

bool wt_solve_sentence(const Structure& structure, const Formula& sentence, std::size_t k) {
  auto fv = free_vars(sentence);
  if (!fv.empty()) throw InputError("formula has free variable '" + *fv.begin() + "'");
  if (k == 0) return true;
  if (k == 1) return check_sentence(structure, sentence);
  return false;
}

namespace {

void scan_polarity(const Formula& f, const std::string& symbol, bool& pos, bool& neg) {
  switch (f.op()) {
    case Op::kRel:
      if (f.relation() == symbol) pos = true;
      return;
    case Op::kNegRel:
      if (f.relation() == symbol) neg = true;
      return;
    case Op::kAnd:
    case Op::kOr:
      scan_polarity(f.left(), symbol, pos, neg);
      scan_polarity(f.right(), symbol, pos, neg);
      return;
    case Op::kExists:
    case Op::kForall:
      scan_polarity(f.body(), symbol, pos, neg);
      return;
    default:
      return;
  }
}

void validate_interpretation(const Structure& structure, const WdFormula& wd,
                             const TupleSet& interpretation) {
  if (structure.vocabulary().has_relation(wd.symbol))
    throw InputError("relation symbol '" + wd.symbol + "' is already interpreted by the structure");
  for (const auto& t : interpretation) {
    if (t.size() != wd.arity)
      throw InputError("interpretation tuple has arity " + std::to_string(t.size()) +
                       ", expected " + std::to_string(wd.arity));
    for (auto e : t)
      if (e >= structure.domain_size())
        throw InputError("element " + std::to_string(e) + " outside the domain");
  }
  if (!free_vars(wd.formula).empty()) throw InputError("Fagin formula must be a sentence");
  if (!is_first_order(wd.formula)) throw InputError("Fagin formula must be first-order");
}

bool holds_with(const Structure& structure, const WdFormula& wd, const TupleSet& interpretation) {
  auto extended = structure.with_relation({wd.symbol, wd.arity}, interpretation);
  Evaluator ev(extended, wd.formula, {});
  return ev.tarski({});
}

}  // namespace

Polarity polarity_of(const WdFormula& wd) {
  bool pos = false, neg = false;
  scan_polarity(wd.formula, wd.symbol, pos, neg);
  if (pos && neg) return Polarity::kMixed;
  return neg ? Polarity::kNegative : Polarity::kPositive;
}

bool wd_check(const Structure& structure, const WdFormula& wd, const TupleSet& interpretation) {
  validate_interpretation(structure, wd, interpretation);
  if (wd.guard) {
    const auto& allowed = structure.relation(*wd.guard);
    for (const auto& t : interpretation)
      if (!allowed.contains(t)) return false;
  }
  return holds_with(structure, wd, interpretation);
}

std::optional<TupleSet> wd_solve(const Structure& structure, const WdFormula& wd, std::size_t k) {
  validate_interpretation(structure, wd, {});
  std::vector<Tuple> pool;
  if (wd.guard) {
    for (const auto& t : structure.relation(*wd.guard))
      if (t.size() == wd.arity) pool.push_back(t);
  } else {
    const std::uint64_t total = assignment_count(structure.domain_size(), wd.arity);
    for (std::uint64_t i = 0; i < total; ++i)
      pool.push_back(assignment_tuple(structure.domain_size(), wd.arity, i));
  }
  if (k > pool.size()) return std::nullopt;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  do {
    TupleSet s;
    for (auto i : c) s.insert(pool[i]);
    if (holds_with(structure, wd, s)) return s;
  } while (next_colex(c, pool.size()));
  return std::nullopt;
}

WdFormula clique_wd_formula() {
  auto x = Term::var("x"), y = Term::var("y");
  auto body = disj(disj(disj(neg_rel("S", {x}), neg_rel("S", {y})), eq(x, y)), rel("E", {x, y}));
  return WdFormula{forall("x", forall("y", body)), "S", 1, std::nullopt};
}

WdFormula domset_wd_formula() {
  auto x = Term::var("x"), y = Term::var("y");
  auto body = conj(rel("S", {y}), disj(rel("E", {x, y}), eq(x, y)));
  return WdFormula{forall("x", exists("y", body)), "S", 1, std::nullopt};
}

}  // namespace tc
