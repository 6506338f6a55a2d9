#include "teamcheck/evaluator.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "teamcheck/classify.hpp"
#include "teamcheck/error.hpp"

namespace tc {

EvalOptions EvalOptions::reference() {
  EvalOptions o;
  o.flat_first_order = false;
  o.strict_downward = false;
  o.locality = false;
  o.prune = false;
  o.inclusion_fixpoint = false;
  return o;
}

namespace {

// A row packs one element per column, `bits` bits each, column 0 lowest.
using Row = std::uint64_t;
using Rows = std::vector<Row>;

struct TermRef {
  bool constant = false;
  std::uint32_t value = 0;  // column index, or the element itself
};

struct Node {
  Op op = Op::kEq;
  std::vector<TermRef> a, b, c;
  int relation = -1;
  std::uint32_t left = 0, right = 0;
  std::uint32_t column = 0;
  bool flat = true;       // no team atoms below
  bool downward = true;   // no inc/indep below
  bool inclusion = true;  // no dep/indep below
  bool literal = false;
};

struct Relation {
  std::size_t arity = 0;
  std::vector<char> dense;  // empty when the table would be too large
  const TupleSet* tuples = nullptr;
};

struct MemoKey {
  std::uint32_t node;
  Rows rows;
  bool operator==(const MemoKey&) const = default;
};

struct MemoHash {
  std::size_t operator()(const MemoKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ k.node;
    for (Row r : k.rows) {
      h ^= r + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xbf58476d1ce4e5b9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

Rows sorted_unique(Rows rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

bool contains(const Rows& sorted, Row r) {
  return std::binary_search(sorted.begin(), sorted.end(), r);
}

constexpr std::size_t kMaxSplitRows = 62;
constexpr std::size_t kDenseLimit = std::size_t{1} << 22;

}  // namespace

struct Evaluator::Impl {
  Structure structure;
  Formula formula;
  std::vector<std::string> domain;
  EvalOptions opt;

  std::size_t n = 1;
  unsigned bits = 1;
  Row mask = 1;
  std::size_t width = 0;  // widest layout used anywhere in the formula

  std::vector<Node> nodes;
  std::uint32_t root = 0;
  std::vector<std::size_t> input_index;  // top column -> input position
  std::vector<Relation> relations;
  std::map<std::string, int, std::less<>> relation_ids;

  std::vector<std::unordered_map<Row, bool>> classical_cache;
  std::size_t classical_entries = 0;
  std::unordered_map<MemoKey, bool, MemoHash> memo;
  EvalStats stats;

  Impl(const Structure& s, const Formula& f, std::vector<std::string> dom, EvalOptions o)
      : structure(s), formula(f), domain(std::move(dom)), opt(o) {
    n = structure.domain_size();
    bits = n <= 1 ? 1u : static_cast<unsigned>(std::bit_width(n - 1));
    mask = (Row{1} << bits) - 1;

    std::set<std::string, std::less<>> seen;
    for (const auto& v : domain)
      if (!seen.insert(v).second) throw InputError("duplicate variable '" + v + "' in team domain");
    auto fv = free_vars(formula);
    for (const auto& v : fv)
      if (!seen.contains(v)) throw InputError("free variable '" + v + "' is not in the team domain");

    std::vector<std::string> scope;
    if (opt.locality) {
      scope.assign(fv.begin(), fv.end());
    } else {
      scope = domain;
    }
    for (const auto& v : scope)
      input_index.push_back(static_cast<std::size_t>(
          std::find(domain.begin(), domain.end(), v) - domain.begin()));
    width = scope.size();
    root = compile(formula, scope);
    if (width * bits > 64)
      throw EvalError("formula needs " + std::to_string(width) + " columns of " +
                      std::to_string(bits) + " bits, more than a packed row holds");
    classical_cache.resize(nodes.size());
  }

  // --- compilation -------------------------------------------------------

  TermRef term(const Term& t, const std::vector<std::string>& scope) {
    if (t.is_variable()) {
      auto it = std::find(scope.begin(), scope.end(), t.name);
      if (it == scope.end())
        throw InputError("free variable '" + t.name + "' is not in the team domain");
      return {false, static_cast<std::uint32_t>(it - scope.begin())};
    }
    if (!structure.vocabulary().has_constant(t.name))
      throw InputError("unknown constant '" + t.name + "'");
    return {true, structure.constant(t.name)};
  }

  std::vector<TermRef> terms(const Terms& ts, const std::vector<std::string>& scope,
                             bool packed) {
    std::vector<TermRef> out;
    for (const auto& t : ts) out.push_back(term(t, scope));
    if (packed && out.size() * bits > 64)
      throw EvalError("tuple of " + std::to_string(out.size()) + " terms is too wide");
    return out;
  }

  int relation_id(const std::string& name, std::size_t arity) {
    auto declared = structure.vocabulary().arity(name);
    if (!declared) throw InputError("unknown relation '" + name + "'");
    if (*declared != arity)
      throw InputError("relation '" + name + "' has arity " + std::to_string(*declared) +
                       ", used with " + std::to_string(arity) + " arguments");
    if (auto it = relation_ids.find(name); it != relation_ids.end()) return it->second;
    Relation r;
    r.arity = arity;
    r.tuples = &structure.relation(name);
    std::size_t size = 1;
    bool fits = true;
    for (std::size_t i = 0; i < arity && fits; ++i) {
      if (size > kDenseLimit / n) fits = false;
      size *= n;
    }
    if (fits) {
      r.dense.assign(size, 0);
      for (const auto& tuple : *r.tuples) {
        std::size_t idx = 0;
        for (auto e : tuple) idx = idx * n + e;
        r.dense[idx] = 1;
      }
    }
    int id = static_cast<int>(relations.size());
    relations.push_back(std::move(r));
    relation_ids.emplace(name, id);
    return id;
  }

  std::uint32_t compile(const Formula& f, std::vector<std::string>& scope) {
    Node nd;
    nd.op = f.op();
    switch (f.op()) {
      case Op::kEq:
      case Op::kNeq:
        nd.a = terms(f.first(), scope, false);
        nd.literal = true;
        break;
      case Op::kRel:
      case Op::kNegRel:
        nd.a = terms(f.first(), scope, false);
        nd.relation = relation_id(f.relation(), nd.a.size());
        nd.literal = true;
        break;
      case Op::kDep:
        nd.a = terms(f.first(), scope, true);
        nd.b = terms(f.second(), scope, true);
        nd.flat = false;
        nd.inclusion = false;
        break;
      case Op::kInc:
        nd.a = terms(f.first(), scope, true);
        nd.b = terms(f.second(), scope, true);
        nd.flat = false;
        nd.downward = false;
        break;
      case Op::kIndep:
        nd.a = terms(f.first(), scope, true);
        nd.b = terms(f.second(), scope, true);
        nd.c = terms(f.third(), scope, true);
        nd.flat = nd.downward = nd.inclusion = false;
        break;
      case Op::kAnd:
      case Op::kOr: {
        nd.left = compile(f.left(), scope);
        nd.right = compile(f.right(), scope);
        const Node& l = nodes[nd.left];
        const Node& r = nodes[nd.right];
        nd.flat = l.flat && r.flat;
        nd.downward = l.downward && r.downward;
        nd.inclusion = l.inclusion && r.inclusion;
        break;
      }
      case Op::kExists:
      case Op::kForall: {
        auto it = std::find(scope.begin(), scope.end(), f.variable());
        if (it != scope.end()) {
          nd.column = static_cast<std::uint32_t>(it - scope.begin());
          nd.left = compile(f.body(), scope);
        } else {
          nd.column = static_cast<std::uint32_t>(scope.size());
          scope.push_back(f.variable());
          width = std::max(width, scope.size());
          nd.left = compile(f.body(), scope);
          scope.pop_back();
        }
        const Node& body = nodes[nd.left];
        nd.flat = body.flat;
        nd.downward = body.downward;
        nd.inclusion = body.inclusion;
        break;
      }
    }
    nodes.push_back(std::move(nd));
    return static_cast<std::uint32_t>(nodes.size() - 1);
  }

  // --- row helpers ---------------------------------------------------------

  Element value(const TermRef& t, Row r) const {
    return t.constant ? t.value : static_cast<Element>((r >> (t.value * bits)) & mask);
  }

  Row key(const std::vector<TermRef>& ts, Row r) const {
    Row k = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) k |= Row{value(ts[i], r)} << (i * bits);
    return k;
  }

  Row set(Row r, std::uint32_t column, Element a) const {
    unsigned shift = column * bits;
    return (r & ~(mask << shift)) | (Row{a} << shift);
  }

  Row clear(Row r, std::uint32_t column) const { return r & ~(mask << (column * bits)); }

  Rows duplicate(const Rows& rows, std::uint32_t column) const {
    Rows out;
    out.reserve(rows.size() * n);
    for (Row r : rows) {
      Row base = clear(r, column);
      for (Element a = 0; a < n; ++a) out.push_back(set(base, column, a));
    }
    return sorted_unique(std::move(out));
  }

  bool holds(const Node& nd, Row r) const {
    const Relation& rel = relations[static_cast<std::size_t>(nd.relation)];
    if (!rel.dense.empty()) {
      std::size_t idx = 0;
      for (const auto& t : nd.a) idx = idx * n + value(t, r);
      return rel.dense[idx] != 0;
    }
    Tuple tuple;
    for (const auto& t : nd.a) tuple.push_back(value(t, r));
    return rel.tuples->contains(tuple);
  }

  Row pack(const Tuple& tuple) const {
    if (tuple.size() != domain.size())
      throw InputError("row has " + std::to_string(tuple.size()) + " values for " +
                       std::to_string(domain.size()) + " variables");
    Row r = 0;
    for (std::size_t i = 0; i < input_index.size(); ++i) {
      Element e = tuple[input_index[i]];
      if (e >= n) throw InputError("element " + std::to_string(e) + " outside the domain");
      r |= Row{e} << (i * bits);
    }
    return r;
  }

  Rows pack_all(std::span<const Tuple> rows) const {
    Rows out;
    out.reserve(rows.size());
    for (const auto& t : rows) out.push_back(pack(t));
    return sorted_unique(std::move(out));
  }

  // --- classical evaluation ---------------------------------------------

  // Tarski truth with team atoms read as true.
  bool classical(std::uint32_t id, Row r) {
    auto& cache = classical_cache[id];
    if (auto it = cache.find(r); it != cache.end()) return it->second;
    const Node& nd = nodes[id];
    bool result = true;
    switch (nd.op) {
      case Op::kEq: result = value(nd.a[0], r) == value(nd.a[1], r); break;
      case Op::kNeq: result = value(nd.a[0], r) != value(nd.a[1], r); break;
      case Op::kRel: result = holds(nd, r); break;
      case Op::kNegRel: result = !holds(nd, r); break;
      case Op::kDep:
      case Op::kInc:
      case Op::kIndep: result = true; break;
      case Op::kAnd: result = classical(nd.left, r) && classical(nd.right, r); break;
      case Op::kOr: result = classical(nd.left, r) || classical(nd.right, r); break;
      case Op::kExists:
        result = false;
        for (Element a = 0; a < n && !result; ++a) result = classical(nd.left, set(r, nd.column, a));
        break;
      case Op::kForall:
        for (Element a = 0; a < n && result; ++a) result = classical(nd.left, set(r, nd.column, a));
        break;
    }
    if (classical_entries < opt.max_cache) {
      cache.emplace(r, result);
      ++classical_entries;
    }
    return result;
  }

  bool all_classical(std::uint32_t id, const Rows& rows) {
    for (Row r : rows)
      if (!classical(id, r)) return false;
    return true;
  }

  bool treated_flat(const Node& nd) const {
    return nd.literal || (nd.flat && opt.flat_first_order);
  }

  // --- team atoms ----------------------------------------------------------

  bool check_dep(const Node& nd, const Rows& rows) const {
    std::unordered_map<Row, Row> seen;
    for (Row r : rows) {
      auto [it, fresh] = seen.emplace(key(nd.a, r), key(nd.b, r));
      if (!fresh && it->second != key(nd.b, r)) return false;
    }
    return true;
  }

  bool check_inc(const Node& nd, const Rows& rows) const {
    std::unordered_set<Row> container;
    for (Row r : rows) container.insert(key(nd.b, r));
    for (Row r : rows)
      if (!container.contains(key(nd.a, r))) return false;
    return true;
  }

  // Within each group of equal conditioning values every combination of an
  // occurring left value with an occurring right value must itself occur.
  bool check_indep(const Node& nd, const Rows& rows) const {
    struct Group {
      std::set<Row> left, right;
      std::set<std::pair<Row, Row>> pairs;
    };
    std::map<Row, Group> groups;
    for (Row r : rows) {
      auto& g = groups[key(nd.a, r)];
      Row l = key(nd.b, r), rt = key(nd.c, r);
      g.left.insert(l);
      g.right.insert(rt);
      g.pairs.emplace(l, rt);
    }
    for (const auto& [c, g] : groups)
      if (g.pairs.size() != g.left.size() * g.right.size()) return false;
    return true;
  }

  // --- team evaluation -----------------------------------------------------

  bool sat(std::uint32_t id, const Rows& rows) {
    if (rows.empty()) return true;
    const Node& nd = nodes[id];
    ++stats.team_checks;
    if (treated_flat(nd)) return all_classical(id, rows);
    if (opt.prune && !all_classical(id, rows)) return false;
    if (opt.inclusion_fixpoint && nd.inclusion) return maximal(id, rows).size() == rows.size();

    switch (nd.op) {
      case Op::kDep: return check_dep(nd, rows);
      case Op::kInc: return check_inc(nd, rows);
      case Op::kIndep: return check_indep(nd, rows);
      case Op::kAnd: return sat(nd.left, rows) && sat(nd.right, rows);
      default: break;
    }

    MemoKey k{id, rows};
    if (auto it = memo.find(k); it != memo.end()) {
      ++stats.memo_hits;
      return it->second;
    }
    bool result = false;
    switch (nd.op) {
      case Op::kOr: result = sat_or(nd, rows); break;
      case Op::kExists: result = sat_exists(nd, rows); break;
      case Op::kForall: result = sat(nd.left, duplicate(rows, nd.column)); break;
      default: break;
    }
    if (memo.size() < opt.max_cache) memo.emplace(std::move(k), result);
    stats.memo_entries = memo.size();
    return result;
  }

  bool sat_single(std::uint32_t id, Row r) { return sat(id, Rows{r}); }

  // Child with a largest satisfying subteam we can compute directly.
  bool has_maximum(const Node& nd) const {
    return treated_flat(nd) || (opt.inclusion_fixpoint && nd.inclusion);
  }

  // Which rows may belong to some satisfying subteam of `rows` for `child`.
  std::vector<char> admissible(std::uint32_t child, const Rows& rows) {
    const Node& nd = nodes[child];
    std::vector<char> ok(rows.size(), 1);
    if (treated_flat(nd)) {
      for (std::size_t i = 0; i < rows.size(); ++i) ok[i] = classical(child, rows[i]);
      return ok;
    }
    if (opt.inclusion_fixpoint && nd.inclusion) {
      Rows m = maximal(child, rows);
      for (std::size_t i = 0; i < rows.size(); ++i) ok[i] = contains(m, rows[i]);
      return ok;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (opt.prune && !classical(child, rows[i]))
        ok[i] = 0;
      else if (opt.strict_downward && nd.downward)
        ok[i] = sat_single(child, rows[i]);
    }
    return ok;
  }

  static Rows merge(const Rows& a, const Rows& b) {
    Rows out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  static Rows pick(const Rows& rows, std::uint64_t bitmask) {
    Rows out;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (bitmask >> i & 1) out.push_back(rows[i]);
    return out;
  }

  // Is there a team T with base ⊆ T ⊆ base ∪ optional satisfying `child`?
  // All rows involved are admissible for the child.
  bool superset(std::uint32_t child, const Rows& base, const Rows& optional) {
    const Node& nd = nodes[child];
    if (treated_flat(nd)) return sat(child, base);
    if (opt.inclusion_fixpoint && nd.inclusion) {
      Rows m = maximal(child, merge(base, optional));
      return std::includes(m.begin(), m.end(), base.begin(), base.end());
    }
    if (opt.strict_downward && nd.downward) return sat(child, base);
    if (optional.size() > kMaxSplitRows) throw EvalError("disjunction split too large to enumerate");
    std::uint64_t total = std::uint64_t{1} << optional.size();
    for (std::uint64_t s = 0; s < total; ++s)
      if (sat(child, merge(base, pick(optional, s)))) return true;
    return false;
  }

  bool sat_or(const Node& nd, const Rows& rows) {
    auto can_l = admissible(nd.left, rows);
    auto can_r = admissible(nd.right, rows);
    Rows only_l, only_r, both;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (can_l[i] && can_r[i])
        both.push_back(rows[i]);
      else if (can_l[i])
        only_l.push_back(rows[i]);
      else if (can_r[i])
        only_r.push_back(rows[i]);
      else
        return false;
    }
    const Node& l = nodes[nd.left];
    const Node& r = nodes[nd.right];
    // A side with a maximum can take every admissible row.
    if (has_maximum(l)) return superset(nd.right, only_r, both);
    if (has_maximum(r)) return superset(nd.left, only_l, both);

    if (opt.strict_downward && l.downward && r.downward) {
      if (!sat(nd.left, only_l) || !sat(nd.right, only_r)) return false;
      return split(nd, both, 0, only_l, only_r);
    }
    if (both.size() > kMaxSplitRows) throw EvalError("disjunction split too large to enumerate");
    std::uint64_t total = std::uint64_t{1} << both.size();
    // Lax covers: the left part takes S ⊆ both, the right part must take
    // the rest of `both` and may also take any of S.
    for (std::uint64_t s = 0; s < total; ++s) {
      if (!sat(nd.left, merge(only_l, pick(both, s)))) continue;
      if (superset(nd.right, merge(only_r, pick(both, ~s)), pick(both, s))) return true;
    }
    return false;
  }

  // Disjoint split of `both` for two downward-closed sides, one row at a
  // time; a side that already fails stays failed when rows are added.
  bool split(const Node& nd, const Rows& both, std::size_t i, const Rows& left,
             const Rows& right) {
    if (i == both.size()) return true;
    Rows one{both[i]};
    Rows l = merge(left, one);
    if (sat(nd.left, l) && split(nd, both, i + 1, l, right)) return true;
    Rows r = merge(right, one);
    return sat(nd.right, r) && split(nd, both, i + 1, left, r);
  }

  bool sat_exists(const Node& nd, const Rows& rows) {
    const std::uint32_t body = nd.left;
    const Node& b = nodes[body];
    const bool flat = treated_flat(b);
    const bool strict = opt.strict_downward && b.downward;

    Rows bases;
    bases.reserve(rows.size());
    for (Row r : rows) bases.push_back(clear(r, nd.column));
    bases = sorted_unique(std::move(bases));

    std::vector<Rows> cand(bases.size());
    for (std::size_t i = 0; i < bases.size(); ++i) {
      for (Element a = 0; a < n; ++a) {
        Row r = set(bases[i], nd.column, a);
        bool ok;
        if (flat)
          ok = classical(body, r);
        else
          ok = (!opt.prune || classical(body, r)) && (!strict || sat_single(body, r));
        if (ok) cand[i].push_back(r);
      }
      if (cand[i].empty()) return false;
    }
    if (flat) return true;

    if (opt.inclusion_fixpoint && b.inclusion) {
      Rows all;
      for (const auto& c : cand) all.insert(all.end(), c.begin(), c.end());
      Rows m = maximal(body, sorted_unique(std::move(all)));
      for (const auto& c : cand) {
        bool any = std::any_of(c.begin(), c.end(), [&](Row r) { return contains(m, r); });
        if (!any) return false;
      }
      return true;
    }

    Rows chosen;
    if (strict) return choose_single(body, cand, 0, chosen);
    std::vector<std::vector<std::uint64_t>> subsets(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) {
      std::uint64_t total = std::uint64_t{1} << cand[i].size();
      for (std::uint64_t s = 1; s < total; ++s) subsets[i].push_back(s);
      std::stable_sort(subsets[i].begin(), subsets[i].end(), [](auto x, auto y) {
        return std::popcount(x) < std::popcount(y);
      });
    }
    return choose_sets(body, cand, subsets, 0, chosen);
  }

  // One value per group; the body is downward closed, so a failing partial
  // team cannot be repaired by adding rows.
  bool choose_single(std::uint32_t body, const std::vector<Rows>& cand, std::size_t i,
                     Rows& chosen) {
    if (i == cand.size()) return true;
    for (Row r : cand[i]) {
      chosen.push_back(r);
      Rows team = sorted_unique(chosen);
      if (sat(body, team) && choose_single(body, cand, i + 1, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

  bool choose_sets(std::uint32_t body, const std::vector<Rows>& cand,
                   const std::vector<std::vector<std::uint64_t>>& subsets, std::size_t i,
                   Rows& chosen) {
    if (i == cand.size()) return sat(body, sorted_unique(chosen));
    for (auto s : subsets[i]) {
      std::size_t mark = chosen.size();
      for (std::size_t j = 0; j < cand[i].size(); ++j)
        if (s >> j & 1) chosen.push_back(cand[i][j]);
      if (choose_sets(body, cand, subsets, i + 1, chosen)) return true;
      chosen.resize(mark);
    }
    return false;
  }

  // --- maximal subteams ----------------------------------------------------

  Rows maximal(std::uint32_t id, Rows rows) {
    if (rows.empty()) return rows;
    const Node& nd = nodes[id];
    if (nd.literal || nd.flat || opt.prune) {
      std::erase_if(rows, [&](Row r) { return !classical(id, r); });
      if (nd.literal || nd.flat || rows.empty()) return rows;
    }
    switch (nd.op) {
      case Op::kInc:
        for (;;) {
          std::unordered_set<Row> container;
          for (Row r : rows) container.insert(key(nd.b, r));
          auto before = rows.size();
          std::erase_if(rows, [&](Row r) { return !container.contains(key(nd.a, r)); });
          if (rows.size() == before) return rows;
        }
      case Op::kAnd:
        for (;;) {
          auto before = rows.size();
          rows = maximal(nd.right, maximal(nd.left, std::move(rows)));
          if (rows.size() == before || rows.empty()) return rows;
        }
      case Op::kOr:
        return merge(maximal(nd.left, rows), maximal(nd.right, rows));
      case Op::kExists: {
        Rows m = maximal(nd.left, duplicate(rows, nd.column));
        std::erase_if(rows, [&](Row r) {
          for (Element a = 0; a < n; ++a)
            if (contains(m, set(r, nd.column, a))) return false;
          return true;
        });
        return rows;
      }
      case Op::kForall:
        for (;;) {
          Rows m = maximal(nd.left, duplicate(rows, nd.column));
          auto before = rows.size();
          std::erase_if(rows, [&](Row r) {
            for (Element a = 0; a < n; ++a)
              if (!contains(m, set(r, nd.column, a))) return true;
            return false;
          });
          if (rows.size() == before || rows.empty()) return rows;
        }
      default:
        throw EvalError("maximal subteams are only defined for literals and inclusion atoms");
    }
  }

  void reset_call() {
    memo.clear();
    stats.memo_entries = 0;
  }
};

Evaluator::Evaluator(const Structure& structure, const Formula& formula,
                     std::vector<std::string> domain, EvalOptions options)
    : impl_(std::make_unique<Impl>(structure, formula, std::move(domain), options)) {}
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;
Evaluator::~Evaluator() = default;

const std::vector<std::string>& Evaluator::domain() const { return impl_->domain; }
const Formula& Evaluator::formula() const { return impl_->formula; }
const EvalStats& Evaluator::stats() const { return impl_->stats; }

bool Evaluator::satisfies(std::span<const Tuple> rows) {
  auto packed = impl_->pack_all(rows);
  impl_->reset_call();
  return impl_->sat(impl_->root, packed);
}

namespace {

// Reorders the rows of `team` into the column order of `domain`.
std::vector<Tuple> aligned_rows(const Team& team, const std::vector<std::string>& domain) {
  if (team.domain() == domain) return team.rows();
  if (team.domain().size() != domain.size())
    throw InputError("team domain does not match the evaluator's domain");
  std::vector<std::size_t> from;
  for (const auto& v : domain) {
    auto col = team.column(v);
    if (!col) throw InputError("team domain does not match the evaluator's domain");
    from.push_back(*col);
  }
  std::vector<Tuple> rows;
  for (const auto& r : team.rows()) {
    Tuple t;
    for (auto c : from) t.push_back(r[c]);
    rows.push_back(std::move(t));
  }
  return rows;
}

}  // namespace

bool Evaluator::satisfies(const Team& team) {
  auto rows = aligned_rows(team, impl_->domain);
  return satisfies(std::span<const Tuple>(rows));
}

std::vector<Tuple> Evaluator::max_subteam(std::span<const Tuple> rows) {
  if (!impl_->nodes[impl_->root].inclusion)
    throw EvalError("maximal subteams are only defined for literals and inclusion atoms");
  impl_->reset_call();
  Rows m = impl_->maximal(impl_->root, impl_->pack_all(rows));
  std::vector<Tuple> out;
  for (const auto& t : rows)
    if (contains(m, impl_->pack(t))) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Evaluator::tarski(const Tuple& row) {
  if (!impl_->nodes[impl_->root].flat)
    throw EvalError("classical evaluation needs a first-order formula");
  return impl_->classical(impl_->root, impl_->pack(row));
}

bool Evaluator::must(const Tuple& row) { return impl_->classical(impl_->root, impl_->pack(row)); }

bool eval(const Structure& structure, const Team& team, const Formula& formula,
          const EvalOptions& options) {
  Evaluator ev(structure, formula, team.domain(), options);
  return ev.satisfies(std::span<const Tuple>(team.rows()));
}

bool eval_fo_tarski(const Structure& structure, const Assignment& assignment,
                    const Formula& formula) {
  if (!is_first_order(formula)) throw EvalError("classical evaluation needs a first-order formula");
  std::vector<std::string> vars;
  Tuple row;
  for (const auto& [v, e] : assignment.bindings()) {
    vars.push_back(v);
    row.push_back(e);
  }
  Evaluator ev(structure, formula, std::move(vars));
  return ev.tarski(row);
}

Team max_subteam(const Structure& structure, const Team& team, const Formula& formula) {
  if (!is_inclusion_fragment(formula))
    throw EvalError("maximal subteams are only defined for literals and inclusion atoms");
  Evaluator ev(structure, formula, team.domain());
  return Team(team.domain(), ev.max_subteam(std::span<const Tuple>(team.rows())));
}

bool eval_inclusion(const Structure& structure, const Team& team, const Formula& formula) {
  return max_subteam(structure, team, formula).size() == team.size();
}

bool check_sentence(const Structure& structure, const Formula& sentence,
                    const EvalOptions& options) {
  auto fv = free_vars(sentence);
  if (!fv.empty()) throw InputError("formula has free variable '" + *fv.begin() + "'");
  auto team = Team::singleton_empty();
  if (is_inclusion_fragment(sentence)) return eval_inclusion(structure, team, sentence);
  return eval(structure, team, sentence, options);
}

}  // namespace tc
