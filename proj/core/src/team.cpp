#include "teamcheck/team.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

#include "teamcheck/error.hpp"

namespace tc {

Assignment::Assignment(std::vector<Binding> bindings)
    : bindings_(std::move(bindings)) {
  std::sort(bindings_.begin(), bindings_.end());
  for (std::size_t i = 1; i < bindings_.size(); ++i)
    if (bindings_[i].first == bindings_[i - 1].first)
      throw InputError("variable " + bindings_[i].first + " bound twice");
}

std::vector<std::string> Assignment::variables() const {
  std::vector<std::string> out;
  out.reserve(bindings_.size());
  for (const auto& b : bindings_) out.push_back(b.first);
  return out;
}

std::optional<Element> Assignment::get(std::string_view var) const {
  auto it = std::lower_bound(
      bindings_.begin(), bindings_.end(), var,
      [](const Binding& b, std::string_view v) { return b.first < v; });
  if (it == bindings_.end() || it->first != var) return std::nullopt;
  return it->second;
}

Element Assignment::at(std::string_view var) const {
  auto v = get(var);
  if (!v) throw InputError("variable " + std::string(var) + " is unbound");
  return *v;
}

Assignment Assignment::with(const std::string& var, Element value) const {
  auto bindings = bindings_;
  auto it = std::lower_bound(
      bindings.begin(), bindings.end(), var,
      [](const Binding& b, const std::string& v) { return b.first < v; });
  if (it != bindings.end() && it->first == var)
    it->second = value;
  else
    bindings.insert(it, {var, value});
  Assignment out;
  out.bindings_ = std::move(bindings);
  return out;
}

Assignment Assignment::restricted(const VarSet& vars) const {
  Assignment out;
  for (const auto& b : bindings_)
    if (vars.contains(b.first)) out.bindings_.push_back(b);
  return out;
}

namespace {

void canonicalise(std::vector<std::string>& domain, std::vector<Tuple>& rows) {
  std::vector<std::size_t> order(domain.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return domain[a] < domain[b]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (domain[order[i]] == domain[order[i - 1]])
      throw InputError("duplicate variable " + domain[order[i]] + " in team domain");
  std::vector<std::string> sorted_domain;
  for (auto i : order) sorted_domain.push_back(domain[i]);
  for (auto& row : rows) {
    if (row.size() != domain.size())
      throw InputError("team row does not match the domain width");
    Tuple permuted;
    permuted.reserve(row.size());
    for (auto i : order) permuted.push_back(row[i]);
    row = std::move(permuted);
  }
  domain = std::move(sorted_domain);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

}  // namespace

Team::Team(std::vector<std::string> domain) : domain_(std::move(domain)) {
  canonicalise(domain_, rows_);
}

Team::Team(std::vector<std::string> domain, std::vector<Tuple> rows)
    : domain_(std::move(domain)), rows_(std::move(rows)) {
  canonicalise(domain_, rows_);
}

Team Team::from_assignments(std::vector<std::string> domain,
                            const std::vector<Assignment>& rows) {
  std::sort(domain.begin(), domain.end());
  std::vector<Tuple> tuples;
  tuples.reserve(rows.size());
  for (const auto& s : rows) {
    if (s.variables() != domain)
      throw InputError("assignment domain differs from the team domain");
    Tuple t;
    for (const auto& b : s.bindings()) t.push_back(b.second);
    tuples.push_back(std::move(t));
  }
  return Team(std::move(domain), std::move(tuples));
}

Team Team::singleton_empty() { return Team({}, {Tuple{}}); }

std::optional<std::size_t> Team::column(std::string_view var) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), var);
  if (it == domain_.end() || *it != var) return std::nullopt;
  return static_cast<std::size_t>(it - domain_.begin());
}

Assignment Team::assignment(std::size_t row) const {
  std::vector<Assignment::Binding> b;
  for (std::size_t i = 0; i < domain_.size(); ++i)
    b.emplace_back(domain_[i], rows_.at(row)[i]);
  return Assignment(std::move(b));
}

std::vector<Assignment> Team::assignments() const {
  std::vector<Assignment> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) out.push_back(assignment(i));
  return out;
}

bool Team::contains(const Assignment& s) const {
  if (s.variables() != domain_) return false;
  Tuple t;
  for (const auto& b : s.bindings()) t.push_back(b.second);
  return std::binary_search(rows_.begin(), rows_.end(), t);
}

bool Team::is_subteam_of(const Team& other) const {
  return domain_ == other.domain_ &&
         std::includes(other.rows_.begin(), other.rows_.end(), rows_.begin(),
                       rows_.end());
}

Team Team::united(const Team& other) const {
  if (domain_ != other.domain_)
    throw InputError("cannot unite teams over different domains");
  std::vector<Tuple> rows;
  std::set_union(rows_.begin(), rows_.end(), other.rows_.begin(),
                 other.rows_.end(), std::back_inserter(rows));
  Team out(domain_);
  out.rows_ = std::move(rows);
  return out;
}

namespace {

void check_rows_in_domain(const Structure& structure, const Team& team) {
  for (const auto& row : team.rows())
    for (Element e : row)
      if (e >= structure.domain_size())
        throw InputError("team value " + std::to_string(e) +
                         " lies outside the structure's domain");
}

// Column layout for adding/overwriting `var`.
std::pair<std::vector<std::string>, std::optional<std::size_t>> extended_domain(
    const Team& team, const std::string& var) {
  auto existing = team.column(var);
  auto domain = team.domain();
  if (!existing) domain.push_back(var);
  return {domain, existing};
}

}  // namespace

Team supplement(const Structure& structure, const Team& team,
                const std::string& var, const SupplementingFunction& f) {
  check_rows_in_domain(structure, team);
  auto [domain, existing] = extended_domain(team, var);
  std::vector<Tuple> rows;
  for (std::size_t i = 0; i < team.size(); ++i) {
    auto it = f.find(team.assignment(i));
    if (it == f.end())
      throw InputError("supplementing function is undefined on a team row");
    if (it->second.empty())
      throw InputError("supplementing function maps a row to the empty set");
    for (Element a : it->second) {
      if (a >= structure.domain_size())
        throw InputError("supplementing value outside the domain");
      Tuple row = team.rows()[i];
      if (existing)
        row[*existing] = a;
      else
        row.push_back(a);
      rows.push_back(std::move(row));
    }
  }
  return Team(std::move(domain), std::move(rows));
}

Team duplicate(const Structure& structure, const Team& team,
               const std::string& var) {
  check_rows_in_domain(structure, team);
  auto [domain, existing] = extended_domain(team, var);
  std::vector<Tuple> rows;
  rows.reserve(team.size() * structure.domain_size());
  for (const auto& base : team.rows()) {
    for (Element a = 0; a < structure.domain_size(); ++a) {
      Tuple row = base;
      if (existing)
        row[*existing] = a;
      else
        row.push_back(a);
      rows.push_back(std::move(row));
    }
  }
  return Team(std::move(domain), std::move(rows));
}

Team restrict_to(const Team& team, const VarSet& vars) {
  std::vector<std::size_t> cols;
  std::vector<std::string> domain;
  for (const auto& v : vars) {
    auto c = team.column(v);
    if (!c) throw InputError("cannot restrict to " + v + ": not in the team domain");
    cols.push_back(*c);
    domain.push_back(v);
  }
  std::vector<Tuple> rows;
  rows.reserve(team.size());
  for (const auto& row : team.rows()) {
    Tuple t;
    for (auto c : cols) t.push_back(row[c]);
    rows.push_back(std::move(t));
  }
  return Team(std::move(domain), std::move(rows));
}

TupleSet rel(const Team& team, const std::vector<std::string>& order) {
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != team.domain())
    throw InputError("column order must be a permutation of the team domain");
  std::vector<std::size_t> cols;
  for (const auto& v : order) cols.push_back(*team.column(v));
  TupleSet out;
  for (const auto& row : team.rows()) {
    Tuple t;
    for (auto c : cols) t.push_back(row[c]);
    out.insert(std::move(t));
  }
  return out;
}

std::uint64_t assignment_count(std::size_t domain_size, std::size_t var_count) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < var_count; ++i) {
    if (domain_size != 0 &&
        count > std::numeric_limits<std::uint64_t>::max() / domain_size)
      throw InputError("assignment space does not fit in 64 bits");
    count *= domain_size;
  }
  return count;
}

Tuple assignment_tuple(std::size_t domain_size, std::size_t var_count,
                       std::uint64_t index) {
  Tuple t(var_count);
  for (std::size_t i = var_count; i-- > 0;) {
    t[i] = static_cast<Element>(index % domain_size);
    index /= domain_size;
  }
  return t;
}

AssignmentRange::AssignmentRange(std::size_t domain_size, const VarSet& vars)
    : domain_size_(domain_size),
      vars_(vars.begin(), vars.end()),
      count_(assignment_count(domain_size, vars.size())) {}

AssignmentRange::iterator::iterator(const AssignmentRange* range,
                                    std::uint64_t index)
    : range_(range), index_(index) {
  load();
}

void AssignmentRange::iterator::load() {
  if (!range_ || index_ >= range_->count_) return;
  auto t = assignment_tuple(range_->domain_size_, range_->vars_.size(), index_);
  std::vector<Assignment::Binding> b;
  for (std::size_t i = 0; i < t.size(); ++i) b.emplace_back(range_->vars_[i], t[i]);
  current_ = Assignment(std::move(b));
}

AssignmentRange::iterator& AssignmentRange::iterator::operator++() {
  ++index_;
  load();
  return *this;
}

AssignmentRange all_assignments(const Structure& structure, const VarSet& vars) {
  return AssignmentRange(structure.domain_size(), vars);
}

Team parse_team(std::string_view text, const Structure& structure,
                const VarSet& default_domain) {
  std::optional<std::vector<std::string>> domain;
  std::vector<Assignment> rows;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string word;
    std::vector<std::string> ws;
    while (words >> word) ws.push_back(word);
    if (ws.empty()) continue;
    if (ws[0] == "vars") {
      if (domain) throw ParseError("duplicate 'vars' header", line_no, 1);
      if (!rows.empty()) throw ParseError("'vars' must precede the rows", line_no, 1);
      domain = std::vector<std::string>(ws.begin() + 1, ws.end());
      std::sort(domain->begin(), domain->end());
      continue;
    }
    std::vector<Assignment::Binding> bindings;
    // `{}` is the empty assignment, the only row a team over no variables has.
    if (ws.size() == 1 && ws[0] == "{}") ws.clear();
    for (const auto& w : ws) {
      auto eq = w.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == w.size())
        throw ParseError("expected var=value, got '" + w + "'", line_no, 1);
      auto e = structure.find_element(w.substr(eq + 1));
      if (!e) throw ParseError("unknown element '" + w.substr(eq + 1) + "'", line_no, 1);
      bindings.emplace_back(w.substr(0, eq), *e);
    }
    Assignment s(std::move(bindings));
    if (!domain) domain = s.variables();
    if (s.variables() != *domain)
      throw ParseError("row does not bind exactly the team's variables", line_no, 1);
    rows.push_back(std::move(s));
  }
  if (!domain) domain = std::vector<std::string>(default_domain.begin(), default_domain.end());
  return Team::from_assignments(*domain, rows);
}

std::string render_team(const Team& team, const Structure& structure) {
  std::ostringstream out;
  out << "vars";
  for (const auto& v : team.domain()) out << ' ' << v;
  out << "\n";
  for (const auto& row : team.rows()) {
    if (row.empty()) out << "{}";
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ' ';
      out << team.domain()[i] << '=' << structure.label(row[i]);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace tc
