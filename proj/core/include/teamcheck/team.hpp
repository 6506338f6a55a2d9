#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "teamcheck/structure.hpp"

namespace tc {

using VarSet = std::set<std::string, std::less<>>;

// A finite map from variables to elements, kept sorted by variable name.
class Assignment {
 public:
  using Binding = std::pair<std::string, Element>;

  Assignment() = default;
  explicit Assignment(std::vector<Binding> bindings);

  const std::vector<Binding>& bindings() const { return bindings_; }
  std::vector<std::string> variables() const;
  std::size_t size() const { return bindings_.size(); }

  std::optional<Element> get(std::string_view var) const;
  Element at(std::string_view var) const;

  // s^x_a: rebinds or adds x.
  Assignment with(const std::string& var, Element value) const;
  Assignment restricted(const VarSet& vars) const;

  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::vector<Binding> bindings_;
};

// A set of assignments over a shared variable domain. The domain is kept
// sorted and rows store values column-wise in domain order; rows are
// sorted and duplicate-free, so equality is row-set equality.
class Team {
 public:
  explicit Team(std::vector<std::string> domain = {});
  // `rows` are aligned with `domain` as given; both are canonicalised.
  Team(std::vector<std::string> domain, std::vector<Tuple> rows);

  static Team from_assignments(std::vector<std::string> domain,
                               const std::vector<Assignment>& rows);
  // The team {∅} over the empty domain.
  static Team singleton_empty();

  const std::vector<std::string>& domain() const { return domain_; }
  const std::vector<Tuple>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  std::optional<std::size_t> column(std::string_view var) const;
  Assignment assignment(std::size_t row) const;
  std::vector<Assignment> assignments() const;
  bool contains(const Assignment& s) const;

  bool is_subteam_of(const Team& other) const;
  Team united(const Team& other) const;

  friend bool operator==(const Team&, const Team&) = default;

 private:
  std::vector<std::string> domain_;
  std::vector<Tuple> rows_;
};

// T^x_A: every row extended (or overwritten) with every element for x.
Team duplicate(const Structure& structure, const Team& team,
               const std::string& var);

// T^x_f. `f` must be defined on every row and map to nonempty sets.
using SupplementingFunction = std::map<Assignment, std::set<Element>>;
Team supplement(const Structure& structure, const Team& team,
                const std::string& var, const SupplementingFunction& f);

// T restricted to `vars`, which must be a subset of the domain.
Team restrict_to(const Team& team, const VarSet& vars);

// rel(T) read off in the given column order (a permutation of the domain).
TupleSet rel(const Team& team, const std::vector<std::string>& order);

// Number of assignments over `var_count` variables, n^var_count.
// Throws InputError when the count does not fit in 64 bits.
std::uint64_t assignment_count(std::size_t domain_size, std::size_t var_count);

// The index-th assignment in enumeration order: variables sorted by name,
// the first variable most significant, element ids ascending.
Tuple assignment_tuple(std::size_t domain_size, std::size_t var_count,
                       std::uint64_t index);

// All n^|vars| assignments, each exactly once, in the order above.
class AssignmentRange {
 public:
  AssignmentRange(std::size_t domain_size, const VarSet& vars);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Assignment;
    using difference_type = std::ptrdiff_t;
    using pointer = const Assignment*;
    using reference = const Assignment&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.index_ == b.index_;
    }

   private:
    friend class AssignmentRange;
    iterator(const AssignmentRange* range, std::uint64_t index);
    void load();

    const AssignmentRange* range_ = nullptr;
    std::uint64_t index_ = 0;
    Assignment current_;
  };

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, count_); }
  std::uint64_t size() const { return count_; }

 private:
  std::size_t domain_size_;
  std::vector<std::string> vars_;
  std::uint64_t count_;
};

AssignmentRange all_assignments(const Structure& structure, const VarSet& vars);

// Team text format: optional header `vars x y ...`, then one assignment per
// line as `x=a y=b` with element ids or labels. Without a header the domain
// is taken from the first row, or `default_domain` when there are no rows.
Team parse_team(std::string_view text, const Structure& structure,
                const VarSet& default_domain = {});
std::string render_team(const Team& team, const Structure& structure);

}  // namespace tc
