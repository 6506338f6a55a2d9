#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tc {

// Domain elements are dense ids 0..n-1.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;
using TupleSet = std::set<Tuple>;

struct RelationSymbol {
  std::string name;
  std::size_t arity = 1;

  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<RelationSymbol> relations,
             std::vector<std::string> constants);

  const std::vector<RelationSymbol>& relations() const { return relations_; }
  const std::vector<std::string>& constants() const { return constants_; }

  std::optional<std::size_t> arity(std::string_view relation) const;
  bool has_relation(std::string_view name) const;
  bool has_constant(std::string_view name) const;

  Vocabulary with_relation(RelationSymbol symbol) const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<RelationSymbol> relations_;
  std::vector<std::string> constants_;
};

// A finite relational structure. Immutable once constructed; the
// constructor enforces that every tuple has the declared arity and lies
// inside the domain, and that every constant is interpreted.
class Structure {
 public:
  using Relations = std::map<std::string, TupleSet, std::less<>>;
  using Constants = std::map<std::string, Element, std::less<>>;

  Structure(Vocabulary vocabulary, std::size_t domain_size,
            Relations relations = {}, Constants constants = {},
            std::vector<std::string> labels = {});

  const Vocabulary& vocabulary() const { return vocabulary_; }
  std::size_t domain_size() const { return domain_size_; }

  const TupleSet& relation(std::string_view name) const;
  bool holds(std::string_view name, std::span<const Element> tuple) const;
  Element constant(std::string_view name) const;
  const Relations& relations() const { return relations_; }
  const Constants& constants() const { return constants_; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  // The element's label, or its decimal id when the structure is unlabelled.
  std::string label(Element e) const;
  // Resolves a label or a decimal id.
  std::optional<Element> find_element(std::string_view token) const;

  // Copy of this structure with one extra relation symbol interpreted.
  Structure with_relation(RelationSymbol symbol, TupleSet tuples) const;

  friend bool operator==(const Structure&, const Structure&) = default;

 private:
  Vocabulary vocabulary_;
  std::size_t domain_size_;
  Relations relations_;
  Constants constants_;
  std::vector<std::string> labels_;
};

// Line-oriented text format:
//   domain <n>
//   labels <l0> <l1> ... <l(n-1)>        (optional)
//   rel <name>/<arity> : (a,b) (c,d) ...
//   const <name> = <element>
// Elements are ids or labels; '#' starts a comment.
Structure parse_structure(std::string_view text);
std::string render_structure(const Structure& structure);

}  // namespace tc
