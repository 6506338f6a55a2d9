#include "teamcheck/structure.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "teamcheck/error.hpp"

namespace tc {

Vocabulary::Vocabulary(std::vector<RelationSymbol> relations,
                       std::vector<std::string> constants)
    : relations_(std::move(relations)), constants_(std::move(constants)) {
  std::set<std::string, std::less<>> seen;
  for (const auto& r : relations_) {
    if (r.name.empty()) throw InputError("empty relation name");
    if (r.arity == 0)
      throw InputError("relation " + r.name + " must have positive arity");
    if (!seen.insert(r.name).second)
      throw InputError("duplicate symbol " + r.name);
  }
  for (const auto& c : constants_) {
    if (c.empty()) throw InputError("empty constant name");
    if (!seen.insert(c).second) throw InputError("duplicate symbol " + c);
  }
}

std::optional<std::size_t> Vocabulary::arity(std::string_view relation) const {
  for (const auto& r : relations_)
    if (r.name == relation) return r.arity;
  return std::nullopt;
}

bool Vocabulary::has_relation(std::string_view name) const {
  return arity(name).has_value();
}

bool Vocabulary::has_constant(std::string_view name) const {
  return std::find(constants_.begin(), constants_.end(), name) !=
         constants_.end();
}

Vocabulary Vocabulary::with_relation(RelationSymbol symbol) const {
  auto relations = relations_;
  relations.push_back(std::move(symbol));
  return Vocabulary(std::move(relations), constants_);
}

Structure::Structure(Vocabulary vocabulary, std::size_t domain_size,
                     Relations relations, Constants constants,
                     std::vector<std::string> labels)
    : vocabulary_(std::move(vocabulary)),
      domain_size_(domain_size),
      relations_(std::move(relations)),
      constants_(std::move(constants)),
      labels_(std::move(labels)) {
  if (domain_size_ == 0) throw InputError("structures must be nonempty");
  if (!labels_.empty()) {
    if (labels_.size() != domain_size_)
      throw InputError("expected " + std::to_string(domain_size_) +
                       " labels, got " + std::to_string(labels_.size()));
    std::set<std::string> distinct(labels_.begin(), labels_.end());
    if (distinct.size() != labels_.size())
      throw InputError("element labels must be distinct");
  }
  for (const auto& [name, tuples] : relations_) {
    auto arity = vocabulary_.arity(name);
    if (!arity) throw InputError("relation " + name + " is not declared");
    for (const auto& t : tuples) {
      if (t.size() != *arity)
        throw InputError("tuple of wrong arity in relation " + name);
      for (Element e : t)
        if (e >= domain_size_)
          throw InputError("element " + std::to_string(e) +
                           " outside the domain in relation " + name);
    }
  }
  for (const auto& r : vocabulary_.relations())
    relations_.try_emplace(r.name);
  for (const auto& c : vocabulary_.constants()) {
    auto it = constants_.find(c);
    if (it == constants_.end())
      throw InputError("constant " + c + " is not interpreted");
    if (it->second >= domain_size_)
      throw InputError("constant " + c + " lies outside the domain");
  }
  for (const auto& [name, value] : constants_)
    if (!vocabulary_.has_constant(name))
      throw InputError("constant " + name + " is not declared");
}

const TupleSet& Structure::relation(std::string_view name) const {
  auto it = relations_.find(name);
  if (it == relations_.end())
    throw InputError("unknown relation " + std::string(name));
  return it->second;
}

bool Structure::holds(std::string_view name,
                      std::span<const Element> tuple) const {
  const auto& tuples = relation(name);
  return tuples.contains(Tuple(tuple.begin(), tuple.end()));
}

Element Structure::constant(std::string_view name) const {
  auto it = constants_.find(name);
  if (it == constants_.end())
    throw InputError("unknown constant " + std::string(name));
  return it->second;
}

std::string Structure::label(Element e) const {
  if (e < labels_.size()) return labels_[e];
  return std::to_string(e);
}

std::optional<Element> Structure::find_element(std::string_view token) const {
  if (!labels_.empty()) {
    auto it = std::find(labels_.begin(), labels_.end(), token);
    if (it != labels_.end()) return static_cast<Element>(it - labels_.begin());
  }
  Element value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  if (value >= domain_size_) return std::nullopt;
  return value;
}

Structure Structure::with_relation(RelationSymbol symbol, TupleSet tuples) const {
  auto relations = relations_;
  relations[symbol.name] = std::move(tuples);
  return Structure(vocabulary_.with_relation(std::move(symbol)), domain_size_,
                   std::move(relations), constants_, labels_);
}

namespace {

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

std::vector<std::pair<std::string, std::size_t>> words(std::string_view line) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.emplace_back(std::string(line.substr(start, i - start)), start + 1);
  }
  return out;
}

std::size_t parse_count(const std::string& word, std::size_t line, std::size_t col) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size())
    throw ParseError("expected a number, got '" + word + "'", line, col);
  return value;
}

}  // namespace

Structure parse_structure(std::string_view text) {
  std::optional<std::size_t> domain;
  std::vector<std::string> labels;
  std::vector<RelationSymbol> symbols;
  std::vector<std::string> constant_names;
  // Raw tokens are resolved after the header so that labels may be declared
  // anywhere before use.
  struct PendingTuple { std::string relation; std::vector<std::string> items; std::size_t line, col; };
  struct PendingConst { std::string name; std::string value; std::size_t line, col; };
  std::vector<PendingTuple> tuples;
  std::vector<PendingConst> consts;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = strip_comment(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    auto ws = words(line);
    if (ws.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto& head = ws[0].first;
    if (head == "domain") {
      if (ws.size() != 2) throw ParseError("expected 'domain <n>'", line_no, ws[0].second);
      if (domain) throw ParseError("duplicate domain line", line_no, 1);
      domain = parse_count(ws[1].first, line_no, ws[1].second);
      if (*domain == 0) throw ParseError("domain must be nonempty", line_no, ws[1].second);
    } else if (head == "labels") {
      for (std::size_t i = 1; i < ws.size(); ++i) labels.push_back(ws[i].first);
    } else if (head == "const") {
      if (ws.size() != 4 || ws[2].first != "=")
        throw ParseError("expected 'const <name> = <element>'", line_no, ws[0].second);
      constant_names.push_back(ws[1].first);
      consts.push_back({ws[1].first, ws[3].first, line_no, ws[3].second});
    } else if (head == "rel") {
      if (ws.size() < 3 || ws[2].first != ":")
        throw ParseError("expected 'rel <name>/<arity> : tuples'", line_no, ws[0].second);
      const auto& decl = ws[1].first;
      auto slash = decl.find('/');
      if (slash == std::string::npos || slash == 0)
        throw ParseError("expected <name>/<arity>", line_no, ws[1].second);
      RelationSymbol sym{decl.substr(0, slash),
                         parse_count(decl.substr(slash + 1), line_no, ws[1].second + slash + 1)};
      if (sym.arity == 0) throw ParseError("arity must be positive", line_no, ws[1].second);
      symbols.push_back(sym);
      // Tuples: everything after the colon, as parenthesised groups.
      auto colon = line.find(':');
      std::size_t i = colon + 1;
      while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
        if (line[i] != '(') throw ParseError("expected '('", line_no, i + 1);
        auto close = line.find(')', i);
        if (close == std::string_view::npos) throw ParseError("unterminated tuple", line_no, i + 1);
        PendingTuple pt{sym.name, {}, line_no, i + 1};
        std::string item;
        for (std::size_t j = i + 1; j < close; ++j) {
          char ch = line[j];
          if (ch == ',') { pt.items.push_back(item); item.clear(); }
          else if (!std::isspace(static_cast<unsigned char>(ch))) item.push_back(ch);
        }
        pt.items.push_back(item);
        if (pt.items.size() != sym.arity)
          throw ParseError("tuple arity " + std::to_string(pt.items.size()) + " does not match " +
                               sym.name + "/" + std::to_string(sym.arity),
                           line_no, i + 1);
        tuples.push_back(std::move(pt));
        i = close + 1;
      }
    } else {
      throw ParseError("unknown directive '" + head + "'", line_no, ws[0].second);
    }
    if (end == text.size()) break;
  }
  if (!domain) throw ParseError("missing 'domain <n>' line", line_no, 1);

  Vocabulary vocab(symbols, constant_names);
  // A throwaway structure gives us label resolution with the same rules.
  Structure shell(Vocabulary{}, *domain, {}, {}, labels);
  auto resolve = [&](const std::string& token, std::size_t line, std::size_t col) {
    auto e = shell.find_element(token);
    if (!e) throw ParseError("unknown element '" + token + "'", line, col);
    return *e;
  };
  Structure::Relations relations;
  for (const auto& pt : tuples) {
    Tuple t;
    for (const auto& item : pt.items) t.push_back(resolve(item, pt.line, pt.col));
    relations[pt.relation].insert(std::move(t));
  }
  Structure::Constants constants;
  for (const auto& pc : consts) constants[pc.name] = resolve(pc.value, pc.line, pc.col);
  return Structure(std::move(vocab), *domain, std::move(relations), std::move(constants),
                   std::move(labels));
}

std::string render_structure(const Structure& structure) {
  std::ostringstream out;
  out << "domain " << structure.domain_size() << "\n";
  if (structure.has_labels()) {
    out << "labels";
    for (const auto& l : structure.labels()) out << ' ' << l;
    out << "\n";
  }
  for (const auto& sym : structure.vocabulary().relations()) {
    out << "rel " << sym.name << "/" << sym.arity << " :";
    for (const auto& t : structure.relation(sym.name)) {
      out << " (";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out << ',';
        out << structure.label(t[i]);
      }
      out << ')';
    }
    out << "\n";
  }
  for (const auto& c : structure.vocabulary().constants())
    out << "const " << c << " = " << structure.label(structure.constant(c)) << "\n";
  return out.str();
}

}  // namespace tc
