#include <cctype>
#include <optional>
#include <set>

#include "teamcheck/error.hpp"
#include "teamcheck/formula.hpp"

namespace tc {

namespace {

enum class Tok { kIdent, kLParen, kRParen, kComma, kSemi, kAnd, kOr, kBang, kEq, kNeq, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok{Tok::kEnd, {}, line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_' || text[j] == '\''))
        ++j;
      tok.kind = Tok::kIdent;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    std::size_t len = 1;
    switch (c) {
      case '(': tok.kind = Tok::kLParen; break;
      case ')': tok.kind = Tok::kRParen; break;
      case ',': tok.kind = Tok::kComma; break;
      case ';': tok.kind = Tok::kSemi; break;
      case '&': tok.kind = Tok::kAnd; break;
      case '|': tok.kind = Tok::kOr; break;
      case '=': tok.kind = Tok::kEq; break;
      case '!':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          tok.kind = Tok::kNeq;
          len = 2;
        } else {
          tok.kind = Tok::kBang;
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    tok.text = std::string(text.substr(i, len));
    advance(len);
    out.push_back(std::move(tok));
  }
  out.push_back({Tok::kEnd, "end of input", line, col});
  return out;
}

const std::set<std::string, std::less<>> kKeywords = {"exists", "forall", "dep", "inc", "indep"};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Vocabulary* vocab)
      : tokens_(std::move(tokens)), vocab_(vocab) {}

  Formula parse() {
    Formula f = disjunction();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().line, peek().column);
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + ", got '" + peek().text + "'");
    return next();
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::kOr)) f = disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::kAnd)) f = conj(f, unary());
    return f;
  }

  std::string variable_name() {
    const auto& tok = expect(Tok::kIdent, "a variable");
    if (kKeywords.contains(tok.text))
      throw ParseError("keyword '" + tok.text + "' used as a variable", tok.line, tok.column);
    if (vocab_ && (vocab_->has_constant(tok.text) || vocab_->has_relation(tok.text)))
      throw ParseError("'" + tok.text + "' is a vocabulary symbol, not a variable", tok.line,
                       tok.column);
    return tok.text;
  }

  Term term() {
    const auto& tok = expect(Tok::kIdent, "a term");
    if (kKeywords.contains(tok.text))
      throw ParseError("keyword '" + tok.text + "' used as a term", tok.line, tok.column);
    if (vocab_ && vocab_->has_constant(tok.text)) return Term::constant(tok.text);
    if (vocab_ && vocab_->has_relation(tok.text))
      throw ParseError("relation '" + tok.text + "' used as a term", tok.line, tok.column);
    return Term::var(tok.text);
  }

  // Possibly empty term list, stopping before `)` or `;`.
  Terms term_list() {
    Terms out;
    if (peek().kind == Tok::kRParen || peek().kind == Tok::kSemi) return out;
    out.push_back(term());
    while (accept(Tok::kComma)) out.push_back(term());
    return out;
  }

  Terms nonempty_term_list(const char* where) {
    auto t = term_list();
    if (t.empty()) fail(std::string("expected at least one term in ") + where);
    return t;
  }

  Formula relation_atom(bool negated) {
    const auto& name = expect(Tok::kIdent, "a relation name");
    std::size_t line = name.line, col = name.column;
    std::string rel_name = name.text;
    if (kKeywords.contains(rel_name)) fail("keyword used as a relation");
    expect(Tok::kLParen, "'('");
    Terms args = nonempty_term_list("relation arguments");
    expect(Tok::kRParen, "')'");
    if (vocab_) {
      auto arity = vocab_->arity(rel_name);
      if (!arity) throw ParseError("unknown relation '" + rel_name + "'", line, col);
      if (*arity != args.size())
        throw ParseError("relation '" + rel_name + "' has arity " + std::to_string(*arity) +
                             ", used with " + std::to_string(args.size()) + " arguments",
                         line, col);
    }
    return negated ? neg_rel(rel_name, std::move(args)) : rel(rel_name, std::move(args));
  }

  Formula unary() {
    const Token& tok = peek();
    if (tok.kind == Tok::kLParen) {
      next();
      Formula f = disjunction();
      expect(Tok::kRParen, "')'");
      return f;
    }
    if (tok.kind == Tok::kBang) {
      next();
      if (peek().kind != Tok::kIdent || peek(1).kind != Tok::kLParen)
        fail("'!' may only precede a relation atom");
      return relation_atom(true);
    }
    if (tok.kind != Tok::kIdent) fail("expected a formula, got '" + tok.text + "'");
    if (tok.text == "exists" || tok.text == "forall") {
      bool is_exists = tok.text == "exists";
      next();
      std::string var = variable_name();
      Formula body = unary();
      return is_exists ? exists(var, body) : forall(var, body);
    }
    if (tok.text == "dep" && peek(1).kind == Tok::kLParen) {
      next();
      next();
      Terms determining = term_list();
      expect(Tok::kSemi, "';' in dep(...)");
      Terms dependent = nonempty_term_list("dep(...)");
      expect(Tok::kRParen, "')'");
      return dep(std::move(determining), std::move(dependent));
    }
    if (tok.text == "inc" && peek(1).kind == Tok::kLParen) {
      std::size_t line = tok.line, col = tok.column;
      next();
      next();
      Terms included = nonempty_term_list("inc(...)");
      expect(Tok::kSemi, "';' in inc(...)");
      Terms container = nonempty_term_list("inc(...)");
      expect(Tok::kRParen, "')'");
      if (included.size() != container.size())
        throw ParseError("inclusion atom needs tuples of equal length", line, col);
      return inc(std::move(included), std::move(container));
    }
    if (tok.text == "indep" && peek(1).kind == Tok::kLParen) {
      next();
      next();
      Terms condition = term_list();
      expect(Tok::kSemi, "';' in indep(...)");
      Terms left = nonempty_term_list("indep(...)");
      expect(Tok::kSemi, "';' in indep(...)");
      Terms right = nonempty_term_list("indep(...)");
      expect(Tok::kRParen, "')'");
      return indep(std::move(condition), std::move(left), std::move(right));
    }
    if (peek(1).kind == Tok::kLParen) return relation_atom(false);
    Term a = term();
    if (accept(Tok::kEq)) return eq(std::move(a), term());
    if (accept(Tok::kNeq)) return neq(std::move(a), term());
    fail("expected '=' or '!=' after term");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Vocabulary* vocab_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Vocabulary* vocabulary) {
  return Parser(tokenize(text), vocabulary).parse();
}

}  // namespace tc
