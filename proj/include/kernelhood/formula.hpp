#ifndef KERNELHOOD_FORMULA_HPP
#define KERNELHOOD_FORMULA_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "kernelhood/error.hpp"

namespace kernelhood {

enum class Rel { Add, Mul };

inline const char* rel_name(Rel r) { return r == Rel::Add ? "Add" : "Mul"; }

// A term is a variable v<i> or a domain constant c<a>. Constants name
// elements of a finite structure; range checking happens at evaluation
// time, not here.
class Term {
public:
  static Term variable(unsigned index) { return Term(true, index); }
  static Term constant(unsigned element) { return Term(false, element); }

  bool is_variable() const { return is_var_; }
  bool is_constant() const { return !is_var_; }
  unsigned index() const { return value_; }
  unsigned element() const { return value_; }

  std::string str() const { return (is_var_ ? "v" : "c") + std::to_string(value_); }

  friend bool operator==(const Term& a, const Term& b) {
    return a.is_var_ == b.is_var_ && a.value_ == b.value_;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
  Term(bool is_var, unsigned value) : is_var_(is_var), value_(value) {}
  bool is_var_;
  unsigned value_;
};

// Formulas over two ternary relations with NOR as the only connective and
// the "there are none such that" quantifier N as the only quantifier.
// Immutable trees; copies share structure but no sharing is observable.
class Formula {
public:
  enum class Kind { Atomic, Nor, None };

  Kind kind() const;

  Rel rel() const;
  const std::array<Term, 3>& terms() const;

  const Formula& left() const;
  const Formula& right() const;

  // N-quantifier accessors
  unsigned bound_var() const;
  const Formula& body() const;

  std::size_t node_count() const;
  std::size_t depth() const;

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  friend Formula atom(Rel r, Term t0, Term t1, Term t2);
  friend Formula nor(Formula a, Formula b);
  friend Formula none(unsigned var, Formula body);

private:
  struct Node;

  Formula() = default;  // only as a Node member before assignment
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind;
  Rel rel = Rel::Add;
  std::array<Term, 3> terms{Term::constant(0), Term::constant(0), Term::constant(0)};
  Formula left, right;  // Nor operands; None keeps its body in `left`
  unsigned var = 0;

  explicit Node(Kind k) : kind(k) {}
};

inline Formula::Kind Formula::kind() const { return node_->kind; }
inline Rel Formula::rel() const { return node_->rel; }
inline const std::array<Term, 3>& Formula::terms() const { return node_->terms; }
inline const Formula& Formula::left() const { return node_->left; }
inline const Formula& Formula::right() const { return node_->right; }
inline unsigned Formula::bound_var() const { return node_->var; }
inline const Formula& Formula::body() const { return node_->left; }

inline std::size_t Formula::node_count() const {
  switch (kind()) {
    case Kind::Atomic: return 1;
    case Kind::Nor: return 1 + left().node_count() + right().node_count();
    case Kind::None: return 1 + body().node_count();
  }
  return 0;
}

inline std::size_t Formula::depth() const {
  switch (kind()) {
    case Kind::Atomic: return 1;
    case Kind::Nor: return 1 + std::max(left().depth(), right().depth());
    case Kind::None: return 1 + body().depth();
  }
  return 0;
}

inline bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::Atomic: return rel() == o.rel() && terms() == o.terms();
    case Kind::Nor: return left() == o.left() && right() == o.right();
    case Kind::None: return bound_var() == o.bound_var() && body() == o.body();
  }
  return false;
}

inline Formula atom(Rel r, Term t0, Term t1, Term t2) {
  auto n = std::make_shared<Formula::Node>(Formula::Kind::Atomic);
  n->rel = r;
  n->terms = {t0, t1, t2};
  return Formula(std::move(n));
}

inline Formula nor(Formula a, Formula b) {
  auto n = std::make_shared<Formula::Node>(Formula::Kind::Nor);
  n->left = std::move(a);
  n->right = std::move(b);
  return Formula(std::move(n));
}

inline Formula none(unsigned var, Formula body) {
  auto n = std::make_shared<Formula::Node>(Formula::Kind::None);
  n->var = var;
  n->left = std::move(body);
  return Formula(std::move(n));
}

// Derived connectives, desugared exactly into the two primitives.
inline Formula neg(Formula a) { return nor(a, a); }
inline Formula or_(Formula a, Formula b) { return neg(nor(std::move(a), std::move(b))); }
inline Formula and_(Formula a, Formula b) { return nor(neg(std::move(a)), neg(std::move(b))); }
inline Formula forall(unsigned var, Formula f) { return none(var, neg(std::move(f))); }
inline Formula exists(unsigned var, Formula f) { return neg(none(var, std::move(f))); }

namespace detail {

inline void collect_free_vars(const Formula& f, std::set<unsigned>& bound,
                              std::set<unsigned>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      for (const Term& t : f.terms())
        if (t.is_variable() && !bound.count(t.index())) out.insert(t.index());
      return;
    case Formula::Kind::Nor:
      collect_free_vars(f.left(), bound, out);
      collect_free_vars(f.right(), bound, out);
      return;
    case Formula::Kind::None: {
      bool fresh = bound.insert(f.bound_var()).second;
      collect_free_vars(f.body(), bound, out);
      if (fresh) bound.erase(f.bound_var());
      return;
    }
  }
}

}  // namespace detail

inline std::set<unsigned> free_vars(const Formula& f) {
  std::set<unsigned> bound, out;
  detail::collect_free_vars(f, bound, out);
  return out;
}

// Replaces every free occurrence of v<var> by c<element>. Occurrences under
// an N-binder for the same variable are untouched. Unchanged subtrees are
// returned as-is.
inline Formula substitute(const Formula& f, unsigned var, unsigned element) {
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      bool hit = false;
      std::array<Term, 3> ts = f.terms();
      for (Term& t : ts) {
        if (t.is_variable() && t.index() == var) {
          t = Term::constant(element);
          hit = true;
        }
      }
      return hit ? atom(f.rel(), ts[0], ts[1], ts[2]) : f;
    }
    case Formula::Kind::Nor: {
      Formula l = substitute(f.left(), var, element);
      Formula r = substitute(f.right(), var, element);
      if (l == f.left() && r == f.right()) return f;
      return nor(std::move(l), std::move(r));
    }
    case Formula::Kind::None: {
      if (f.bound_var() == var) return f;
      Formula b = substitute(f.body(), var, element);
      if (b == f.body()) return f;
      return none(f.bound_var(), std::move(b));
    }
  }
  return f;
}

// Deterministic fully parenthesized rendering; parse(print(f)) == f.
inline std::string print(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      return std::string(rel_name(f.rel())) + "(" + f.terms()[0].str() + "," +
             f.terms()[1].str() + "," + f.terms()[2].str() + ")";
    case Formula::Kind::Nor:
      return "(" + print(f.left()) + " NOR " + print(f.right()) + ")";
    case Formula::Kind::None:
      return "N v" + std::to_string(f.bound_var()) + ". " + print(f.body());
  }
  return {};
}

namespace detail {

// Recursive-descent parser for
//   formula := atom | "(" formula "NOR" formula ")" | "N" var "." formula
//   atom    := ("Add" | "Mul") "(" term "," term "," term ")"
//   term    := "v" nat | "c" nat
// Whitespace-insensitive between tokens; v/c and their digits form one token.
class FormulaParser {
public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = formula();
    skip_space();
    if (pos_ < text_.size()) fail("end of input");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& expected) {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'"
                                            : "end of input";
    throw ParseError(std::to_string(line_) + ":" + std::to_string(col_) + ": expected " +
                         expected + ", found " + found,
                     line_, col_);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++col_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool try_consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      ++col_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!try_consume(c)) fail(std::string("'") + what + "'");
  }

  bool try_keyword(std::string_view kw) {
    skip_space();
    if (text_.substr(pos_).substr(0, kw.size()) != kw) return false;
    // Keyword must not continue into a longer word ("N" vs "NOR").
    std::size_t after = pos_ + kw.size();
    if (after < text_.size() && std::isalnum(static_cast<unsigned char>(text_[after])))
      return false;
    pos_ = after;
    col_ += kw.size();
    return true;
  }

  unsigned natural() {
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("a number");
    unsigned long value = 0;
    std::size_t digits = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<unsigned long>(text_[pos_] - '0');
      if (++digits > 9) fail("a number with at most 9 digits");
      ++pos_;
      ++col_;
    }
    return static_cast<unsigned>(value);
  }

  Term term() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == 'v') {
      ++pos_;
      ++col_;
      return Term::variable(natural());
    }
    if (pos_ < text_.size() && text_[pos_] == 'c') {
      ++pos_;
      ++col_;
      return Term::constant(natural());
    }
    fail("a term ('v<n>' or 'c<n>')");
  }

  Formula atom_body(Rel r) {
    expect('(', "(");
    Term t0 = term();
    expect(',', ",");
    Term t1 = term();
    expect(',', ",");
    Term t2 = term();
    expect(')', ")");
    return atom(r, t0, t1, t2);
  }

  Formula formula() {
    skip_space();
    if (try_keyword("Add")) return atom_body(Rel::Add);
    if (try_keyword("Mul")) return atom_body(Rel::Mul);
    if (try_keyword("NOR")) fail("a formula ('Add', 'Mul', '(' or 'N')");
    if (try_keyword("N")) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != 'v') fail("a variable ('v<n>')");
      ++pos_;
      ++col_;
      unsigned var = natural();
      expect('.', ".");
      return none(var, formula());
    }
    if (try_consume('(')) {
      Formula l = formula();
      if (!try_keyword("NOR")) fail("'NOR'");
      Formula r = formula();
      expect(')', ")");
      return nor(std::move(l), std::move(r));
    }
    fail("a formula ('Add', 'Mul', '(' or 'N')");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) {
  return detail::FormulaParser(text).parse();
}

// A formula with no free variables. The canonical printed form doubles as
// the sentence's identity (and as its vertex id in sentence digraphs);
// alpha-variants are distinct sentences on purpose.
class Sentence {
public:
  explicit Sentence(Formula f) : formula_(std::move(f)), text_(print(formula_)) {
    auto fv = free_vars(formula_);
    if (!fv.empty()) {
      std::string names;
      for (unsigned v : fv) names += " v" + std::to_string(v);
      throw DomainError("not-sentence", "formula has free variables:" + names);
    }
  }

  const Formula& formula() const { return formula_; }
  const std::string& text() const { return text_; }

  friend bool operator==(const Sentence& a, const Sentence& b) { return a.text_ == b.text_; }
  friend bool operator!=(const Sentence& a, const Sentence& b) { return !(a == b); }
  friend bool operator<(const Sentence& a, const Sentence& b) { return a.text_ < b.text_; }

private:
  Formula formula_;
  std::string text_;
};

inline Sentence parse_sentence(std::string_view text) {
  return Sentence(parse_formula(text));
}

}  // namespace kernelhood

#endif  // KERNELHOOD_FORMULA_HPP
