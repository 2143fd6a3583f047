#include <doctest.h>

#include <string>

#include "kernelhood/formula.hpp"
#include "kernelhood/random.hpp"

using namespace kernelhood;

namespace {

Formula A() { return atom(Rel::Add, Term::constant(0), Term::constant(0), Term::constant(0)); }
Formula B() { return atom(Rel::Mul, Term::constant(1), Term::constant(1), Term::constant(1)); }

}  // namespace

TEST_CASE("terms") {
  CHECK(Term::variable(3).str() == "v3");
  CHECK(Term::constant(7).str() == "c7");
  CHECK(Term::variable(2) == Term::variable(2));
  CHECK(Term::variable(2) != Term::constant(2));
}

TEST_CASE("size and depth") {
  CHECK(A().node_count() == 1);
  CHECK(A().depth() == 1);
  Formula f = none(0, nor(A(), B()));
  CHECK(f.node_count() == 4);
  CHECK(f.depth() == 3);
}

TEST_CASE("free_vars") {
  Formula f = atom(Rel::Add, Term::variable(0), Term::constant(1), Term::variable(2));
  CHECK(free_vars(f) == std::set<unsigned>{0, 2});

  Formula closed = none(0, atom(Rel::Add, Term::variable(0), Term::variable(0), Term::constant(0)));
  CHECK(free_vars(closed).empty());

  Formula mixed = nor(A(), atom(Rel::Mul, Term::variable(1), Term::constant(0), Term::constant(0)));
  CHECK(free_vars(mixed) == std::set<unsigned>{1});

  // shadowing: the inner binder rebinds v0, the outer occurrence stays free
  Formula shadow = nor(atom(Rel::Add, Term::variable(0), Term::constant(0), Term::constant(0)),
                       none(0, atom(Rel::Add, Term::variable(0), Term::constant(0), Term::constant(0))));
  CHECK(free_vars(shadow) == std::set<unsigned>{0});
}

TEST_CASE("substitute") {
  Formula f = atom(Rel::Add, Term::variable(0), Term::variable(0), Term::constant(1));
  CHECK(print(substitute(f, 0, 2)) == "Add(c2,c2,c1)");

  Formula bound = none(0, atom(Rel::Add, Term::variable(0), Term::variable(1), Term::constant(0)));
  CHECK(substitute(bound, 0, 3) == bound);  // occurrence is bound
  CHECK(print(substitute(bound, 1, 3)) == "N v0. Add(v0,c3,c0)");

  // free-variable bookkeeping
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    Formula g = random_formula(rng, 1 + rng.below(6), 3, 3);
    unsigned var = static_cast<unsigned>(rng.below(3));
    auto before = free_vars(g);
    auto after = free_vars(substitute(g, var, 1));
    before.erase(var);
    CHECK(after == before);
  }
}

TEST_CASE("derived connectives desugar exactly") {
  CHECK(print(neg(A())) == "(Add(c0,c0,c0) NOR Add(c0,c0,c0))");
  CHECK(print(or_(A(), B())) ==
        "((Add(c0,c0,c0) NOR Mul(c1,c1,c1)) NOR (Add(c0,c0,c0) NOR Mul(c1,c1,c1)))");
  CHECK(and_(A(), B()) == nor(neg(A()), neg(B())));

  Formula body = atom(Rel::Add, Term::variable(0), Term::variable(0), Term::constant(1));
  CHECK(forall(0, body) == none(0, nor(body, body)));
  CHECK(print(exists(0, body)) ==
        "(N v0. Add(v0,v0,c1) NOR N v0. Add(v0,v0,c1))");
}

TEST_CASE("parsing") {
  Formula a = parse_formula("Add(c0,c0,c0)");
  CHECK(a.kind() == Formula::Kind::Atomic);
  CHECK(a.rel() == Rel::Add);
  CHECK(a == A());

  Formula n = parse_formula("(Add(c0,c0,c0) NOR Mul(c1,c1,c1))");
  CHECK(n.kind() == Formula::Kind::Nor);
  CHECK(n == nor(A(), B()));

  Formula q = parse_formula("N v0. Add(v0,v0,c1)");
  CHECK(q.kind() == Formula::Kind::None);
  CHECK(q.bound_var() == 0);
  CHECK(q.body().kind() == Formula::Kind::Atomic);

  SUBCASE("whitespace between tokens is free") {
    CHECK(parse_formula("  N  v0 .\n\t( Add ( v0 , v0 , c1 )  NOR  Mul(c1,c1,c1) )") ==
          none(0, nor(atom(Rel::Add, Term::variable(0), Term::variable(0), Term::constant(1)),
                      B())));
  }

  SUBCASE("alpha-variants are distinct formulas") {
    CHECK(parse_formula("N v0. Add(v0,v0,c0)") != parse_formula("N v1. Add(v1,v1,c0)"));
  }
}

TEST_CASE("parse errors carry position and expectation") {
  auto expect_error = [](const std::string& text, const std::string& fragment,
                         std::size_t line) {
    try {
      parse_formula(text);
      FAIL(("expected ParseError for: " + text));
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
      CHECK(e.line() == line);
    }
  };
  expect_error("Bad(c0,c0,c0)", "expected a formula", 1);
  expect_error("Add(c0,c0)", "expected ','", 1);
  expect_error("(Add(c0,c0,c0))", "expected 'NOR'", 1);
  expect_error("N x0. Add(c0,c0,c0)", "expected a variable", 1);
  expect_error("Add(c0,c0,c0) junk", "expected end of input", 1);
  expect_error("N v0.\n  Mul(c0,c0", "expected ','", 2);
  expect_error("v0", "expected a formula", 1);
  expect_error("Add(c1234567890123,c0,c0)", "at most 9 digits", 1);
  expect_error("", "expected a formula", 1);
}

TEST_CASE("print/parse round trip") {
  Rng rng(808);
  for (int trial = 0; trial < 300; ++trial) {
    Formula f = random_formula(rng, 1 + rng.below(8), 4, 4);
    CHECK(parse_formula(print(f)) == f);
  }
}

TEST_CASE("sentences") {
  Sentence s = parse_sentence("N v0. Add(v0,v0,c1)");
  CHECK(s.text() == "N v0. Add(v0,v0,c1)");
  CHECK(s == Sentence(parse_formula("N  v0 . Add(v0,v0,c1)")));

  CHECK_THROWS_AS(parse_sentence("Add(v0,c0,c0)"), DomainError);
  try {
    parse_sentence("Mul(v3,v1,c0)");
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.code() == "not-sentence");
    CHECK(std::string(e.what()).find("v1") != std::string::npos);
    CHECK(std::string(e.what()).find("v3") != std::string::npos);
  }
}
