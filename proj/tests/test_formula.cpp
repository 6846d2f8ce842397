#include "itl/formula.hpp"

#include "doctest.h"
#include "support.hpp"

using namespace itl;

TEST_CASE("arrow is right-associative") {
  Formula f = parse_formula("p -> q -> r");
  REQUIRE(f.kind() == Connective::Implies);
  CHECK(f.lhs().kind() == Connective::Atom);
  CHECK(f.rhs().kind() == Connective::Implies);
  CHECK(f.rhs().lhs().atom_name() == "q");
  CHECK(f.rhs().rhs().atom_name() == "r");
}

TEST_CASE("negation desugars to implication into falsum") {
  Formula f = parse_formula("~X p & ~X ~p");
  Formula expected = Formula::conj(
      Formula::implies(Formula::next(Formula::atom("p")), Formula::falsum()),
      Formula::implies(
          Formula::next(Formula::implies(Formula::atom("p"), Formula::falsum())),
          Formula::falsum()));
  CHECK(f == expected);
}

TEST_CASE("double negation and nested temporal operators") {
  Formula f = parse_formula("~~F G p -> F ~~G p");
  Formula gp = Formula::henceforth(Formula::atom("p"));
  Formula expected = Formula::implies(
      Formula::negation(Formula::negation(Formula::eventually(gp))),
      Formula::eventually(Formula::negation(Formula::negation(gp))));
  CHECK(f == expected);
}

TEST_CASE("true is sugar for false -> false") {
  CHECK(parse_formula("true") == Formula::verum());
  CHECK(parse_formula("true").kind() == Connective::Implies);
}

TEST_CASE("printer uses minimal parenthesization") {
  CHECK(print_formula(Formula::atom("p")) == "p");
  CHECK(print_formula(Formula::implies(Formula::atom("p"), Formula::falsum())) ==
        "~p");
  CHECK(print_formula(Formula::conj(
            Formula::next(Formula::atom("p")),
            Formula::disj(Formula::atom("q"), Formula::atom("r")))) ==
        "X p & (q | r)");
  CHECK(print_formula(parse_formula("~X p & ~X ~p")) == "~X p & ~X ~p");
  CHECK(print_formula(parse_formula("~~F G p -> F ~~G p")) ==
        "~~F G p -> F ~~G p");
  // Left-nested implication keeps its parentheses.
  CHECK(print_formula(Formula::implies(
            Formula::implies(Formula::atom("p"), Formula::atom("q")),
            Formula::atom("r"))) == "(p -> q) -> r");
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("p &"), ParseError);
  CHECK_THROWS_AS(parse_formula("p @ q"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_formula("Y p"), ParseError);
  try {
    parse_formula("p & @");
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
}

TEST_CASE("atom names are validated") {
  CHECK_THROWS_AS(Formula::atom("P"), std::invalid_argument);
  CHECK_THROWS_AS(Formula::atom("false"), std::invalid_argument);
  CHECK_NOTHROW(Formula::atom("p2_x"));
}

TEST_CASE("closure of falsum and next") {
  CHECK(subformula_closure(Formula::falsum()).size() == 1);
  ClosureSet c = subformula_closure(parse_formula("X p"));
  CHECK(c.size() == 2);
  CHECK(c.contains(Formula::atom("p")));
  CHECK(c.contains(parse_formula("X p")));
}

TEST_CASE("closure of the two-successor separator formula") {
  Formula f = parse_formula("~X p & ~X ~p");
  ClosureSet c = subformula_closure(f);
  // Independent oracle: enumerate distinct subtrees directly.
  auto prints = testing::subtree_prints(f);
  CHECK(c.size() == prints.size());
  CHECK(c.size() == 8);
  for (const Formula& g : c) CHECK(prints.count(g.to_string()) == 1);
}

TEST_CASE("round trip and closure properties on random formulas") {
  testing::Rng rng(20240817);
  const std::vector<std::string> atoms = {"p", "q", "r"};
  for (int trial = 0; trial < 500; ++trial) {
    Formula f = testing::random_formula(rng, 12, atoms);
    CAPTURE(f.to_string());
    CHECK(parse_formula(print_formula(f)) == f);

    ClosureSet c = subformula_closure(f);
    CHECK(static_cast<int>(c.size()) <= f.node_count());
    // Members are ordered bottom-up and closed under children.
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Formula& g = c.at(i);
      if (i > 0) CHECK(formula_less(c.at(i - 1), g));
      switch (g.kind()) {
        case Connective::Atom:
        case Connective::Falsum:
          break;
        case Connective::Next:
        case Connective::Eventually:
        case Connective::Henceforth:
          CHECK(c.contains(g.sub()));
          break;
        default:
          CHECK(c.contains(g.lhs()));
          CHECK(c.contains(g.rhs()));
          break;
      }
    }
  }
}
