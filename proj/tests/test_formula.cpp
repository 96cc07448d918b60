#include <doctest.h>

#include "goi/formula.hpp"

using namespace goi;

namespace {

FormulaPtr P(const std::string& s) { return Formula::parse(s); }

}  // namespace

TEST_CASE("kinds follow the polarity grammar") {
  CHECK(kind_of(*P("(var 0 0)")) == Kind::B);
  CHECK(kind_of(*P("(oc (var 0 0))")) == Kind::N);
  CHECK(kind_of(*P("(wn (var 0 0))")) == Kind::P);
  CHECK(kind_of(*P("(tensor (oc (var 0 0)) (wn (var 0 1)))")) == Kind::P);
  CHECK(kind_of(*P("(tensor (var 0 0) (oc (var 0 1)))")) == Kind::B);
  CHECK(kind_of(*P("(tensor (oc (var 0 1)) (var 0 0))")) == Kind::B);
  CHECK(kind_of(*P("(par (var 0 0) (wn (var 0 1)))")) == Kind::B);
  CHECK(kind_of(*P("one")) == Kind::N);
  CHECK(kind_of(*P("bot")) == Kind::P);
  CHECK_THROWS_AS(kind_of(*P("(with (oc (var 0 0)) (var 0 1))")), PolarityError);
  CHECK_THROWS_AS(kind_of(*P("(oc (wn (var 0 0)))")), PolarityError);
  CHECK_THROWS_AS(kind_of(*P("(forall 0 (oc (var 0 0)))")), PolarityError);
  CHECK_FALSE(try_kind(*P("(par (oc (var 0 0)) (oc (var 0 1)))")).has_value());
}

TEST_CASE("locations of variables") {
  CHECK(variable_base(0, 0) == 1);
  CHECK(variable_base(1, 1) == 6);
  CHECK(variable_base(2, 0) == 4);
  CHECK(location(*P("(tensor (var 0 0) (nvar 1 1))")) == std::vector<int64_t>{1, 6});
  CHECK(location(*P("(zero 8 9)")) == std::vector<int64_t>{8, 9});
  CHECK_THROWS_AS(check_location(*P("(tensor (var 0 0) (var 0 0))")), std::invalid_argument);
  CHECK_NOTHROW(check_location(*P("(tensor (var 0 0) (nvar 0 1))")));
}

TEST_CASE("duality and shapes") {
  FormulaPtr f = P("(tensor (oc (var 0 0)) (plus (nvar 1 0) one))");
  FormulaPtr d = dual(f);
  CHECK(d->op == Op::Par);
  CHECK(d->kids[0]->op == Op::Wn);
  CHECK(equal(*dual(d), *f));
  CHECK_FALSE(equal(*d, *f));
  CHECK(same_shape(*P("(tensor (var 0 0) (var 1 3))"), *P("(tensor (var 0 5) (var 1 2))")));
  CHECK_FALSE(same_shape(*P("(tensor (var 0 0) (var 1 3))"), *P("(par (var 0 0) (var 1 3))")));
  CHECK(free_names(*P("(forall 0 (tensor (var 0 0) (var 2 0)))")) == std::set<uint32_t>{2});
  FormulaPtr r = rename_occurrences(P("(tensor (var 0 0) (nvar 0 0))"), 0, 0, 3);
  CHECK(location(*r) == std::vector<int64_t>{7, 7});
}

TEST_CASE("printing round trips through the parser") {
  for (const char* s : {"(var 0 0)", "(oc (with (var 0 4) (var 1 4)))", "(exists 1 (par (var 1 0) (nvar 1 1)))",
                        "(top 2 3)", "(tensor one bot)"}) {
    FormulaPtr f = P(s);
    CHECK(equal(*Formula::parse(f->str()), *f));
  }
}

TEST_CASE("syntax errors carry positions") {
  try {
    P("(tensor (var 0 0)\n  (frob 1))");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 3);
  }
  CHECK_THROWS_AS(P("(var 0)"), SyntaxError);
  CHECK_THROWS_AS(P("(var x 0)"), SyntaxError);
  CHECK_THROWS_AS(P("(one 3)"), SyntaxError);
  CHECK(location(*P("(zero)")).empty());
  CHECK_THROWS_AS(parse_sexp("(a (b)"), SyntaxError);
  CHECK(parse_sexps("; comment\n(a) b").size() == 2);
}
