#include <catch2/catch_amalgamated.hpp>

#include "bopp/poly.hpp"
#include "testutil.hpp"

using namespace bopp;
using testutil::Rng;

namespace {

VarSetPtr vs3() {
  static VarSetPtr vs = make_varset(3, {"R"});
  return vs;
}

Poly y(int i) { return Poly::variable(vs3(), Var::base(i)); }
Poly pi(int i) { return Poly::variable(vs3(), Var::momentum(i)); }
Poly alpha() { return Poly::variable(vs3(), Var::alpha()); }
Poly param_R() { return Poly::variable(vs3(), Var::param(0)); }
Poly c(long num, long den = 1) { return Poly::constant(vs3(), rat(num, den)); }

}  // namespace

TEST_CASE("ring arithmetic is exact and normalized") {
  CHECK((y(1) + alpha()) * (y(1) - alpha()) == y(1) * y(1) - alpha() * alpha());

  Rng rng(11);
  Poly f = testutil::random_full_poly(vs3(), 4, rng);
  CHECK(f + Poly::zero(vs3()) == f);
  CHECK((f - f).is_zero());

  CHECK(y(1).scaled(rat(1, 2)) * pi(1).scaled(rat(2, 3)) == (y(1) * pi(1)).scaled(rat(1, 3)));
}

TEST_CASE("arithmetic rejects mismatched variable sets") {
  auto other = make_varset(2);
  CHECK_THROWS_AS(Poly::variable(other, Var::base(1)) + y(1), StructuralError);
  CHECK_THROWS_AS(Poly::mul(Poly::variable(other, Var::base(1)), y(1)), StructuralError);
}

TEST_CASE("partial derivatives follow the exponent rule") {
  CHECK((y(1) * y(1) * pi(2)).derivative(Var::base(1)) == y(1).scaled(rat(2)) * pi(2));
  CHECK(y(2).derivative(Var::momentum(1)).is_zero());
  CHECK((param_R() * y(3) * y(1)).derivative(Var::base(3)) == param_R() * y(1));
  // parameters and alpha are constants along phase-space directions
  CHECK(param_R().derivative(Var::base(1)).is_zero());
  CHECK(alpha().derivative(Var::momentum(2)).is_zero());
  // but are legal differentiation directions themselves
  CHECK((alpha() * alpha()).derivative(Var::alpha()) == alpha().scaled(rat(2)));
  CHECK_THROWS_AS(y(1).derivative(Var::base(7)), StructuralError);
}

TEST_CASE("canonical bracket pairs coordinates and momenta") {
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Poly expect = i == j ? c(1) : Poly::zero(vs3());
      CHECK(canonical_bracket(y(i), pi(j)) == expect);
      CHECK(canonical_bracket(y(i), y(j)).is_zero());
      CHECK(canonical_bracket(pi(i), pi(j)).is_zero());
    }
  CHECK(canonical_bracket(y(1) * pi(2), pi(1) * pi(2)) == pi(2) * pi(2));
}

TEST_CASE("canonical bracket is antisymmetric, Jacobi and Leibniz hold") {
  Rng rng(23);
  for (int round = 0; round < 8; ++round) {
    Poly f = testutil::random_full_poly(vs3(), 3, rng);
    Poly g = testutil::random_full_poly(vs3(), 3, rng);
    Poly h = testutil::random_full_poly(vs3(), 3, rng);
    CHECK((canonical_bracket(f, g) + canonical_bracket(g, f)).is_zero());
    CHECK((canonical_bracket(f, f)).is_zero());
    Poly jac = canonical_bracket(f, canonical_bracket(g, h));
    jac += canonical_bracket(h, canonical_bracket(f, g));
    jac += canonical_bracket(g, canonical_bracket(h, f));
    CHECK(jac.is_zero());
    CHECK(canonical_bracket(f, g * h) ==
          canonical_bracket(f, g) * h + g * canonical_bracket(f, h));
  }
}

TEST_CASE("alpha truncation drops high orders and is idempotent") {
  Poly f = c(1) + alpha() * y(1) + alpha() * alpha() * pi(1);
  CHECK(f.truncate_alpha(2) == c(1) + alpha() * y(1));
  CHECK(f.truncate_alpha(0).is_zero());

  Rng rng(31);
  for (int round = 0; round < 6; ++round) {
    Poly g = testutil::random_full_poly(vs3(), 4, rng);
    const int k = rng.uniform(0, 4);
    CHECK(g.truncate_alpha(k).truncate_alpha(k) == g.truncate_alpha(k));
    // agreement below the cut
    for (int m = 0; m < k; ++m) CHECK(g.truncate_alpha(k).alpha_slice(m) == g.alpha_slice(m));
  }
}

TEST_CASE("substitution expands exactly") {
  Poly f = y(1) * y(2);
  Poly image = y(1) - (alpha() * pi(2)).scaled(rat(1, 2));
  Poly got = f.substitute({{Var::base(1), image}, {Var::base(2), y(2)}});
  CHECK(got == y(1) * y(2) - (alpha() * pi(2) * y(2)).scaled(rat(1, 2)));

  Rng rng(37);
  Poly g = testutil::random_full_poly(vs3(), 3, rng);
  CHECK(g.substitute({{Var::base(1), y(1)}, {Var::base(2), y(2)}, {Var::base(3), y(3)}}) == g);
}

TEST_CASE("substitution is a ring homomorphism") {
  Rng rng(41);
  for (int round = 0; round < 6; ++round) {
    Poly f = testutil::random_full_poly(vs3(), 3, rng);
    Poly g = testutil::random_full_poly(vs3(), 3, rng);
    std::vector<std::pair<Var, Poly>> images = {
        {Var::base(1), testutil::random_full_poly(vs3(), 2, rng)},
        {Var::momentum(2), testutil::random_full_poly(vs3(), 2, rng)}};
    CHECK((f * g).substitute(images) == f.substitute(images) * g.substitute(images));
    CHECK((f + g).substitute(images) == f.substitute(images) + g.substitute(images));
  }
}

TEST_CASE("substituting the first Bopp image reproduces the expanded bracket matrix") {
  // Theta^{12} = 2 y3 with the su(2)-like structure; pushing it through
  // x^i = y^i - (alpha/2) Theta^{ij} pi_j and truncating at alpha^2 must
  // match Theta^{12} + alpha d_l Theta^{12} Gamma^{lk} pi_k.
  auto vs = make_varset(3);
  auto yy = [&](int i) { return Poly::variable(vs, Var::base(i)); };
  auto pp = [&](int i) { return Poly::variable(vs, Var::momentum(i)); };
  auto av = Poly::variable(vs, Var::alpha());

  auto theta = [&](int i, int j) -> Poly {
    // 2 eps_{ijk} y_k
    Poly out(vs);
    for (int k = 1; k <= 3; ++k) {
      int e = (i - j) * (j - k) * (k - i) / 2;  // eps for distinct 1..3
      if (i == j || j == k || k == i) e = 0;
      if (e) out += yy(k).scaled(rat(2 * e));
    }
    return out;
  };

  std::vector<std::pair<Var, Poly>> bopp;
  for (int i = 1; i <= 3; ++i) {
    Poly xi = yy(i);
    for (int j = 1; j <= 3; ++j)
      if (j != i) xi -= Poly::mul(av * pp(j), theta(i, j)).scaled(rat(1, 2));
    bopp.emplace_back(Var::base(i), xi);
  }

  Poly via_subst = theta(1, 2).substitute(bopp).truncate_alpha(2);

  Poly expected = theta(1, 2);
  for (int l = 1; l <= 3; ++l)
    for (int k = 1; k <= 3; ++k) {
      Poly gamma_lk = theta(l, k).scaled(rat(-1, 2));
      if (gamma_lk.is_zero()) continue;
      expected += Poly::mul(av * pp(k), theta(1, 2).derivative(Var::base(l)) * gamma_lk);
    }
  CHECK(via_subst == expected.truncate_alpha(2));
}

TEST_CASE("unknown variables in assignments are rejected") {
  CHECK_THROWS_AS(y(1).substitute({{Var::base(9), y(1)}}), StructuralError);
  CHECK_THROWS_AS(y(1).substitute({{Var::param(3), y(1)}}), StructuralError);
}

TEST_CASE("canonical rendering is deterministic and exact") {
  Poly p = (param_R() * y(3) * pi(2)).scaled(rat(-1, 2));
  CHECK(p.str() == "-1/2*R*y3*pi2");
  CHECK(p.str(NameStyle::Doubled) == "-1/2*R*x3*xt2");
  CHECK(Poly::zero(vs3()).str() == "0");
  // ascending total degree; within a degree class, earlier slots carry
  // larger exponents first (alpha precedes base precedes momenta)
  CHECK((y(1) * y(1) - alpha() * alpha()).str() == "-alpha^2 + y1^2");
  CHECK((c(3, 4) + y(1) + alpha()).str() == "3/4 + alpha + y1");
  CHECK((y(2) * pi(1)).scaled(rat(1)).str() == "y2*pi1");
}
