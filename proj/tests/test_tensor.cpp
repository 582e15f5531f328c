#include <catch2/catch_amalgamated.hpp>

#include "bopp/tensor.hpp"
#include "testutil.hpp"

using namespace bopp;
using testutil::Rng;

namespace {

Poly base(const VarSetPtr& vs, int i) { return Poly::variable(vs, Var::base(i)); }
Poly mom(const VarSetPtr& vs, int i) { return Poly::variable(vs, Var::momentum(i)); }

/// Random G with the cyclic solvability condition built in: any
/// tail-symmetric R^{i;jk} gives G^{ij;k} = R^{i;jk} - R^{j;ik} with
/// vanishing cyclic sum.
SymTensor random_cyclic_G(const VarSetPtr& vs, int tail, Rng& rng) {
  const int dim = vs->dim();
  SymTensor r(vs, 1, tail + 1, LeadSymmetry::None);
  for (int i = 1; i <= dim; ++i)
    for (const auto& J : detail::multisets(dim, tail + 1))
      r.set({i}, J, testutil::random_base_poly(vs, 2, rng));
  SymTensor g(vs, 2, tail, LeadSymmetry::AntisymPair);
  for (int i = 1; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j)
      for (const auto& T : detail::multisets(dim, tail)) {
        Poly v = r.get({i}, detail::sorted_insert(T, j));
        v -= r.get({j}, detail::sorted_insert(T, i));
        g.set({i, j}, T, std::move(v));
      }
  return g;
}

/// Random F satisfying the four-term condition: the cyclic image of any
/// antisym-pair/symmetric-tail tensor lands in its kernel.
SymTensor random_four_term_F(const VarSetPtr& vs, int n, Rng& rng) {
  const int dim = vs->dim();
  SymTensor th(vs, 2, n, LeadSymmetry::AntisymPair);
  for (int i = 1; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j)
      for (const auto& J : detail::multisets(dim, n))
        th.set({i, j}, J, testutil::random_base_poly(vs, 2, rng));
  SymTensor f(vs, 3, n - 1, LeadSymmetry::AntisymTriple);
  for (int i = 1; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j)
      for (int c = j + 1; c <= dim; ++c)
        for (const auto& T : detail::multisets(dim, n - 1)) {
          Poly v = th.get({i, j}, detail::sorted_insert(T, c));
          v += th.get({c, i}, detail::sorted_insert(T, j));
          v += th.get({j, c}, detail::sorted_insert(T, i));
          f.set({i, j, c}, T, v.scaled(rat(-n)));
        }
  return f;
}

}  // namespace

TEST_CASE("extraction divides by the multinomial count") {
  auto vs = make_varset(2);
  // pi_1^2 has a single ordering
  SymTensor t1 = SymTensor::extract(vs, 1, 2, LeadSymmetry::None,
                                    {{{1}, mom(vs, 1) * mom(vs, 1)}});
  CHECK(t1.get({1}, {1, 1}) == Poly::constant(vs, rat(1)));
  CHECK(t1.get({1}, {1, 2}).is_zero());
  // pi_1 pi_2 has two orderings, so the symmetric entry is 1/2
  SymTensor t2 = SymTensor::extract(vs, 1, 2, LeadSymmetry::None,
                                    {{{1}, mom(vs, 1) * mom(vs, 2)}});
  CHECK(t2.get({1}, {1, 2}) == Poly::constant(vs, rat(1, 2)));
}

TEST_CASE("extraction rejects inhomogeneous input") {
  auto vs = make_varset(2);
  CHECK_THROWS_AS(SymTensor::extract(vs, 1, 2, LeadSymmetry::None,
                                     {{{1}, mom(vs, 1) + mom(vs, 1) * mom(vs, 2)}}),
                  DegreeError);
  CHECK_THROWS_AS(
      SymTensor::extract(vs, 1, 1, LeadSymmetry::None,
                         {{{1}, Poly::variable(vs, Var::alpha()) * mom(vs, 1)}}),
      DegreeError);
}

TEST_CASE("assemble and extract are mutually inverse") {
  auto vs = make_varset(3);
  Rng rng(7);
  for (int round = 0; round < 5; ++round) {
    const int n = rng.uniform(0, 3);
    SymTensor t(vs, 1, n, LeadSymmetry::None);
    for (int i = 1; i <= 3; ++i)
      for (const auto& J : detail::multisets(3, n))
        t.set({i}, J, testutil::random_base_poly(vs, 2, rng));
    std::map<IndexTuple, Poly> components;
    for (int i = 1; i <= 3; ++i)
      components.emplace(IndexTuple{i}, t.assemble({i}).alpha_slice(n));
    SymTensor back = SymTensor::extract(vs, 1, n, LeadSymmetry::None, components);
    CHECK(back == t);
  }
}

TEST_CASE("assemble of the leading shift reproduces the first Bopp term") {
  auto vs = make_varset(2);
  // Gamma^{i;j} = -Theta^{ij}/2 for Theta^{12} = y1
  SymTensor gamma(vs, 1, 1, LeadSymmetry::None);
  gamma.set({1}, {2}, base(vs, 1).scaled(rat(-1, 2)));
  gamma.set({2}, {1}, base(vs, 1).scaled(rat(1, 2)));
  Poly expect = (Poly::variable(vs, Var::alpha()) * base(vs, 1) * mom(vs, 2)).scaled(rat(-1, 2));
  CHECK(gamma.assemble({1}) == expect);
  CHECK(SymTensor(vs, 1, 1, LeadSymmetry::None).assemble({1}).is_zero());
}

TEST_CASE("antisymmetric storage restores signs and kills repeats") {
  auto vs = make_varset(3);
  SymTensor g(vs, 2, 1, LeadSymmetry::AntisymPair);
  g.set({2, 1}, {3}, base(vs, 1));
  CHECK(g.get({1, 2}, {3}) == -base(vs, 1));
  CHECK(g.get({2, 1}, {3}) == base(vs, 1));
  CHECK(g.get({1, 1}, {3}).is_zero());
  CHECK_THROWS_AS(g.set({1, 1}, {2}, base(vs, 1)), StructuralError);

  SymTensor f(vs, 3, 0, LeadSymmetry::AntisymTriple);
  f.set({3, 1, 2}, {}, base(vs, 2));
  CHECK(f.get({1, 2, 3}, {}) == base(vs, 2));   // cyclic, even
  CHECK(f.get({2, 1, 3}, {}) == -base(vs, 2));  // one transposition
  CHECK(f.get({1, 1, 2}, {}).is_zero());
}

TEST_CASE("tensor entries must be momentum- and alpha-free") {
  auto vs = make_varset(2);
  SymTensor t(vs, 1, 0, LeadSymmetry::None);
  CHECK_THROWS_AS(t.set({1}, {}, mom(vs, 1)), StructuralError);
  CHECK_THROWS_AS(t.set({1}, {}, Poly::variable(vs, Var::alpha())), StructuralError);
}

TEST_CASE("shift tensors solve their defining equation") {
  auto vs = make_varset(3);
  Rng rng(17);
  for (int tail : {0, 1, 2}) {
    SymTensor g = random_cyclic_G(vs, tail, rng);
    int sign = 0;
    SymTensor gamma = gamma_from_G(g, &sign);
    CHECK(sign == -1);
    CHECK(gamma.tail_arity() == tail + 1);
    // (n+1) (Gamma^{j;{i}T} - Gamma^{i;{j}T}) = G^{ij;T}
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 3; ++j)
        for (const auto& T : detail::multisets(3, tail)) {
          Poly lhs = gamma.get({j}, detail::sorted_insert(T, i));
          lhs -= gamma.get({i}, detail::sorted_insert(T, j));
          CHECK(lhs.scaled(rat(tail + 1)) == g.get({i, j}, T));
        }
  }
  // zero input gives zero output
  SymTensor zero(vs, 2, 1, LeadSymmetry::AntisymPair);
  CHECK(gamma_from_G(zero).is_zero());
}

TEST_CASE("first-order shift tensor matches the closed form") {
  auto vs = make_varset(3);
  Rng rng(19);
  SymTensor g = random_cyclic_G(vs, 1, rng);
  SymTensor gamma = gamma_from_G(g);
  // Gamma^{i;jk} = -(1/6)(G^{ij;k} + G^{ik;j})
  for (int i = 1; i <= 3; ++i)
    for (const auto& J : detail::multisets(3, 2)) {
      Poly expect = g.get({i, J[0]}, {J[1]});
      expect += g.get({i, J[1]}, {J[0]});
      CHECK(gamma.get({i}, J) == expect.scaled(rat(-1, 6)));
    }
}

TEST_CASE("cyclicity defect vanishes exactly on valid input and flags corruption") {
  auto vs = make_varset(4);
  Rng rng(29);
  SymTensor g = random_cyclic_G(vs, 1, rng);
  SymTensor d = cyclicity_defect(g);
  CHECK(d.is_zero());
  CHECK(d.lead_arity() == 3);
  CHECK(d.tail_arity() == 0);

  SymTensor bad = g;
  bad.add({1, 2}, {3}, Poly::constant(vs, rat(1)));
  SymTensor defect = cyclicity_defect(bad);
  CHECK(!defect.is_zero());
  CHECK_THROWS_AS(gamma_from_G(bad), ConsistencyError);
}

TEST_CASE("four-term defect vanishes exactly on valid input and flags corruption") {
  auto vs = make_varset(4);
  Rng rng(31);
  for (int n : {2, 3}) {
    SymTensor f = random_four_term_F(vs, n, rng);
    CHECK(four_term_defect(f).is_zero());
    // the bumped entry must use an index disjoint from the lead: a bump
    // whose tail repeats a lead index stays inside the solvable class
    SymTensor bad = f;
    bad.add({1, 2, 3}, detail::multisets(4, n - 1).back(), Poly::constant(vs, rat(1)));
    CHECK(!four_term_defect(bad).is_zero());
    SymTensor kernel_bump = f;
    kernel_bump.add({1, 2, 3}, detail::multisets(4, n - 1).front(), Poly::constant(vs, rat(1)));
    CHECK(four_term_defect(kernel_bump).is_zero());
  }
}

TEST_CASE("correction solver recovers a solution with the verified sign") {
  auto vs = make_varset(4);
  Rng rng(37);
  for (int n : {1, 2, 3}) {
    SymTensor f = random_four_term_F(vs, n, rng);
    int sign = 0;
    SymTensor theta = solve_theta_correction(f, n, &sign);
    CHECK(sign == -1);
    // n (Theta^{ij;{k}T} + Theta^{ki;{j}T} + Theta^{jk;{i}T}) + F^{ijk;T} = 0
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k)
          for (const auto& T : detail::multisets(4, n - 1)) {
            Poly lhs = theta.get({i, j}, detail::sorted_insert(T, k));
            lhs += theta.get({k, i}, detail::sorted_insert(T, j));
            lhs += theta.get({j, k}, detail::sorted_insert(T, i));
            lhs = lhs.scaled(rat(n));
            lhs += f.get({i, j, k}, T);
            CHECK(lhs.is_zero());
          }
  }
  SymTensor zero(vs, 3, 0, LeadSymmetry::AntisymTriple);
  CHECK(solve_theta_correction(zero, 1).is_zero());
}

TEST_CASE("total symmetrization projects and fixes") {
  auto vs = make_varset(3);
  Rng rng(41);

  // any antisymmetric lead pair dies under total symmetrization
  SymTensor g = random_cyclic_G(vs, 1, rng);
  CHECK(total_symmetrization(g).is_zero());

  // the first shift tensor -Theta^{ij}/2 is lead-antisymmetric in disguise
  SymTensor gamma1(vs, 1, 1, LeadSymmetry::None);
  Bivector theta = testutil::random_bivector(3, 2, rng);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Poly e = theta.get(i, j).scaled(rat(-1, 2));
      if (!e.is_zero()) gamma1.set({i}, {j}, e);
    }
  CHECK(total_symmetrization(gamma1).is_zero());

  // second-order shift of any antisymmetric matrix symmetrizes to zero:
  // Gamma^{i;jk} = (1/24)(Theta^{km} d_m Theta^{ij} + Theta^{jm} d_m Theta^{ik})
  SymTensor gamma2(vs, 1, 2, LeadSymmetry::None);
  for (int i = 1; i <= 3; ++i)
    for (const auto& J : detail::multisets(3, 2)) {
      const int j = J[0], k = J[1];
      Poly acc(vs);
      for (int m = 1; m <= 3; ++m) {
        acc += theta.get(k, m) * theta.get(i, j).derivative(Var::base(m));
        acc += theta.get(j, m) * theta.get(i, k).derivative(Var::base(m));
      }
      if (!acc.is_zero()) gamma2.set({i}, J, acc.scaled(rat(1, 24)));
    }
  CHECK(total_symmetrization(gamma2).is_zero());

  // totally symmetric input is a fixed point
  SymTensor s(vs, 1, 2, LeadSymmetry::None);
  Poly v = testutil::random_base_poly(vs, 2, rng);
  for (int i = 1; i <= 3; ++i)
    for (const auto& J : detail::multisets(3, 2)) s.set({i}, J, v);
  CHECK(total_symmetrization(s) == s);
}
