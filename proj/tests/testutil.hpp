#pragma once

#include <random>
#include <vector>

#include "bopp/bivector.hpp"
#include "bopp/examples.hpp"
#include "bopp/realization.hpp"

namespace bopp::testutil {

/// Deterministic generator for exact test data.
struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::mt19937_64 gen;

  int uniform(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(gen);
  }

  Rational rational(int max_num = 4, int max_den = 3) {
    int num = 0;
    while (num == 0) num = uniform(-max_num, max_num);
    return rat(num, uniform(1, max_den));
  }
};

/// Random polynomial in the base coordinates (and parameters, if any) of
/// total degree <= max_deg.
inline Poly random_base_poly(const VarSetPtr& vs, int max_deg, Rng& rng, int terms = 3) {
  Poly p(vs);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int deg = rng.uniform(0, max_deg);
    for (int d = 0; d < deg; ++d) {
      const int i = rng.uniform(1, vs->dim());
      ++m.exp[static_cast<std::size_t>(vs->slot(Var::base(i)))];
    }
    p.add_term(m, rng.rational());
  }
  return p;
}

/// Random polynomial over the full variable set (momenta and alpha too).
inline Poly random_full_poly(const VarSetPtr& vs, int max_deg, Rng& rng, int terms = 4) {
  Poly p(vs);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int deg = rng.uniform(0, max_deg);
    for (int d = 0; d < deg; ++d) {
      const int s = rng.uniform(0, vs->total_slots() - 1);
      ++m.exp[static_cast<std::size_t>(s)];
    }
    p.add_term(m, rng.rational());
  }
  return p;
}

/// Random antisymmetric bivector with polynomial entries of degree
/// <= max_deg; generically quasi-Poisson (nonzero jacobiator).
inline Bivector random_bivector(int dim, int max_deg, Rng& rng, int terms = 2) {
  auto vs = make_varset(dim);
  Bivector theta(vs);
  for (int i = 1; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j)
      theta.set(i, j, random_base_poly(vs, max_deg, rng, terms));
  return theta;
}

/// Random exact Poisson bivector. In three dimensions every gradient
/// structure Theta^{ij} = eps^{ijk} d_k phi is Poisson; in four dimensions
/// the 3d structure is embedded and conjugated by a random invertible
/// rational matrix, which preserves the Jacobi identity.
inline Bivector random_poisson_bivector(int dim, Rng& rng) {
  if (dim != 3 && dim != 4) throw StructuralError("Poisson family supports dim 3 and 4");
  auto vs = make_varset(dim);
  Bivector theta(vs);
  Poly phi = random_base_poly(vs, 3, rng, 4);
  // eps^{12k} d_k phi = d_3 phi, etc.
  theta.set(1, 2, phi.derivative(Var::base(3)));
  theta.set(1, 3, -phi.derivative(Var::base(2)));
  theta.set(2, 3, phi.derivative(Var::base(1)));
  if (dim == 3) return theta;

  // Random invertible rational matrix built from elementary operations.
  std::vector<std::vector<Rational>> a(4, std::vector<Rational>(4, rat(0)));
  for (int i = 0; i < 4; ++i) a[i][i] = rat(1);
  for (int step = 0; step < 6; ++step) {
    const int r1 = rng.uniform(0, 3);
    int r2 = rng.uniform(0, 3);
    if (r1 == r2) r2 = (r2 + 1) % 4;
    const Rational c = rng.rational(2, 2);
    for (int j = 0; j < 4; ++j) a[r1][j] += c * a[r2][j];
  }
  auto inv = bopp::detail::invert_matrix(a);

  // x' = A x: Theta'^{ij}(x') = A^i_a A^j_b Theta^{ab}(A^{-1} x').
  std::vector<std::pair<Var, Poly>> images;
  for (int k = 1; k <= 4; ++k) {
    Poly img(vs);
    for (int l = 1; l <= 4; ++l)
      img += Poly::variable(vs, Var::base(l)).scaled(inv[k - 1][l - 1]);
    images.emplace_back(Var::base(k), img);
  }
  Bivector out(vs);
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      Poly acc(vs);
      for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q) {
          if (p == q) continue;
          Poly entry = theta.get(p, q);
          if (entry.is_zero()) continue;
          acc += entry.substitute(images).scaled(a[i - 1][p - 1] * a[j - 1][q - 1]);
        }
      out.set(i, j, std::move(acc));
    }
  return out;
}

}  // namespace bopp::testutil
