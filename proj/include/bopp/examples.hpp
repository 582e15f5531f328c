#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bopp/bivector.hpp"
#include "bopp/octonion.hpp"

namespace bopp {

namespace detail {

/// Exact Gauss-Jordan inverse with partial pivoting.
inline std::vector<std::vector<Rational>> invert_matrix(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = rat(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw SingularityError("matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline Rational rational_factorial(int n) {
  Rational f = rat(1);
  for (int i = 2; i <= n; ++i) f *= rat(i);
  return f;
}

}  // namespace detail

/// Phase-space bivector of the constant R-flux background, dim 6 with
/// coordinates (x1,x2,x3, p1,p2,p3) = (x1..x6) and one parameter r:
///   Theta^{ij} = r eps^{ijk} p_k,  Theta^{i,j+3} = delta^i_j,
///   Theta^{i+3,j+3} = 0.
inline Bivector build_r_flux() {
  auto vs = make_varset(6, {"r"});
  Poly r = Poly::variable(vs, Var::param(0));
  Bivector theta(vs);
  theta.set(1, 2, r * Poly::variable(vs, Var::base(6)));
  theta.set(1, 3, -(r * Poly::variable(vs, Var::base(5))));
  theta.set(2, 3, r * Poly::variable(vs, Var::base(4)));
  theta.set(1, 4, Poly::constant(vs, rat(1)));
  theta.set(2, 5, Poly::constant(vs, rat(1)));
  theta.set(3, 6, Poly::constant(vs, rat(1)));
  return theta;
}

/// su(2)-like Poisson structure Theta^{ij} = 2 eps_{ijk} x_k (dim 3).
inline Bivector build_su2() {
  auto vs = make_varset(3);
  Bivector theta(vs);
  theta.set(1, 2, Poly::variable(vs, Var::base(3)).scaled(rat(2)));
  theta.set(1, 3, Poly::variable(vs, Var::base(2)).scaled(rat(-2)));
  theta.set(2, 3, Poly::variable(vs, Var::base(1)).scaled(rat(2)));
  return theta;
}

/// Quasi-Poisson structure isomorphic to the commutator algebra of the
/// imaginary octonions: Theta^{AB} = 2 eta_{ABC} x_C (dim 7).
inline Bivector build_octonion(const OctonionStructure& s = OctonionStructure()) {
  auto vs = make_varset(7);
  Bivector theta(vs);
  for (int a = 1; a <= 7; ++a)
    for (int b = a + 1; b <= 7; ++b) {
      Poly e(vs);
      for (int c = 1; c <= 7; ++c) {
        const int v = s.eta3(a, b, c);
        if (v) e += Poly::variable(vs, Var::base(c)).scaled(rat(2 * v));
      }
      theta.set(a, b, std::move(e));
    }
  return theta;
}

/// The M-theory R-flux uplift: the octonion structure constants conjugated
/// by the 7x7 contraction matrix, at an exact rational instantiation of
/// (lambda, r, q) with q^2 = lambda * r. Coordinates (x1..x3, x4, p1..p3).
struct MTheoryExample {
  Bivector theta;
  std::vector<std::vector<Rational>> lambda_matrix;   // 7x7 transform
  std::vector<std::vector<Rational>> lambda_inverse;
  std::vector<Rational> lam3;  // conjugated rank-3 constants, 7^3
  std::vector<Rational> lam4;  // conjugated rank-4 constants, 7^4
  Rational lambda, r, q;

  const Rational& lam3_at(int a, int b, int c) const {
    return lam3[static_cast<std::size_t>(((a - 1) * 7 + (b - 1)) * 7 + (c - 1))];
  }
  const Rational& lam4_at(int a, int b, int c, int d) const {
    return lam4[static_cast<std::size_t>((((a - 1) * 7 + (b - 1)) * 7 + (c - 1)) * 7 + (d - 1))];
  }
};

inline MTheoryExample build_mtheory(const Rational& lambda, const Rational& r, const Rational& q,
                                    const OctonionStructure& s = OctonionStructure()) {
  if (lambda == 0 || r == 0 || q == 0)
    throw SingularityError("transform matrix degenerates when a parameter vanishes");
  if (q * q != lambda * r)
    throw PreconditionError("instantiation must satisfy q^2 = lambda * r exactly");

  std::vector<std::vector<Rational>> L(7, std::vector<Rational>(7, rat(0)));
  const Rational half = rat(1, 2);
  for (int i = 1; i <= 3; ++i) L[i - 1][i + 3 - 1] = q * half;
  L[4 - 1][7 - 1] = lambda * q * half;
  for (int i = 1; i <= 3; ++i) L[4 + i - 1][i - 1] = -lambda * half;
  auto Linv = detail::invert_matrix(L);

  MTheoryExample ex{Bivector(make_varset(7)), L, Linv, {}, {}, lambda, r, q};
  ex.lam3.assign(7 * 7 * 7, rat(0));
  ex.lam4.assign(7 * 7 * 7 * 7, rat(0));

  // Support of the seed tables, listed once.
  std::vector<std::array<int, 4>> support3;  // (a', b', c', value)
  for (int a = 1; a <= 7; ++a)
    for (int b = 1; b <= 7; ++b)
      for (int c = 1; c <= 7; ++c)
        if (int v = s.eta3(a, b, c)) support3.push_back({a, b, c, v});
  std::vector<std::array<int, 5>> support4;
  for (int a = 1; a <= 7; ++a)
    for (int b = 1; b <= 7; ++b)
      for (int c = 1; c <= 7; ++c)
        for (int d = 1; d <= 7; ++d)
          if (int v = s.eta4(a, b, c, d)) support4.push_back({a, b, c, d, v});

  for (int a = 1; a <= 7; ++a)
    for (int b = 1; b <= 7; ++b)
      for (int c = 1; c <= 7; ++c) {
        Rational acc = rat(0);
        for (const auto& t : support3)
          acc += L[a - 1][t[0] - 1] * L[b - 1][t[1] - 1] * Linv[t[2] - 1][c - 1] * rat(t[3]);
        ex.lam3[static_cast<std::size_t>(((a - 1) * 7 + (b - 1)) * 7 + (c - 1))] = acc;
      }
  for (int a = 1; a <= 7; ++a)
    for (int b = 1; b <= 7; ++b)
      for (int c = 1; c <= 7; ++c)
        for (int d = 1; d <= 7; ++d) {
          Rational acc = rat(0);
          for (const auto& t : support4)
            acc += L[a - 1][t[0] - 1] * L[b - 1][t[1] - 1] * L[c - 1][t[2] - 1] *
                   Linv[t[3] - 1][d - 1] * rat(t[4]);
          ex.lam4[static_cast<std::size_t>((((a - 1) * 7 + (b - 1)) * 7 + (c - 1)) * 7 +
                                           (d - 1))] = acc;
        }

  const auto& vs = ex.theta.varset();
  for (int a = 1; a <= 7; ++a)
    for (int b = a + 1; b <= 7; ++b) {
      Poly e(vs);
      for (int c = 1; c <= 7; ++c) {
        const Rational& v = ex.lam3_at(a, b, c);
        if (v != 0) e += Poly::variable(vs, Var::base(c)).scaled(v * 2);
      }
      ex.theta.set(a, b, std::move(e));
    }
  return ex;
}

/// Exact Bernoulli numbers B_0..B_upto (B_1 = -1/2 convention).
inline std::vector<Rational> bernoulli_numbers(int upto) {
  std::vector<Rational> b(static_cast<std::size_t>(upto) + 1, rat(0));
  b[0] = rat(1);
  for (int m = 1; m <= upto; ++m) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    Rational acc = rat(0);
    Rational binom = rat(1);  // C(m+1, 0)
    for (int j = 0; j < m; ++j) {
      acc += binom * b[static_cast<std::size_t>(j)];
      binom = binom * rat(m + 1 - j) / rat(j + 1);
    }
    b[static_cast<std::size_t>(m)] = -acc / binom;
  }
  return b;
}

inline constexpr int kDefaultOracleCap = 6;

/// Taylor coefficients c_0..c_K (in t) of the closed-form profile
/// functions:
///   chi(t) = -(sqrt(t) cot sqrt(t) - 1)/t        (cot via Bernoulli numbers)
///   phi(t) = 2 sin(2 sqrt(t))/sqrt(t)
///   psi(t) = 4 sin^2(sqrt(t))/t
struct SeriesOracle {
  std::string name;
  std::vector<Rational> coeffs;  // coeffs[m] multiplies t^m
};

inline SeriesOracle series_oracle(const std::string& name, int K, int cap = kDefaultOracleCap) {
  if (K < 0 || K > cap) throw RangeError("oracle order exceeds the configured cap");
  SeriesOracle o{name, {}};
  o.coeffs.reserve(static_cast<std::size_t>(K) + 1);
  if (name == "chi") {
    // sqrt(t) cot sqrt(t) = sum_m (-1)^m 2^{2m} B_{2m} t^m / (2m)!
    auto b = bernoulli_numbers(2 * (K + 1));
    for (int m = 0; m <= K; ++m) {
      const int mm = m + 1;
      Rational s = b[static_cast<std::size_t>(2 * mm)] * rat((mm % 2) ? -1 : 1) /
                   detail::rational_factorial(2 * mm);
      Rational p2 = rat(1);
      for (int i = 0; i < 2 * mm; ++i) p2 *= rat(2);
      o.coeffs.push_back(-(s * p2));
    }
  } else if (name == "phi") {
    for (int m = 0; m <= K; ++m) {
      Rational p2 = rat(1);
      for (int i = 0; i < 2 * m + 2; ++i) p2 *= rat(2);
      o.coeffs.push_back(p2 * rat((m % 2) ? -1 : 1) / detail::rational_factorial(2 * m + 1));
    }
  } else if (name == "psi") {
    for (int m = 0; m <= K; ++m) {
      Rational p2 = rat(1);
      for (int i = 0; i < 2 * m + 3; ++i) p2 *= rat(2);
      o.coeffs.push_back(p2 * rat((m % 2) ? -1 : 1) / detail::rational_factorial(2 * m + 2));
    }
  } else {
    throw ParseError("unknown series oracle: " + name);
  }
  return o;
}

/// Residual coefficients of the defining equation of chi,
///   2 t chi' + 3 chi - 1 - t chi^2,
/// through t^K; all must vanish.
inline std::vector<Rational> chi_ode_residual(int K, int cap = kDefaultOracleCap) {
  auto chi = series_oracle("chi", K, cap).coeffs;
  std::vector<Rational> res;
  res.reserve(static_cast<std::size_t>(K) + 1);
  for (int m = 0; m <= K; ++m) {
    Rational v = chi[static_cast<std::size_t>(m)] * rat(2 * m + 3);
    if (m == 0) v -= rat(1);
    for (int a = 0; a < m; ++a)
      v -= chi[static_cast<std::size_t>(a)] * chi[static_cast<std::size_t>(m - 1 - a)];
    res.push_back(v);
  }
  return res;
}

namespace detail {

inline Poly momentum_square(const VarSetPtr& vs) {
  Poly p(vs);
  for (int i = 1; i <= vs->dim(); ++i) {
    Poly m = Poly::variable(vs, Var::momentum(i));
    p += m * m;
  }
  return p;
}

inline Poly base_dot_momentum(const VarSetPtr& vs) {
  Poly p(vs);
  for (int i = 1; i <= vs->dim(); ++i)
    p += Poly::variable(vs, Var::base(i)) * Poly::variable(vs, Var::momentum(i));
  return p;
}

}  // namespace detail

/// Closed-form generalized Bopp shift of the octonion example expanded to
/// alpha order K (every momentum carries one power of alpha):
///   x_A = y_A - eta_{ABC} pi_B y_C - (y_A pi^2 - pi_A y.pi) chi(pi^2).
inline std::vector<Poly> closed_form_bopp_octonion(int K, const OctonionStructure& s = OctonionStructure(),
                                                   int cap = kDefaultOracleCap) {
  auto vs = make_varset(7);
  auto chi = series_oracle("chi", std::max(0, (K - 2) / 2), cap).coeffs;
  const Poly p2 = detail::momentum_square(vs);
  const Poly ydp = detail::base_dot_momentum(vs);
  std::vector<Poly> out;
  for (int a = 1; a <= 7; ++a) {
    Poly x = Poly::variable(vs, Var::base(a));
    for (int b = 1; b <= 7; ++b)
      for (int c = 1; c <= 7; ++c) {
        const int v = s.eta3(a, b, c);
        if (!v) continue;
        x -= (Poly::variable(vs, Var::momentum(b)) * Poly::variable(vs, Var::base(c)))
                 .scaled(rat(v))
                 .times_alpha_power(1);
      }
    Poly hook = Poly::variable(vs, Var::base(a)) * p2;
    hook -= Poly::variable(vs, Var::momentum(a)) * ydp;
    Poly p2_power = Poly::constant(vs, rat(1));
    for (std::size_t m = 0; m < chi.size(); ++m) {
      const int alpha_deg = static_cast<int>(2 * m) + 2;
      if (alpha_deg > K) break;
      x -= (hook * p2_power).scaled(chi[m]).times_alpha_power(alpha_deg);
      p2_power *= p2;
    }
    out.push_back(x.truncate_alpha(K + 1));
  }
  return out;
}

/// Closed-form bracket matrix omega_{AB}(x, xt) of the octonion example to
/// alpha order K (upper triangle; xt lives in the momentum slots):
///   omega = 2 eta_{ABC} x_C + phi(xt^2) eta_{ABCD} xt_C x_D
///         + psi(xt^2) eta_{ABCD} eta_{DEF} xt_C xt_E x_F.
inline std::map<std::pair<int, int>, Poly> closed_form_omega_octonion(
    int K, const OctonionStructure& s = OctonionStructure(), int cap = kDefaultOracleCap) {
  auto vs = make_varset(7);
  auto phi = series_oracle("phi", std::max(0, (K - 1) / 2), cap).coeffs;
  auto psi = series_oracle("psi", std::max(0, (K - 2) / 2), cap).coeffs;
  const Poly t2 = detail::momentum_square(vs);
  std::map<std::pair<int, int>, Poly> out;
  for (int a = 1; a <= 7; ++a)
    for (int b = a + 1; b <= 7; ++b) {
      Poly w(vs);
      for (int c = 1; c <= 7; ++c)
        if (int v = s.eta3(a, b, c)) w += Poly::variable(vs, Var::base(c)).scaled(rat(2 * v));

      Poly phi_hook(vs);
      for (int c = 1; c <= 7; ++c)
        for (int d = 1; d <= 7; ++d)
          if (int v = s.eta4(a, b, c, d))
            phi_hook += (Poly::variable(vs, Var::momentum(c)) * Poly::variable(vs, Var::base(d)))
                            .scaled(rat(v));
      Poly psi_hook(vs);
      for (int c = 1; c <= 7; ++c)
        for (int d = 1; d <= 7; ++d) {
          const int v1 = s.eta4(a, b, c, d);
          if (!v1) continue;
          for (int e = 1; e <= 7; ++e)
            for (int f = 1; f <= 7; ++f) {
              const int v2 = s.eta3(d, e, f);
              if (!v2) continue;
              psi_hook += (Poly::variable(vs, Var::momentum(c)) *
                           Poly::variable(vs, Var::momentum(e)) *
                           Poly::variable(vs, Var::base(f)))
                              .scaled(rat(v1 * v2));
            }
        }

      Poly t2_power = Poly::constant(vs, rat(1));
      for (std::size_t m = 0;; ++m) {
        const int phi_deg = static_cast<int>(2 * m) + 1;
        const int psi_deg = static_cast<int>(2 * m) + 2;
        bool any = false;
        if (phi_deg <= K && m < phi.size()) {
          w += (phi_hook * t2_power).scaled(phi[m]).times_alpha_power(phi_deg);
          any = true;
        }
        if (psi_deg <= K && m < psi.size()) {
          w += (psi_hook * t2_power).scaled(psi[m]).times_alpha_power(psi_deg);
          any = true;
        }
        if (!any) break;
        t2_power *= t2;
      }
      w = w.truncate_alpha(K + 1);
      if (!w.is_zero()) out.emplace(std::make_pair(a, b), std::move(w));
    }
  return out;
}

/// Closed-form {x_A, xt_B} table of the octonion example to alpha order K:
///   delta_AB + eta_{ABC} xt_C - (delta_AB xt^2 - xt_A xt_B) chi(xt^2).
inline std::map<std::pair<int, int>, Poly> closed_form_x_xt_octonion(
    int K, const OctonionStructure& s = OctonionStructure(), int cap = kDefaultOracleCap) {
  auto vs = make_varset(7);
  auto chi = series_oracle("chi", std::max(0, (K - 2) / 2), cap).coeffs;
  const Poly t2 = detail::momentum_square(vs);
  std::map<std::pair<int, int>, Poly> out;
  for (int a = 1; a <= 7; ++a)
    for (int b = 1; b <= 7; ++b) {
      Poly w = a == b ? Poly::constant(vs, rat(1)) : Poly(vs);
      for (int c = 1; c <= 7; ++c)
        if (int v = s.eta3(a, b, c))
          w += Poly::variable(vs, Var::momentum(c)).scaled(rat(v)).times_alpha_power(1);
      Poly hook = a == b ? t2 : Poly(vs);
      hook -= Poly::variable(vs, Var::momentum(a)) * Poly::variable(vs, Var::momentum(b));
      Poly t2_power = Poly::constant(vs, rat(1));
      for (std::size_t m = 0; m < chi.size(); ++m) {
        const int deg = static_cast<int>(2 * m) + 2;
        if (deg > K) break;
        w -= (hook * t2_power).scaled(chi[m]).times_alpha_power(deg);
        t2_power *= t2;
      }
      w = w.truncate_alpha(K + 1);
      if (!w.is_zero()) out.emplace(std::make_pair(a, b), std::move(w));
    }
  return out;
}

/// su(2) restriction of the closed forms (dim 3; the rank-4 table vanishes
/// in three dimensions, so only the chi profile survives).
inline std::vector<Poly> closed_form_bopp_su2(int K, int cap = kDefaultOracleCap) {
  auto vs = make_varset(3);
  OctonionStructure s;  // eta restricted to 1..3 is the alternating symbol
  auto chi = series_oracle("chi", std::max(0, (K - 2) / 2), cap).coeffs;
  const Poly p2 = detail::momentum_square(vs);
  const Poly ydp = detail::base_dot_momentum(vs);
  std::vector<Poly> out;
  for (int a = 1; a <= 3; ++a) {
    Poly x = Poly::variable(vs, Var::base(a));
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c) {
        const int v = s.eta3(a, b, c);
        if (!v) continue;
        x -= (Poly::variable(vs, Var::momentum(b)) * Poly::variable(vs, Var::base(c)))
                 .scaled(rat(v))
                 .times_alpha_power(1);
      }
    Poly hook = Poly::variable(vs, Var::base(a)) * p2;
    hook -= Poly::variable(vs, Var::momentum(a)) * ydp;
    Poly p2_power = Poly::constant(vs, rat(1));
    for (std::size_t m = 0; m < chi.size(); ++m) {
      const int deg = static_cast<int>(2 * m) + 2;
      if (deg > K) break;
      x -= (hook * p2_power).scaled(chi[m]).times_alpha_power(deg);
      p2_power *= p2;
    }
    out.push_back(x.truncate_alpha(K + 1));
  }
  return out;
}

inline std::map<std::pair<int, int>, Poly> closed_form_x_xt_su2(int K,
                                                                int cap = kDefaultOracleCap) {
  auto vs = make_varset(3);
  OctonionStructure s;
  auto chi = series_oracle("chi", std::max(0, (K - 2) / 2), cap).coeffs;
  const Poly t2 = detail::momentum_square(vs);
  std::map<std::pair<int, int>, Poly> out;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      Poly w = a == b ? Poly::constant(vs, rat(1)) : Poly(vs);
      for (int c = 1; c <= 3; ++c)
        if (int v = s.eta3(a, b, c))
          w += Poly::variable(vs, Var::momentum(c)).scaled(rat(v)).times_alpha_power(1);
      Poly hook = a == b ? t2 : Poly(vs);
      hook -= Poly::variable(vs, Var::momentum(a)) * Poly::variable(vs, Var::momentum(b));
      Poly t2_power = Poly::constant(vs, rat(1));
      for (std::size_t m = 0; m < chi.size(); ++m) {
        const int deg = static_cast<int>(2 * m) + 2;
        if (deg > K) break;
        w -= (hook * t2_power).scaled(chi[m]).times_alpha_power(deg);
        t2_power *= t2;
      }
      w = w.truncate_alpha(K + 1);
      if (!w.is_zero()) out.emplace(std::make_pair(a, b), std::move(w));
    }
  return out;
}

struct ExampleSpec {
  std::string name;
  int dim = 0;
  std::vector<std::string> params;
  std::string summary;
  std::function<Bivector()> build;
};

inline const std::vector<ExampleSpec>& builtin_examples() {
  static const std::vector<ExampleSpec> specs = {
      {"r-flux", 6, {"r"},
       "constant R-flux phase-space algebra, coordinates (x1..x3, p1..p3)",
       [] { return build_r_flux(); }},
      {"su2", 3, {},
       "su(2)-like Poisson structure Theta^{ij} = 2 eps_{ijk} x_k",
       [] { return build_su2(); }},
      {"octonion", 7, {},
       "quasi-Poisson structure of the imaginary octonion commutators",
       [] { return build_octonion(); }},
      {"mtheory", 7, {},
       "M-theory R-flux algebra at the rational instantiation lambda=1, r=4, q=2",
       [] { return build_mtheory(rat(1), rat(4), rat(2)).theta; }},
  };
  return specs;
}

inline Bivector build_example(const std::string& name) {
  for (const auto& e : builtin_examples())
    if (e.name == name) return e.build();
  throw ParseError("unknown example: " + name);
}

}  // namespace bopp
