#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bopp/rational.hpp"
#include "bopp/varset.hpp"

namespace bopp {

/// Exponent vector over the slots of a VarSet. Trailing unused slots stay
/// zero, so order and equality may look at the whole array.
struct Monomial {
  std::array<std::uint8_t, kMaxSlots> exp{};

  int degree() const {
    int d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  bool is_constant() const {
    for (auto e : exp)
      if (e) return false;
    return true;
  }
  bool operator==(const Monomial& o) const { return exp == o.exp; }
};

/// Graded lexicographic order: lower total degree first; within a degree
/// class the larger exponent on an earlier slot comes first. Slot order is
/// (alpha, base, momenta, params), so this is the canonical print order.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::memcmp(a.exp.data(), b.exp.data(), kMaxSlots) > 0;
  }
};

/// Sparse multivariate polynomial with exact rational coefficients over a
/// shared VarSet. Immutable value semantics: every operation returns a
/// normalized polynomial (no explicit zero terms), and all arithmetic is
/// exact. The grading variable alpha is an ordinary slot; helpers below
/// truncate or slice by alpha degree, which is how order-by-order series
/// work is done.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  explicit Poly(VarSetPtr vs) : vs_(std::move(vs)) {
    if (!vs_) throw StructuralError("null varset");
  }

  static Poly zero(VarSetPtr vs) { return Poly(std::move(vs)); }

  static Poly constant(VarSetPtr vs, const Rational& c) {
    Poly p(std::move(vs));
    if (c != 0) p.terms_.emplace(Monomial{}, c);
    return p;
  }

  static Poly variable(VarSetPtr vs, Var v) {
    Poly p(vs);
    Monomial m;
    m.exp[static_cast<std::size_t>(vs->slot(v))] = 1;
    p.terms_.emplace(m, rat(1));
    return p;
  }

  static Poly monomial(VarSetPtr vs, const Monomial& m, const Rational& c) {
    Poly p(std::move(vs));
    if (c != 0) p.terms_.emplace(m, c);
    return p;
  }

  const VarSetPtr& varset() const { return vs_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Accumulates a term and drops it if the coefficient cancels.
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    require_same_varset(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    require_same_varset(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) {
    a += b;
    return a;
  }
  friend Poly operator-(Poly a, const Poly& b) {
    a -= b;
    return a;
  }

  Poly operator-() const {
    Poly r(vs_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  Poly scaled(const Rational& c) const {
    Poly r(vs_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
  }

  /// Product, optionally dropping every result monomial whose alpha degree
  /// reaches alpha_cap (alpha_cap < 0 disables the cut). The recurrence
  /// works modulo a fixed alpha order, so capped products avoid computing
  /// terms that would be truncated anyway.
  static Poly mul(const Poly& a, const Poly& b, int alpha_cap = -1) {
    a.require_same_varset(b);
    Poly r(a.vs_);
    if (a.is_zero() || b.is_zero()) return r;
    Monomial m;
    for (const auto& [ma, ca] : a.terms_) {
      const int alpha_a = ma.exp[0];
      for (const auto& [mb, cb] : b.terms_) {
        if (alpha_cap >= 0 && alpha_a + mb.exp[0] >= alpha_cap) continue;
        for (int s = 0; s < kMaxSlots; ++s) {
          const int e = ma.exp[s] + mb.exp[s];
          if (e > 255) throw StructuralError("exponent overflow");
          m.exp[s] = static_cast<std::uint8_t>(e);
        }
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) { return mul(a, b); }
  Poly& operator*=(const Poly& o) {
    *this = mul(*this, o);
    return *this;
  }

  /// Formal partial derivative with respect to any variable of the set
  /// (exponent rule; alpha and parameters are legal directions too).
  Poly derivative(Var v) const {
    const int s = vs_->slot(v);
    Poly r(vs_);
    for (const auto& [m, c] : terms_) {
      const int e = m.exp[static_cast<std::size_t>(s)];
      if (e == 0) continue;
      Monomial d = m;
      d.exp[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(e - 1);
      r.terms_.emplace(d, c * e);
    }
    return r;
  }

  /// Drops every monomial of alpha degree >= k.
  Poly truncate_alpha(int k) const {
    Poly r(vs_);
    for (const auto& [m, c] : terms_)
      if (m.exp[0] < k) r.terms_.emplace(m, c);
    return r;
  }

  /// Coefficient polynomial of alpha^k (the alpha factor removed).
  Poly alpha_slice(int k) const {
    Poly r(vs_);
    for (const auto& [m, c] : terms_)
      if (m.exp[0] == k) {
        Monomial d = m;
        d.exp[0] = 0;
        r.terms_.emplace(d, c);
      }
    return r;
  }

  Poly times_alpha_power(int k) const {
    Poly r(vs_);
    for (const auto& [m, c] : terms_) {
      const int e = m.exp[0] + k;
      if (e > 255) throw StructuralError("exponent overflow");
      Monomial d = m;
      d.exp[0] = static_cast<std::uint8_t>(e);
      r.terms_.emplace(d, c);
    }
    return r;
  }

  /// Highest alpha degree present, -1 for the zero polynomial.
  int max_alpha_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_)
      if (m.exp[0] > d) d = m.exp[0];
    return d;
  }

  int min_alpha_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_)
      if (d < 0 || m.exp[0] < d) d = m.exp[0];
    return d;
  }

  bool alpha_free() const {
    for (const auto& [m, c] : terms_)
      if (m.exp[0]) return false;
    return true;
  }

  int momentum_degree(const Monomial& m) const {
    const int n = vs_->dim();
    int d = 0;
    for (int i = 1; i <= n; ++i) d += m.exp[static_cast<std::size_t>(n + i)];
    return d;
  }

  bool momentum_free() const {
    for (const auto& [m, c] : terms_)
      if (momentum_degree(m)) return false;
    return true;
  }

  /// True when every monomial has momentum degree exactly d.
  bool momentum_homogeneous(int d) const {
    for (const auto& [m, c] : terms_)
      if (momentum_degree(m) != d) return false;
    return true;
  }

  /// True when only base coordinates and parameters appear.
  bool base_and_params_only() const {
    for (const auto& [m, c] : terms_)
      if (m.exp[0] || momentum_degree(m)) return false;
    return true;
  }

  /// Simultaneous substitution followed by expansion. Every image must live
  /// over the same VarSet. With alpha_cap >= 0 the expansion is done modulo
  /// alpha^alpha_cap.
  Poly substitute(const std::vector<std::pair<Var, Poly>>& images, int alpha_cap = -1) const {
    std::array<const Poly*, kMaxSlots> image_at{};
    for (const auto& [v, img] : images) {
      const int s = vs_->slot(v);  // throws for unknown variables
      img.require_same_varset(*this);
      if (image_at[static_cast<std::size_t>(s)])
        throw StructuralError("variable substituted twice: " + vs_->name(v));
      image_at[static_cast<std::size_t>(s)] = &img;
    }
    // Powers of each image, grown on demand; powers[s][e] = image^e.
    std::array<std::vector<Poly>, kMaxSlots> powers;
    auto power = [&](int s, int e) -> const Poly& {
      auto& cache = powers[static_cast<std::size_t>(s)];
      if (cache.empty()) cache.push_back(Poly::constant(vs_, rat(1)));
      while (static_cast<int>(cache.size()) <= e)
        cache.push_back(mul(cache.back(), *image_at[static_cast<std::size_t>(s)], alpha_cap));
      return cache[static_cast<std::size_t>(e)];
    };

    Poly out(vs_);
    const int slots = vs_->total_slots();
    for (const auto& [m, c] : terms_) {
      Monomial residual;
      Poly acc = Poly::zero(vs_);
      bool acc_started = false;
      for (int s = 0; s < slots; ++s) {
        const int e = m.exp[static_cast<std::size_t>(s)];
        if (!e) continue;
        if (!image_at[static_cast<std::size_t>(s)]) {
          residual.exp[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(e);
          continue;
        }
        const Poly& p = power(s, e);
        if (!acc_started) {
          acc = p;
          acc_started = true;
        } else {
          acc = mul(acc, p, alpha_cap);
        }
      }
      Poly piece = Poly::monomial(vs_, residual, c);
      if (acc_started) piece = mul(piece, acc, alpha_cap);
      out += piece;
    }
    if (alpha_cap >= 0) out = out.truncate_alpha(alpha_cap);
    return out;
  }

  bool operator==(const Poly& o) const { return *vs_ == *o.vs_ && terms_ == o.terms_; }

  /// Canonical rendering: terms in the fixed monomial order, coefficients
  /// as "p/q" (q omitted when 1), "*" between factors, "^" for exponents.
  /// Factor order inside a monomial: alpha, parameters, base, momenta.
  std::string str(NameStyle style = NameStyle::Darboux) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    const int n = vs_->dim();
    for (const auto& [m, c] : terms_) {
      const bool negative = c < 0;
      Rational abs_c = negative ? Rational(-c) : c;
      if (first) {
        if (negative) out += "-";
        first = false;
      } else {
        out += negative ? " - " : " + ";
      }
      std::string factors;
      auto emit = [&](int slot_index) {
        const int e = m.exp[static_cast<std::size_t>(slot_index)];
        if (!e) return;
        if (!factors.empty()) factors += "*";
        factors += vs_->name(vs_->var_at(slot_index), style);
        if (e > 1) factors += "^" + std::to_string(e);
      };
      emit(0);
      for (int k = 0; k < vs_->param_count(); ++k) emit(1 + 2 * n + k);
      for (int i = 1; i <= n; ++i) emit(i);
      for (int i = 1; i <= n; ++i) emit(n + i);
      if (factors.empty()) {
        out += to_string(abs_c);
      } else {
        if (abs_c != 1) out += to_string(abs_c) + "*";
        out += factors;
      }
    }
    return out;
  }

  std::size_t monomial_count() const { return terms_.size(); }

 private:
  void require_same_varset(const Poly& o) const {
    if (!(*vs_ == *o.vs_)) throw StructuralError("polynomials over different variable sets");
  }

  VarSetPtr vs_;
  TermMap terms_;
};

/// Canonical Poisson bracket in Darboux coordinates:
///   {f, g} = sum_k  df/dy_k dg/dpi_k - df/dpi_k dg/dy_k.
/// Bilinear, antisymmetric, Leibniz and Jacobi hold exactly. alpha and
/// parameters behave as constants. alpha_cap as in Poly::mul.
inline Poly canonical_bracket(const Poly& f, const Poly& g, int alpha_cap = -1) {
  if (!(*f.varset() == *g.varset()))
    throw StructuralError("bracket of polynomials over different variable sets");
  Poly out(f.varset());
  const int n = f.varset()->dim();
  for (int k = 1; k <= n; ++k) {
    Poly fy = f.derivative(Var::base(k));
    if (!fy.is_zero()) {
      Poly gp = g.derivative(Var::momentum(k));
      if (!gp.is_zero()) out += Poly::mul(fy, gp, alpha_cap);
    }
    Poly fp = f.derivative(Var::momentum(k));
    if (!fp.is_zero()) {
      Poly gy = g.derivative(Var::base(k));
      if (!gy.is_zero()) out -= Poly::mul(fp, gy, alpha_cap);
    }
  }
  return out;
}

}  // namespace bopp
