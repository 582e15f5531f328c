#pragma once

#include <map>
#include <utility>

#include "bopp/tensor.hpp"

namespace bopp {

/// Antisymmetric matrix of polynomial entries in the base coordinates and
/// parameters: the structure tensor of a quasi-Poisson bracket
/// {x^i, x^j} = alpha * Theta^{ij}(x). Only the upper triangle is stored;
/// the lower triangle is the negation, the diagonal is zero.
class Bivector {
 public:
  explicit Bivector(VarSetPtr vs) : vs_(std::move(vs)) {}

  const VarSetPtr& varset() const { return vs_; }
  int dim() const { return vs_->dim(); }
  bool is_zero() const { return upper_.empty(); }
  const std::map<std::pair<int, int>, Poly>& upper_entries() const { return upper_; }

  void set(int i, int j, Poly value) {
    validate(i, j);
    if (i == j) {
      if (!value.is_zero()) throw StructuralError("diagonal bivector entry must vanish");
      return;
    }
    if (!value.base_and_params_only())
      throw StructuralError("bivector entries must be polynomials in base coordinates and parameters");
    const bool flip = i > j;
    auto key = flip ? std::make_pair(j, i) : std::make_pair(i, j);
    if (value.is_zero()) {
      upper_.erase(key);
      return;
    }
    upper_.insert_or_assign(key, flip ? -value : std::move(value));
  }

  Poly get(int i, int j) const {
    validate(i, j);
    if (i == j) return Poly::zero(vs_);
    const bool flip = i > j;
    auto it = upper_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
    if (it == upper_.end()) return Poly::zero(vs_);
    return flip ? -it->second : it->second;
  }

  bool operator==(const Bivector& o) const { return *vs_ == *o.vs_ && upper_ == o.upper_; }

 private:
  void validate(int i, int j) const {
    if (i < 1 || i > dim() || j < 1 || j > dim())
      throw StructuralError("bivector index out of range");
  }

  VarSetPtr vs_;
  std::map<std::pair<int, int>, Poly> upper_;
};

/// Jacobiator of a bivector,
///   Pi^{ijk} = (1/3)(Theta^{il} d_l Theta^{jk} + Theta^{kl} d_l Theta^{ij}
///                    + Theta^{jl} d_l Theta^{ki}),
/// totally antisymmetric; zero exactly for Poisson structures.
inline Trivector jacobiator(const Bivector& theta) {
  const auto& vs = theta.varset();
  Trivector out(vs);
  const int n = theta.dim();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        Poly acc(vs);
        for (int l = 1; l <= n; ++l) {
          acc += theta.get(i, l) * theta.get(j, k).derivative(Var::base(l));
          acc += theta.get(k, l) * theta.get(i, j).derivative(Var::base(l));
          acc += theta.get(j, l) * theta.get(k, i).derivative(Var::base(l));
        }
        out.set(i, j, k, acc.scaled(rat(1, 3)));
      }
  return out;
}

/// Quasi-Poisson bracket alpha * Theta^{ij} d_i f d_j g for f, g in the
/// base coordinates only.
inline Poly quasi_bracket(const Poly& f, const Poly& g, const Bivector& theta) {
  if (!(*f.varset() == *theta.varset()) || !(*g.varset() == *theta.varset()))
    throw StructuralError("bracket arguments over different variable sets");
  if (!f.base_and_params_only() || !g.base_and_params_only())
    throw StructuralError("quasi-bracket arguments must depend on base coordinates only");
  const auto& vs = theta.varset();
  const int n = theta.dim();
  Poly out(vs);
  for (int i = 1; i <= n; ++i) {
    Poly fi = f.derivative(Var::base(i));
    if (fi.is_zero()) continue;
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      Poly gj = g.derivative(Var::base(j));
      if (gj.is_zero()) continue;
      out += theta.get(i, j) * fi * gj;
    }
  }
  return out.times_alpha_power(1);
}

/// Ten-term identity bundling the bivector with its jacobiator; it holds
/// identically for every bivector (it encodes the rebracketing identity of
/// the two- and three-brackets), so a nonzero value signals an engine bug.
inline SymTensor fundamental_identity_defect(const Bivector& theta) {
  const auto& vs = theta.varset();
  const int n = theta.dim();
  const Trivector pi = jacobiator(theta);
  SymTensor out(vs, 4, 0, LeadSymmetry::None);
  for (const auto& lead : detail::tuples(n, 4)) {
    const int i = lead[0], j = lead[1], k = lead[2], l = lead[3];
    Poly acc(vs);
    for (int m = 1; m <= n; ++m) {
      acc += pi.get(i, j, m) * theta.get(k, l).derivative(Var::base(m));
      acc -= pi.get(j, k, m) * theta.get(l, i).derivative(Var::base(m));
      acc += pi.get(k, l, m) * theta.get(i, j).derivative(Var::base(m));
      acc -= pi.get(l, i, m) * theta.get(j, k).derivative(Var::base(m));
      acc -= pi.get(i, k, m) * theta.get(j, l).derivative(Var::base(m));
      acc += pi.get(j, l, m) * theta.get(k, i).derivative(Var::base(m));
      acc += theta.get(l, m) * pi.get(i, j, k).derivative(Var::base(m));
      acc -= theta.get(i, m) * pi.get(j, k, l).derivative(Var::base(m));
      acc += theta.get(j, m) * pi.get(k, l, i).derivative(Var::base(m));
      acc -= theta.get(k, m) * pi.get(l, i, j).derivative(Var::base(m));
    }
    if (!acc.is_zero()) out.set(lead, {}, std::move(acc));
  }
  return out;
}

}  // namespace bopp
