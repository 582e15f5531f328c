#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bopp/bivector.hpp"
#include "bopp/tensor.hpp"

namespace bopp {

namespace detail {

/// Simultaneous substitution of the base coordinates by fixed images, with
/// a shared power cache so many small polynomials can be pushed through
/// the same Bopp image cheaply. Momenta, alpha and parameters pass
/// through untouched. All expansion happens modulo alpha^cap when cap >= 0.
class Substituter {
 public:
  Substituter(VarSetPtr vs, const std::vector<Poly>& base_images, int alpha_cap)
      : vs_(std::move(vs)), images_(base_images), cap_(alpha_cap) {
    if (static_cast<int>(images_.size()) != vs_->dim())
      throw StructuralError("need one image per base coordinate");
    powers_.resize(images_.size());
  }

  Poly apply(const Poly& f) const {
    Poly out(vs_);
    const int n = vs_->dim();
    for (const auto& [m, c] : f.terms()) {
      Monomial residual = m;
      Poly acc = Poly::constant(vs_, rat(1));
      bool nontrivial = false;
      for (int i = 1; i <= n; ++i) {
        const int s = vs_->slot(Var::base(i));
        const int e = m.exp[static_cast<std::size_t>(s)];
        if (!e) continue;
        residual.exp[static_cast<std::size_t>(s)] = 0;
        const Poly& p = power(i - 1, e);
        acc = nontrivial ? Poly::mul(acc, p, cap_) : p;
        nontrivial = true;
      }
      Poly piece = Poly::monomial(vs_, residual, c);
      out += nontrivial ? Poly::mul(piece, acc, cap_) : piece;
    }
    if (cap_ >= 0) out = out.truncate_alpha(cap_);
    return out;
  }

 private:
  const Poly& power(int image_index, int e) const {
    auto& cache = powers_[static_cast<std::size_t>(image_index)];
    if (cache.empty()) cache.push_back(Poly::constant(vs_, rat(1)));
    while (static_cast<int>(cache.size()) <= e)
      cache.push_back(Poly::mul(cache.back(), images_[static_cast<std::size_t>(image_index)], cap_));
    return cache[static_cast<std::size_t>(e)];
  }

  VarSetPtr vs_;
  std::vector<Poly> images_;
  int cap_;
  mutable std::vector<std::vector<Poly>> powers_;
};

/// Cached first derivatives of one phase-space function.
struct PartialSet {
  std::vector<Poly> dy;   // [i-1] = d/dy_i
  std::vector<Poly> dpi;  // [i-1] = d/dpi_i
};

inline PartialSet make_partials(const Poly& f) {
  const int n = f.varset()->dim();
  PartialSet p;
  p.dy.reserve(n);
  p.dpi.reserve(n);
  for (int i = 1; i <= n; ++i) {
    p.dy.push_back(f.derivative(Var::base(i)));
    p.dpi.push_back(f.derivative(Var::momentum(i)));
  }
  return p;
}

inline Poly bracket_partials(const PartialSet& f, const PartialSet& g, VarSetPtr vs,
                             int alpha_cap) {
  Poly out(vs);
  const int n = vs->dim();
  for (int i = 0; i < n; ++i) {
    if (!f.dy[i].is_zero() && !g.dpi[i].is_zero())
      out += Poly::mul(f.dy[i], g.dpi[i], alpha_cap);
    if (!f.dpi[i].is_zero() && !g.dy[i].is_zero())
      out -= Poly::mul(f.dpi[i], g.dy[i], alpha_cap);
  }
  return out;
}

/// Per-order working set: the Bopp image x_k, its partials, and the known
/// part of the bracket matrix evaluated on it,
///   W^{ij} = sum_{m=0}^{k-1} alpha^m Theta^{ij(m)}(x_k) pi^m   (mod alpha^{k+1}),
/// which is the series of corrections accumulated so far pushed through
/// the current Bopp image.
struct OrderContext {
  int order = 0;  // k
  VarSetPtr vs;
  std::vector<Poly> x;
  std::vector<PartialSet> x_partials;
  std::map<std::pair<int, int>, Poly> w;  // i<j only, upper triangle

  Poly w_at(int i, int j) const {
    if (i == j) return Poly::zero(vs);
    auto it = w.find(i < j ? std::make_pair(i, j) : std::make_pair(j, i));
    if (it == w.end()) return Poly::zero(vs);
    return i < j ? it->second : -it->second;
  }
};

inline std::vector<Poly> bopp_series(const Bivector& theta,
                                     const std::vector<SymTensor>& gammas, int upto) {
  const auto& vs = theta.varset();
  std::vector<Poly> x;
  x.reserve(static_cast<std::size_t>(theta.dim()));
  for (int i = 1; i <= theta.dim(); ++i) {
    Poly xi = Poly::variable(vs, Var::base(i));
    for (int m = 1; m <= upto; ++m) xi += gammas[static_cast<std::size_t>(m - 1)].assemble({i});
    x.push_back(std::move(xi));
  }
  return x;
}

inline OrderContext make_order_context(const Bivector& theta,
                                       const std::vector<SymTensor>& gammas,
                                       const std::vector<SymTensor>& thetas, int k) {
  if (static_cast<int>(gammas.size()) < k)
    throw RangeError("shift tensors missing below the requested order");
  if (k >= 1 && static_cast<int>(thetas.size()) < k - 1)
    throw RangeError("correction tensors missing below the requested order");
  OrderContext ctx;
  ctx.order = k;
  ctx.vs = theta.varset();
  ctx.x = bopp_series(theta, gammas, k);
  ctx.x_partials.reserve(ctx.x.size());
  for (const auto& xi : ctx.x) ctx.x_partials.push_back(make_partials(xi));

  if (k >= 1) {
    const int cap = k + 1;
    Substituter subst(ctx.vs, ctx.x, cap);
    const int n = theta.dim();
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        Poly acc = subst.apply(theta.get(i, j));
        for (int m = 1; m <= k - 1; ++m) {
          const SymTensor& th = thetas[static_cast<std::size_t>(m - 1)];
          Poly layer(ctx.vs);
          for (const auto& [key, value] : th.entries()) {
            if (key.first != IndexTuple{i, j}) continue;
            Monomial mono;
            for (int idx : key.second)
              ++mono.exp[static_cast<std::size_t>(ctx.vs->slot(Var::momentum(idx)))];
            layer += Poly::mul(subst.apply(value),
                               Poly::monomial(ctx.vs, mono, rat(orderings_count(key.second))),
                               cap);
          }
          acc += layer.times_alpha_power(m).truncate_alpha(cap);
        }
        if (!acc.is_zero()) ctx.w.emplace(std::make_pair(i, j), std::move(acc));
      }
  }
  return ctx;
}

/// F tensor of one order: cyclic bracket sum of the Bopp image against the
/// accumulated bracket matrix,
///   F^{ijc} = {x^c, W^{ij}} + {x^j, W^{ci}} + {x^i, W^{jc}}  (mod alpha^{k+1}),
/// which must start at order alpha^k; the alpha^k slice is extracted as a
/// lead-antisymmetric tensor with a symmetric tail of k-1 momenta indices.
inline SymTensor extract_F(const OrderContext& ctx, int k) {
  const int cap = k + 1;
  const int n = ctx.vs->dim();

  std::map<std::pair<int, int>, PartialSet> w_partials;
  for (const auto& [key, value] : ctx.w) w_partials.emplace(key, make_partials(value));
  auto bracket_xw = [&](int c, int a, int b) -> Poly {
    // {x^c, W^{ab}} with sign handling for a>b.
    if (a == b) return Poly::zero(ctx.vs);
    const bool flip = a > b;
    auto it = w_partials.find(flip ? std::make_pair(b, a) : std::make_pair(a, b));
    if (it == w_partials.end()) return Poly::zero(ctx.vs);
    Poly r = bracket_partials(ctx.x_partials[static_cast<std::size_t>(c - 1)], it->second,
                              ctx.vs, cap);
    return flip ? -r : r;
  };

  std::map<IndexTuple, Poly> components;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int c = j + 1; c <= n; ++c) {
        Poly f = bracket_xw(c, i, j);
        f += bracket_xw(j, c, i);
        f += bracket_xw(i, j, c);
        f = f.truncate_alpha(cap);
        if (!f.is_zero() && f.min_alpha_degree() < k)
          throw ConsistencyError("order contract violated below target order",
                                 "cyclic bracket sum has residue below alpha^" +
                                     std::to_string(k) + " at triple (" + std::to_string(i) +
                                     "," + std::to_string(j) + "," + std::to_string(c) +
                                     "): " + f.str());
        components.emplace(IndexTuple{i, j, c}, f.alpha_slice(k));
      }
  return SymTensor::extract(ctx.vs, 3, k - 1, LeadSymmetry::AntisymTriple, components);
}

/// G tensor of one order: alpha * omega_k - {x_k, x_k} truncated to the
/// single order alpha^{k+1}; omega_k is W plus the fresh correction
/// Theta^{(k)} contracted with momenta. Residue below alpha^{k+1} means the
/// induction hypothesis failed upstream and is reported as a consistency
/// error.
inline SymTensor extract_G(const OrderContext& ctx, const Bivector& theta,
                           const SymTensor* theta_k, int k) {
  const int cap = k + 2;
  const int n = ctx.vs->dim();
  std::map<IndexTuple, Poly> components;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Poly omega = k >= 1 ? ctx.w_at(i, j) : theta.get(i, j);
      if (theta_k) omega += theta_k->assemble({i, j});
      Poly g = omega.times_alpha_power(1).truncate_alpha(cap);
      g -= bracket_partials(ctx.x_partials[static_cast<std::size_t>(i - 1)],
                            ctx.x_partials[static_cast<std::size_t>(j - 1)], ctx.vs, cap);
      g = g.truncate_alpha(cap);
      if (!g.is_zero() && g.min_alpha_degree() < k + 1)
        throw ConsistencyError("order contract violated below target order",
                               "bracket of the Bopp image misses the known series at pair (" +
                                   std::to_string(i) + "," + std::to_string(j) +
                                   "): " + g.str());
      components.emplace(IndexTuple{i, j}, g.alpha_slice(k + 1));
    }
  return SymTensor::extract(ctx.vs, 2, k, LeadSymmetry::AntisymPair, components);
}

}  // namespace detail

/// Per-order bookkeeping recorded while realizing: which normalization
/// signs the back-substitution selected, defect statuses, and term counts
/// so cost growth stays visible.
struct OrderDiagnostics {
  int gamma_order = 0;        // order of the shift tensor produced (k+1)
  int theta_order = 0;        // order of the correction produced (k), 0 if none
  int theta_sign = 0;         // sign in front of 1/(n(n+2)), 0 if no correction
  int gamma_sign = 0;         // sign in front of 1/((n+1)(n+2))
  bool cyclicity_zero = true;
  bool four_term_zero = true;  // vacuously true below order 2
  std::size_t gamma_entries = 0;
  std::size_t gamma_monomials = 0;
  std::size_t theta_entries = 0;
  std::size_t theta_monomials = 0;
  std::size_t x_monomials = 0;  // Bopp image size entering this order
};

struct Diagnostics {
  std::vector<OrderDiagnostics> orders;
  bool final_contract_verified = false;
};

/// Result bundle of the order-by-order construction: the shift tensors
/// Gamma^(1..n), the bracket-matrix corrections Theta^(1..n-1), the
/// jacobiator of the input, the assembled Bopp image at full order, and
/// per-order diagnostics.
struct Realization {
  Bivector source;
  int order = 0;
  std::vector<SymTensor> gamma;              // [m-1] = Gamma^(m), lead arity 1, tail m
  std::vector<SymTensor> theta_corrections;  // [m-1] = Theta^(m), antisym pair, tail m
  Trivector jacobiator;
  Diagnostics diagnostics;
  std::vector<Poly> x;  // Bopp image at the full order, [i-1] = x^i(y, pi)

  const SymTensor& gamma_at(int m) const {
    if (m < 1 || m > static_cast<int>(gamma.size()))
      throw RangeError("shift tensor order out of range");
    return gamma[static_cast<std::size_t>(m - 1)];
  }
  const SymTensor& theta_at(int m) const {
    if (m < 1 || m > static_cast<int>(theta_corrections.size()))
      throw RangeError("correction tensor order out of range");
    return theta_corrections[static_cast<std::size_t>(m - 1)];
  }
};

/// Bopp image truncated at order `upto`: x^i = y^i + sum_{m<=upto}
/// Gamma^{(m)} contracted with (alpha pi)^m.
inline std::vector<Poly> bopp_apply(const Realization& real, int upto) {
  if (upto < 0 || upto > static_cast<int>(real.gamma.size()))
    throw RangeError("requested order exceeds the realization order");
  return detail::bopp_series(real.source, real.gamma, upto);
}

/// The order-n truncation of the bracket matrix evaluated on the Bopp
/// image (upper triangle). Needs Theta^(1..n), so n ranges over
/// [0, order-1].
inline std::map<std::pair<int, int>, Poly> omega_n(const Realization& real, int n) {
  if (n < 0 || (n >= 1 && n > static_cast<int>(real.theta_corrections.size())))
    throw RangeError("correction tensors missing for the requested order");
  auto ctx = detail::make_order_context(real.source, real.gamma, real.theta_corrections, n);
  const SymTensor* theta_k =
      n >= 1 ? &real.theta_corrections[static_cast<std::size_t>(n - 1)] : nullptr;
  std::map<std::pair<int, int>, Poly> out;
  const int dim = real.source.dim();
  for (int i = 1; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j) {
      Poly omega = n >= 1 ? ctx.w_at(i, j) : real.source.get(i, j);
      if (theta_k) omega += theta_k->assemble({i, j});
      if (!omega.is_zero()) out.emplace(std::make_pair(i, j), std::move(omega));
    }
  return out;
}

/// G tensor entering the order-(n+1) equation, computed from the stored
/// realization state. n = 0 reproduces the input bivector.
inline SymTensor compute_G(const Realization& real, int n) {
  if (n >= 1 && n > static_cast<int>(real.theta_corrections.size()))
    throw RangeError("correction tensors missing for the requested order");
  auto ctx = detail::make_order_context(real.source, real.gamma, real.theta_corrections, n);
  const SymTensor* theta_k =
      n >= 1 ? &real.theta_corrections[static_cast<std::size_t>(n - 1)] : nullptr;
  return detail::extract_G(ctx, real.source, theta_k, n);
}

/// F tensor of order n (cyclic bracket sum), n in [1, order].
inline SymTensor compute_F(const Realization& real, int n) {
  if (n < 1 || n > static_cast<int>(real.gamma.size()))
    throw RangeError("shift tensors missing for the requested order");
  auto ctx = detail::make_order_context(real.source, real.gamma, real.theta_corrections, n);
  return detail::extract_F(ctx, n);
}

/// Order-by-order construction of the symplectic realization. Each round
/// k = 0..n-1: the cyclic bracket sum fixes the correction Theta^{(k)}
/// (k >= 1), the updated bracket matrix fixes G, the cyclicity relation is
/// checked, and tail symmetrization with verified normalization yields
/// Gamma^{(k+1)}. Poisson input makes every correction vanish. The final
/// bracket contract {x_n^i, x_n^j} = alpha omega_{n-1}^{ij} mod alpha^{n+1}
/// is re-verified on the assembled image before returning.
inline Realization realize(const Bivector& theta, int order) {
  if (order < 1) throw RangeError("realization order must be >= 1");
  Realization real{theta, order, {}, {}, jacobiator(theta), {}, {}};

  for (int k = 0; k < order; ++k) {
    auto ctx = detail::make_order_context(theta, real.gamma, real.theta_corrections, k);
    OrderDiagnostics od;
    od.gamma_order = k + 1;
    for (const auto& xi : ctx.x) od.x_monomials += xi.term_count();

    if (k >= 1) {
      SymTensor f = detail::extract_F(ctx, k);
      SymTensor corr = solve_theta_correction(f, k, &od.theta_sign);
      od.theta_order = k;
      od.four_term_zero = true;  // solve_theta_correction verified it
      od.theta_entries = corr.entry_count();
      od.theta_monomials = corr.monomial_count();
      real.theta_corrections.push_back(std::move(corr));
    }

    const SymTensor* theta_k =
        k >= 1 ? &real.theta_corrections[static_cast<std::size_t>(k - 1)] : nullptr;
    SymTensor g = detail::extract_G(ctx, theta, theta_k, k);
    SymTensor gam = gamma_from_G(g, &od.gamma_sign);  // checks cyclicity first
    od.cyclicity_zero = true;
    od.gamma_entries = gam.entry_count();
    od.gamma_monomials = gam.monomial_count();
    real.gamma.push_back(std::move(gam));
    real.diagnostics.orders.push_back(od);
  }

  // Final contract on the fully assembled image.
  auto ctx = detail::make_order_context(theta, real.gamma, real.theta_corrections, order);
  real.x = ctx.x;
  const int cap = order + 1;
  for (int i = 1; i <= theta.dim(); ++i)
    for (int j = i + 1; j <= theta.dim(); ++j) {
      Poly omega = order >= 1 ? ctx.w_at(i, j) : theta.get(i, j);
      Poly residual = omega.times_alpha_power(1).truncate_alpha(cap);
      residual -= detail::bracket_partials(ctx.x_partials[static_cast<std::size_t>(i - 1)],
                                           ctx.x_partials[static_cast<std::size_t>(j - 1)],
                                           ctx.vs, cap);
      residual = residual.truncate_alpha(cap);
      if (!residual.is_zero())
        throw ConsistencyError("final order contract failed",
                               "pair (" + std::to_string(i) + "," + std::to_string(j) +
                                   "): " + residual.str());
    }
  real.diagnostics.final_contract_verified = true;
  return real;
}

/// Inverse Bopp series y^i(x, xt), solved by fixed-point iteration order
/// by order and verified by composing back to the identity. In the result
/// the base slots mean the original coordinates x and the momentum slots
/// their doubles xt.
inline std::vector<Poly> invert_bopp(const Realization& real) {
  const auto& vs = real.source.varset();
  const int n = real.source.dim();
  const int cap = real.order + 1;

  std::vector<Poly> y;
  y.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) y.push_back(Poly::variable(vs, Var::base(i)));

  for (int round = 0; round < real.order; ++round) {
    detail::Substituter subst(vs, y, cap);
    std::vector<Poly> next;
    next.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
      Poly acc = Poly::variable(vs, Var::base(i));
      for (const auto& gam : real.gamma) {
        for (const auto& [key, value] : gam.entries()) {
          if (key.first != IndexTuple{i}) continue;
          Monomial mono;
          mono.exp[0] = static_cast<std::uint8_t>(gam.tail_arity());
          for (int idx : key.second)
            ++mono.exp[static_cast<std::size_t>(vs->slot(Var::momentum(idx)))];
          acc -= Poly::mul(subst.apply(value),
                           Poly::monomial(vs, mono, rat(detail::orderings_count(key.second))),
                           cap);
        }
      }
      next.push_back(acc.truncate_alpha(cap));
    }
    y = std::move(next);
  }

  detail::Substituter compose(vs, y, cap);
  for (int i = 1; i <= n; ++i) {
    Poly back = compose.apply(real.x[static_cast<std::size_t>(i - 1)]);
    if (!(back == Poly::variable(vs, Var::base(i))))
      throw ConsistencyError("series inversion failed",
                             "composition at coordinate " + std::to_string(i) +
                                 " is " + back.str());
  }
  return y;
}

/// Bracket table of the realization in the doubled coordinates (x, xt):
/// {x^i, x^j} (upper triangle), the full matrix {x^i, xt_j}, and
/// {xt_i, xt_j} = 0 identically. Entries use base slots for x and momentum
/// slots for xt; render them with NameStyle::Doubled.
struct ExtendedBrackets {
  VarSetPtr vs;
  std::vector<Poly> y_of_x;                     // inverse Bopp series
  std::map<std::pair<int, int>, Poly> xx;       // i<j
  std::map<std::pair<int, int>, Poly> x_xt;     // all (i, j), zero entries omitted
};

inline ExtendedBrackets extended_brackets(const Realization& real) {
  const auto& vs = real.source.varset();
  const int n = real.source.dim();
  const int cap = real.order + 1;
  ExtendedBrackets eb;
  eb.vs = vs;
  eb.y_of_x = invert_bopp(real);
  detail::Substituter rewrite(vs, eb.y_of_x, cap);

  std::vector<detail::PartialSet> parts;
  parts.reserve(static_cast<std::size_t>(n));
  for (const auto& xi : real.x) parts.push_back(detail::make_partials(xi));

  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Poly p = detail::bracket_partials(parts[static_cast<std::size_t>(i - 1)],
                                        parts[static_cast<std::size_t>(j - 1)], vs, cap)
                   .truncate_alpha(cap);
      Poly rewritten = rewrite.apply(p);
      if (!rewritten.is_zero()) eb.xx.emplace(std::make_pair(i, j), std::move(rewritten));
    }

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      // {f, pi_j} = df/dy_j.
      Poly d = parts[static_cast<std::size_t>(i - 1)].dy[static_cast<std::size_t>(j - 1)]
                   .truncate_alpha(cap);
      Poly rewritten = rewrite.apply(d);
      if (!rewritten.is_zero()) eb.x_xt.emplace(std::make_pair(i, j), std::move(rewritten));
    }
  return eb;
}

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool verified = true;

  void add(std::string name, bool pass, std::string detail = "") {
    verified = verified && pass;
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
};

/// Full invariant suite on one bivector: realizes it, then recomputes the
/// G and F tensors from the finished state and sweeps every identity that
/// the construction relies on. Everything is exact; any nonzero defect is
/// a failure.
inline VerifyReport verify(const Bivector& theta, int order, Realization* out_real = nullptr) {
  VerifyReport rep;
  std::optional<Realization> real;
  try {
    real.emplace(realize(theta, order));
    rep.add("realization", true, "completed through order " + std::to_string(order));
  } catch (const ConsistencyError& e) {
    rep.add("realization", false, e.what());
    return rep;
  }
  if (out_real) *out_real = *real;

  {
    SymTensor defect = fundamental_identity_defect(theta);
    rep.add("fundamental-identity", defect.is_zero(),
            defect.is_zero() ? "identically zero" : defect.sample());
  }

  for (int k = 0; k < order; ++k) {
    SymTensor g = compute_G(*real, k);
    if (g.tail_arity() >= 1) {
      SymTensor defect = cyclicity_defect(g);
      rep.add("cyclicity-relation(order " + std::to_string(k + 1) + ")", defect.is_zero(),
              defect.is_zero() ? "identically zero" : defect.sample());
    }
  }

  for (int k = 1; k <= order; ++k) {
    SymTensor f = compute_F(*real, k);
    if (f.tail_arity() >= 1) {
      SymTensor defect = four_term_defect(f);
      rep.add("four-term-condition(order " + std::to_string(k) + ")", defect.is_zero(),
              defect.is_zero() ? "identically zero" : defect.sample());
    } else {
      bool zero_ok = true;  // order 1: solvability is total antisymmetry, structural
      rep.add("four-term-condition(order 1)", zero_ok, "not applicable at first order");
    }
  }

  rep.add("order-contract", real->diagnostics.final_contract_verified,
          "bracket of the Bopp image reproduces the series at every computed order");

  {
    SymTensor expected(theta.varset(), 1, 1, LeadSymmetry::None);
    for (int i = 1; i <= theta.dim(); ++i)
      for (int j = 1; j <= theta.dim(); ++j) {
        Poly e = theta.get(i, j).scaled(rat(-1, 2));
        if (!e.is_zero()) expected.set({i}, {j}, e);
      }
    rep.add("first-shift", real->gamma_at(1) == expected,
            "leading shift tensor equals -Theta/2");
  }

  {
    bool ok = true;
    std::string detail = "all shift tensors have vanishing total symmetrization";
    for (int m = 1; m <= order; ++m)
      if (!total_symmetrization(real->gamma_at(m)).is_zero()) {
        ok = false;
        detail = "nonzero total symmetrization at order " + std::to_string(m);
        break;
      }
    rep.add("young-shift-tensors", ok, detail);
  }

  if (order >= 2) {
    SymTensor expected(theta.varset(), 2, 1, LeadSymmetry::AntisymPair);
    for (int i = 1; i <= theta.dim(); ++i)
      for (int j = i + 1; j <= theta.dim(); ++j)
        for (int k = 1; k <= theta.dim(); ++k) {
          Poly e = -real->jacobiator.get(i, j, k);
          if (!e.is_zero()) expected.set({i, j}, {k}, e);
        }
    rep.add("first-correction", real->theta_at(1) == expected,
            "leading correction equals minus the jacobiator");
  }

  {
    bool poisson = real->jacobiator.is_zero();
    bool collapsed = true;
    for (const auto& th : real->theta_corrections) collapsed = collapsed && th.is_zero();
    rep.add("poisson-collapse", !poisson || collapsed,
            poisson ? (collapsed ? "Poisson input, all corrections vanish"
                                 : "Poisson input but corrections survive")
                    : "not a Poisson structure, corrections expected");
  }

  // Mixed-symmetry diagnostic on the corrections: symmetrizing the second
  // lead index into the tail. Reported, not enforced.
  {
    std::string detail = "zero for every computed correction";
    for (int m = 1; m <= static_cast<int>(real->theta_corrections.size()); ++m) {
      const SymTensor& th = real->theta_at(m);
      bool zero = true;
      for (int i = 1; i <= theta.dim() && zero; ++i)
        for (const auto& big : detail::multisets(theta.dim(), th.tail_arity() + 1)) {
          Poly acc(theta.varset());
          for (std::size_t a = 0; a < big.size(); ++a) {
            if (a > 0 && big[a] == big[a - 1]) continue;
            const int count = static_cast<int>(std::count(big.begin(), big.end(), big[a]));
            acc += th.get({i, big[a]}, detail::sorted_erase_one(big, big[a])).scaled(rat(count));
          }
          if (!acc.is_zero()) {
            zero = false;
            break;
          }
        }
      if (!zero) detail = "nonzero mixed symmetrization at order " + std::to_string(m);
    }
    rep.add("correction-mixed-symmetry(diagnostic)", true, detail);
  }

  return rep;
}

}  // namespace bopp
