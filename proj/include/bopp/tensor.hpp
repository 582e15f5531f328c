#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bopp/poly.hpp"

namespace bopp {

using IndexTuple = std::vector<int>;

namespace detail {

inline long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Number of distinct orderings of a multiset, n! / prod(mult!).
inline long orderings_count(const IndexTuple& sorted_multiset) {
  long denom = 1;
  int run = 1;
  for (std::size_t i = 1; i < sorted_multiset.size(); ++i) {
    if (sorted_multiset[i] == sorted_multiset[i - 1])
      ++run;
    else {
      denom *= factorial(run);
      run = 1;
    }
  }
  denom *= factorial(run);
  return factorial(static_cast<int>(sorted_multiset.size())) / denom;
}

/// All sorted multisets of the given size over 1..dim, lexicographic.
inline std::vector<IndexTuple> multisets(int dim, int size) {
  std::vector<IndexTuple> out;
  IndexTuple cur(static_cast<std::size_t>(std::max(size, 0)));
  auto rec = [&](auto&& self, int pos, int lo) -> void {
    if (pos == size) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= dim; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, v);
    }
  };
  rec(rec, 0, 1);
  return out;
}

/// All tuples of the given size over 1..dim, lexicographic.
inline std::vector<IndexTuple> tuples(int dim, int size) {
  std::vector<IndexTuple> out;
  IndexTuple cur(static_cast<std::size_t>(std::max(size, 0)));
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == size) {
      out.push_back(cur);
      return;
    }
    for (int v = 1; v <= dim; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

inline IndexTuple sorted_insert(IndexTuple multiset, int value) {
  multiset.insert(std::upper_bound(multiset.begin(), multiset.end(), value), value);
  return multiset;
}

inline IndexTuple sorted_erase_one(IndexTuple multiset, int value) {
  auto it = std::find(multiset.begin(), multiset.end(), value);
  multiset.erase(it);
  return multiset;
}

/// Sign of the permutation sorting the tuple; 0 on repeats.
inline int sort_sign(IndexTuple& t) {
  int sign = 1;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[i] == t[j]) return 0;
      if (t[i] > t[j]) {
        std::swap(t[i], t[j]);
        sign = -sign;
      }
    }
  return sign;
}

inline std::string tuple_str(const IndexTuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

}  // namespace detail

enum class LeadSymmetry { None, AntisymPair, AntisymTriple };

/// Coefficient tensor with a small set of lead indices (declared symmetry)
/// and a symmetric tail. Entries are polynomials in the base coordinates
/// and parameters. Canonical storage: the tail is kept sorted; for
/// antisymmetric leads only the ascending representative is stored and
/// signs are restored on access. Entry maps are ordered, so iteration and
/// serialization are deterministic (lexicographic in (lead, tail)).
class SymTensor {
 public:
  using Key = std::pair<IndexTuple, IndexTuple>;

  SymTensor(VarSetPtr vs, int lead_arity, int tail_arity, LeadSymmetry sym)
      : vs_(std::move(vs)), lead_(lead_arity), tail_(tail_arity), sym_(sym) {
    if (lead_ < 1 || lead_ > 4) throw StructuralError("lead arity must be 1..4");
    if (tail_ < 0) throw StructuralError("negative tail arity");
    if (sym_ == LeadSymmetry::AntisymPair && lead_ != 2)
      throw StructuralError("antisym-pair needs lead arity 2");
    if (sym_ == LeadSymmetry::AntisymTriple && lead_ != 3)
      throw StructuralError("antisym-triple needs lead arity 3");
  }

  const VarSetPtr& varset() const { return vs_; }
  int dim() const { return vs_->dim(); }
  int lead_arity() const { return lead_; }
  int tail_arity() const { return tail_; }
  LeadSymmetry symmetry() const { return sym_; }
  bool is_zero() const { return entries_.empty(); }
  const std::map<Key, Poly>& entries() const { return entries_; }

  std::size_t entry_count() const { return entries_.size(); }
  std::size_t monomial_count() const {
    std::size_t n = 0;
    for (const auto& [k, p] : entries_) n += p.term_count();
    return n;
  }

  void set(IndexTuple lead, IndexTuple tail, Poly value) {
    validate_indices(lead, tail);
    if (!value.base_and_params_only())
      throw StructuralError("tensor entries must be polynomials in base coordinates and parameters");
    const int sign = canonicalize_lead(lead);
    if (sign == 0) {
      if (!value.is_zero())
        throw StructuralError("nonzero entry on a repeated antisymmetric lead index");
      return;
    }
    std::sort(tail.begin(), tail.end());
    Key key{std::move(lead), std::move(tail)};
    if (value.is_zero()) {
      entries_.erase(key);
      return;
    }
    entries_.insert_or_assign(std::move(key), sign < 0 ? -value : std::move(value));
  }

  void add(IndexTuple lead, IndexTuple tail, const Poly& value) {
    Poly cur = get(lead, tail);
    set(std::move(lead), std::move(tail), cur + value);
  }

  /// Sign-adjusted lookup; zero polynomial when absent or annihilated by
  /// the lead symmetry.
  Poly get(IndexTuple lead, IndexTuple tail) const {
    validate_indices(lead, tail);
    const int sign = canonicalize_lead(lead);
    if (sign == 0) return Poly::zero(vs_);
    std::sort(tail.begin(), tail.end());
    auto it = entries_.find(Key{std::move(lead), std::move(tail)});
    if (it == entries_.end()) return Poly::zero(vs_);
    return sign < 0 ? -it->second : it->second;
  }

  /// Contracts the tail with momenta and multiplies by alpha^tail:
  ///   sum_J  (#orderings of J) * entry(lead, J) * pi_J * alpha^tail.
  Poly assemble(const IndexTuple& lead) const {
    Poly out(vs_);
    for (const auto& [key, value] : entries_) {
      if (key.first != lead) continue;
      Monomial m;
      m.exp[0] = static_cast<std::uint8_t>(tail_);
      for (int idx : key.second) {
        const int s = vs_->slot(Var::momentum(idx));
        if (m.exp[static_cast<std::size_t>(s)] == 255) throw StructuralError("exponent overflow");
        ++m.exp[static_cast<std::size_t>(s)];
      }
      out += Poly::mul(value, Poly::monomial(vs_, m, rat(detail::orderings_count(key.second))));
    }
    return out;
  }

  /// Inverse of assemble on one lead component: reads the unique
  /// tail-symmetric tensor off a momentum-homogeneous polynomial. The
  /// coefficient of a momentum monomial with multiplicities (m_1..m_N) is
  /// the entry times the multinomial count n!/(m_1!..m_N!), so extraction
  /// divides by that count. The input must be alpha-free (the caller
  /// strips the alpha power) and momentum-homogeneous of the tail degree.
  static SymTensor extract(VarSetPtr vs, int lead_arity, int tail_arity, LeadSymmetry sym,
                           const std::map<IndexTuple, Poly>& lead_components) {
    SymTensor t(vs, lead_arity, tail_arity, sym);
    const int n = vs->dim();
    for (const auto& [lead, poly] : lead_components) {
      if (!poly.alpha_free())
        throw DegreeError("component must be alpha-free before extraction");
      if (!poly.momentum_homogeneous(tail_arity))
        throw DegreeError("component not momentum-homogeneous of degree " +
                          std::to_string(tail_arity));
      for (const auto& [m, c] : poly.terms()) {
        IndexTuple tail;
        Monomial residual = m;
        for (int i = 1; i <= n; ++i) {
          const int s = vs->slot(Var::momentum(i));
          for (int r = 0; r < m.exp[static_cast<std::size_t>(s)]; ++r) tail.push_back(i);
          residual.exp[static_cast<std::size_t>(s)] = 0;
        }
        const Rational coeff = c / rat(detail::orderings_count(tail));
        t.add(lead, tail, Poly::monomial(vs, residual, coeff));
      }
    }
    return t;
  }

  bool operator==(const SymTensor& o) const {
    return *vs_ == *o.vs_ && lead_ == o.lead_ && tail_ == o.tail_ && sym_ == o.sym_ &&
           entries_ == o.entries_;
  }

  /// Canonical lead tuples of this tensor's symmetry class over 1..dim.
  std::vector<IndexTuple> canonical_leads() const {
    std::vector<IndexTuple> out;
    for (const auto& lead : detail::tuples(dim(), lead_)) {
      if (sym_ == LeadSymmetry::AntisymPair && !(lead[0] < lead[1])) continue;
      if (sym_ == LeadSymmetry::AntisymTriple && !(lead[0] < lead[1] && lead[1] < lead[2]))
        continue;
      out.push_back(lead);
    }
    return out;
  }

  /// Short printable sample of the first nonzero entries, for defect
  /// payloads in error messages.
  std::string sample(std::size_t max_entries = 3) const {
    std::string s;
    std::size_t k = 0;
    for (const auto& [key, value] : entries_) {
      if (k++ == max_entries) {
        s += " ...";
        break;
      }
      if (!s.empty()) s += "; ";
      s += detail::tuple_str(key.first) + detail::tuple_str(key.second) + " = " + value.str();
    }
    return s.empty() ? "0" : s;
  }

 private:
  void validate_indices(const IndexTuple& lead, const IndexTuple& tail) const {
    if (static_cast<int>(lead.size()) != lead_) throw StructuralError("lead arity mismatch");
    if (static_cast<int>(tail.size()) != tail_) throw StructuralError("tail arity mismatch");
    for (int i : lead)
      if (i < 1 || i > dim()) throw StructuralError("lead index out of range");
    for (int i : tail)
      if (i < 1 || i > dim()) throw StructuralError("tail index out of range");
  }

  int canonicalize_lead(IndexTuple& lead) const {
    if (sym_ == LeadSymmetry::None) return 1;
    return detail::sort_sign(lead);
  }

  VarSetPtr vs_;
  int lead_;
  int tail_;
  LeadSymmetry sym_;
  std::map<Key, Poly> entries_;
};

/// Totally antisymmetric rank-3 tensor (the jacobiator lives here).
class Trivector {
 public:
  explicit Trivector(VarSetPtr vs) : vs_(std::move(vs)) {}

  const VarSetPtr& varset() const { return vs_; }
  int dim() const { return vs_->dim(); }
  bool is_zero() const { return entries_.empty(); }
  const std::map<IndexTuple, Poly>& entries() const { return entries_; }

  void set(int i, int j, int k, Poly value) {
    if (!value.base_and_params_only())
      throw StructuralError("trivector entries must be polynomials in base coordinates and parameters");
    IndexTuple t{i, j, k};
    validate(t);
    const int sign = detail::sort_sign(t);
    if (sign == 0) {
      if (!value.is_zero()) throw StructuralError("nonzero entry on repeated indices");
      return;
    }
    if (value.is_zero()) {
      entries_.erase(t);
      return;
    }
    entries_.insert_or_assign(std::move(t), sign < 0 ? -value : std::move(value));
  }

  Poly get(int i, int j, int k) const {
    IndexTuple t{i, j, k};
    validate(t);
    const int sign = detail::sort_sign(t);
    if (sign == 0) return Poly::zero(vs_);
    auto it = entries_.find(t);
    if (it == entries_.end()) return Poly::zero(vs_);
    return sign < 0 ? -it->second : it->second;
  }

  bool operator==(const Trivector& o) const { return *vs_ == *o.vs_ && entries_ == o.entries_; }

 private:
  void validate(const IndexTuple& t) const {
    for (int i : t)
      if (i < 1 || i > dim()) throw StructuralError("index out of range");
  }

  VarSetPtr vs_;
  std::map<IndexTuple, Poly> entries_;
};

/// Cyclicity defect of a G tensor (lead antisym pair, tail n >= 1):
///   D^{i j j1; T} = G^{ij;{j1}T} + G^{j1 i;{j}T} + G^{j j1;{i}T}.
/// Zero exactly when the three-term cyclic solvability condition holds.
inline SymTensor cyclicity_defect(const SymTensor& G) {
  if (G.symmetry() != LeadSymmetry::AntisymPair)
    throw StructuralError("cyclicity defect needs an antisym-pair tensor");
  if (G.tail_arity() < 1)
    throw StructuralError("cyclicity defect needs tail arity >= 1");
  const int n = G.tail_arity();
  SymTensor out(G.varset(), 3, n - 1, LeadSymmetry::None);
  for (const auto& lead : detail::tuples(G.dim(), 3)) {
    const int i = lead[0], j = lead[1], j1 = lead[2];
    for (const auto& t : detail::multisets(G.dim(), n - 1)) {
      Poly d = G.get({i, j}, detail::sorted_insert(t, j1));
      d += G.get({j1, i}, detail::sorted_insert(t, j));
      d += G.get({j, j1}, detail::sorted_insert(t, i));
      if (!d.is_zero()) out.set(lead, t, std::move(d));
    }
  }
  return out;
}

/// Four-term defect of an F tensor (lead antisym triple, tail m >= 1):
///   D^{ijkl; T} = F^{ijk;{l}T} - F^{lij;{k}T} + F^{kli;{j}T} - F^{jkl;{i}T}.
inline SymTensor four_term_defect(const SymTensor& F) {
  if (F.symmetry() != LeadSymmetry::AntisymTriple)
    throw StructuralError("four-term defect needs an antisym-triple tensor");
  if (F.tail_arity() < 1)
    throw StructuralError("four-term defect needs tail arity >= 1");
  const int m = F.tail_arity();
  SymTensor out(F.varset(), 4, m - 1, LeadSymmetry::None);
  for (const auto& lead : detail::tuples(F.dim(), 4)) {
    const int i = lead[0], j = lead[1], k = lead[2], l = lead[3];
    for (const auto& t : detail::multisets(F.dim(), m - 1)) {
      Poly d = F.get({i, j, k}, detail::sorted_insert(t, l));
      d -= F.get({l, i, j}, detail::sorted_insert(t, k));
      d += F.get({k, l, i}, detail::sorted_insert(t, j));
      d -= F.get({j, k, l}, detail::sorted_insert(t, i));
      if (!d.is_zero()) out.set(lead, t, std::move(d));
    }
  }
  return out;
}

/// Average over all permutations of all indices (lead and tail together).
/// The result is reported with the same arities but no lead symmetry.
inline SymTensor total_symmetrization(const SymTensor& T) {
  const int r = T.lead_arity(), n = T.tail_arity();
  SymTensor out(T.varset(), r, n, LeadSymmetry::None);
  for (const auto& lead : detail::tuples(T.dim(), r)) {
    for (const auto& tail : detail::multisets(T.dim(), n)) {
      IndexTuple all = lead;
      all.insert(all.end(), tail.begin(), tail.end());
      std::sort(all.begin(), all.end());
      Poly acc(T.varset());
      long arrangements = 0;
      do {
        IndexTuple l(all.begin(), all.begin() + r);
        IndexTuple t(all.begin() + r, all.end());
        acc += T.get(l, t);
        ++arrangements;
      } while (std::next_permutation(all.begin(), all.end()));
      if (!acc.is_zero()) out.set(lead, tail, acc.scaled(rat(1, arrangements)));
    }
  }
  return out;
}

/// Solves (n+1) (Gamma^{j;{i}T} - Gamma^{i;{j}T}) = G^{ij;T} by tail
/// symmetrization of G:
///   Gamma^{i;J} = c * sum_{k in J} G^{ik; J\k},  |J| = n+1.
/// The scalar c is fixed by exact back-substitution rather than trusted
/// from a closed form; the sign that verifies is reported through
/// chosen_sign (+1/-1 multiplying 1/((n+1)(n+2))). Requires the cyclicity
/// defect of G to vanish.
inline SymTensor gamma_from_G(const SymTensor& G, int* chosen_sign = nullptr) {
  if (G.symmetry() != LeadSymmetry::AntisymPair)
    throw StructuralError("gamma_from_G needs an antisym-pair tensor");
  const int n = G.tail_arity();
  if (n >= 1) {
    SymTensor defect = cyclicity_defect(G);
    if (!defect.is_zero())
      throw ConsistencyError("cyclicity relation violated", defect.sample());
  }
  const int dim = G.dim();
  const Rational magnitude = rat(1, static_cast<long>(n + 1) * (n + 2));

  SymTensor sym_part(G.varset(), 1, n + 1, LeadSymmetry::None);
  for (int i = 1; i <= dim; ++i) {
    for (const auto& J : detail::multisets(dim, n + 1)) {
      Poly acc(G.varset());
      for (std::size_t a = 0; a < J.size(); ++a) {
        if (a > 0 && J[a] == J[a - 1]) continue;  // distinct values once, weighted
        const int count = static_cast<int>(std::count(J.begin(), J.end(), J[a]));
        acc += G.get({i, J[a]}, detail::sorted_erase_one(J, J[a])).scaled(rat(count));
      }
      if (!acc.is_zero()) sym_part.set({i}, J, std::move(acc));
    }
  }

  for (int sign : {-1, +1}) {
    SymTensor gamma(G.varset(), 1, n + 1, LeadSymmetry::None);
    for (const auto& [key, value] : sym_part.entries())
      gamma.set(key.first, key.second, value.scaled(sign * magnitude));
    bool ok = true;
    for (int i = 1; i <= dim && ok; ++i)
      for (int j = i + 1; j <= dim && ok; ++j)
        for (const auto& T : detail::multisets(dim, n)) {
          Poly lhs = gamma.get({j}, detail::sorted_insert(T, i));
          lhs -= gamma.get({i}, detail::sorted_insert(T, j));
          lhs = lhs.scaled(rat(n + 1));
          if (!(lhs == G.get({i, j}, T))) {
            ok = false;
            break;
          }
        }
    if (ok) {
      if (chosen_sign) *chosen_sign = sign;
      return gamma;
    }
  }
  throw ConsistencyError("shift-tensor equation unsolvable",
                         "back-substitution failed for both normalization signs");
}

/// Solves n (Theta^{ij;{k}T} + Theta^{ki;{j}T} + Theta^{jk;{i}T}) + F^{ijk;T} = 0
/// by symmetrizing F over which index joins the tail:
///   Theta^{ij;J} = c * sum_{k in J} F^{ijk; J\k},  |J| = n.
/// As above, c = sign/(n(n+2)) is pinned by exact back-substitution.
/// Requires the four-term defect of F to vanish.
inline SymTensor solve_theta_correction(const SymTensor& F, int n, int* chosen_sign = nullptr) {
  if (F.symmetry() != LeadSymmetry::AntisymTriple)
    throw StructuralError("solve_theta_correction needs an antisym-triple tensor");
  if (n < 1 || F.tail_arity() != n - 1)
    throw StructuralError("tail arity does not match the requested order");
  if (F.tail_arity() >= 1) {
    SymTensor defect = four_term_defect(F);
    if (!defect.is_zero())
      throw ConsistencyError("four-term condition violated", defect.sample());
  }
  const int dim = F.dim();
  const Rational magnitude = rat(1, static_cast<long>(n) * (n + 2));

  SymTensor sym_part(F.varset(), 2, n, LeadSymmetry::AntisymPair);
  for (int i = 1; i <= dim; ++i) {
    for (int j = i + 1; j <= dim; ++j) {
      for (const auto& J : detail::multisets(dim, n)) {
        Poly acc(F.varset());
        for (std::size_t a = 0; a < J.size(); ++a) {
          if (a > 0 && J[a] == J[a - 1]) continue;
          const int count = static_cast<int>(std::count(J.begin(), J.end(), J[a]));
          acc += F.get({i, j, J[a]}, detail::sorted_erase_one(J, J[a])).scaled(rat(count));
        }
        if (!acc.is_zero()) sym_part.set({i, j}, J, std::move(acc));
      }
    }
  }

  for (int sign : {-1, +1}) {
    SymTensor theta(F.varset(), 2, n, LeadSymmetry::AntisymPair);
    for (const auto& [key, value] : sym_part.entries())
      theta.set(key.first, key.second, value.scaled(sign * magnitude));
    bool ok = true;
    for (int i = 1; i <= dim && ok; ++i)
      for (int j = i + 1; j <= dim && ok; ++j)
        for (int k = 1; k <= dim && ok; ++k)
          for (const auto& T : detail::multisets(dim, n - 1)) {
            Poly lhs = theta.get({i, j}, detail::sorted_insert(T, k));
            lhs += theta.get({k, i}, detail::sorted_insert(T, j));
            lhs += theta.get({j, k}, detail::sorted_insert(T, i));
            lhs = lhs.scaled(rat(n));
            lhs += F.get({i, j, k}, T);
            if (!lhs.is_zero()) {
              ok = false;
              break;
            }
          }
    if (ok) {
      if (chosen_sign) *chosen_sign = sign;
      return theta;
    }
  }
  throw ConsistencyError("correction-tensor equation unsolvable",
                         "back-substitution failed for both normalization signs");
}

}  // namespace bopp
