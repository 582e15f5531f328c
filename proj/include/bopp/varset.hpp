#pragma once

#include <cctype>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bopp/error.hpp"

namespace bopp {

/// Hard cap on exponent-vector slots; keeps monomial keys inline.
/// 1 (alpha) + 2*dim + #params must fit.
inline constexpr int kMaxSlots = 32;

enum class VarKind : std::uint8_t { Alpha, Base, Momentum, Param };

/// Handle to one variable. Base/momentum indices are 1-based coordinate
/// labels; Param carries the 0-based ordinal of a declared parameter.
struct Var {
  VarKind kind;
  int index;

  static Var alpha() { return {VarKind::Alpha, 0}; }
  static Var base(int i) { return {VarKind::Base, i}; }
  static Var momentum(int i) { return {VarKind::Momentum, i}; }
  static Var param(int ordinal) { return {VarKind::Param, ordinal}; }

  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;
};

/// Rendering basis: Darboux coordinates (y_i, pi_i) or the doubled
/// original coordinates (x_i, xt_i). Slot layout is identical.
enum class NameStyle { Darboux, Doubled };

/// Ordered variable universe of one computation: the grading variable
/// alpha, N base coordinates, N conjugate momenta, and declared commuting
/// parameter symbols. Parameters and alpha have zero derivative along
/// every base/momentum direction. Slot order (alpha, base, momenta,
/// params) doubles as the canonical monomial order for printing.
class VarSet {
 public:
  explicit VarSet(int dim, std::vector<std::string> params = {})
      : dim_(dim), params_(std::move(params)) {
    if (dim_ < 1) throw StructuralError("dimension must be >= 1");
    if (total_slots() > kMaxSlots)
      throw StructuralError("variable set too large: dim " + std::to_string(dim_) + " with " +
                            std::to_string(params_.size()) + " parameters exceeds " +
                            std::to_string(kMaxSlots) + " slots");
    for (std::size_t i = 0; i < params_.size(); ++i) {
      validate_param_name(params_[i]);
      for (std::size_t j = i + 1; j < params_.size(); ++j)
        if (params_[i] == params_[j])
          throw StructuralError("duplicate parameter name: " + params_[i]);
    }
  }

  int dim() const { return dim_; }
  int param_count() const { return static_cast<int>(params_.size()); }
  const std::vector<std::string>& params() const { return params_; }
  const std::string& param_name(int ordinal) const { return params_.at(ordinal); }

  int param_ordinal(std::string_view name) const {
    for (std::size_t i = 0; i < params_.size(); ++i)
      if (params_[i] == name) return static_cast<int>(i);
    return -1;
  }

  int total_slots() const { return 1 + 2 * dim_ + static_cast<int>(params_.size()); }

  int slot(Var v) const {
    switch (v.kind) {
      case VarKind::Alpha:
        return 0;
      case VarKind::Base:
        if (v.index < 1 || v.index > dim_) throw StructuralError("base index out of range");
        return v.index;
      case VarKind::Momentum:
        if (v.index < 1 || v.index > dim_) throw StructuralError("momentum index out of range");
        return dim_ + v.index;
      case VarKind::Param:
        if (v.index < 0 || v.index >= param_count())
          throw StructuralError("parameter ordinal out of range");
        return 1 + 2 * dim_ + v.index;
    }
    throw StructuralError("bad variable kind");
  }

  Var var_at(int slot_index) const {
    if (slot_index == 0) return Var::alpha();
    if (slot_index <= dim_) return Var::base(slot_index);
    if (slot_index <= 2 * dim_) return Var::momentum(slot_index - dim_);
    if (slot_index < total_slots()) return Var::param(slot_index - 2 * dim_ - 1);
    throw StructuralError("slot out of range");
  }

  std::string name(Var v, NameStyle style = NameStyle::Darboux) const {
    switch (v.kind) {
      case VarKind::Alpha:
        return "alpha";
      case VarKind::Base:
        return (style == NameStyle::Darboux ? "y" : "x") + std::to_string(v.index);
      case VarKind::Momentum:
        return (style == NameStyle::Darboux ? "pi" : "xt") + std::to_string(v.index);
      case VarKind::Param:
        return param_name(v.index);
    }
    throw StructuralError("bad variable kind");
  }

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.dim_ == b.dim_ && a.params_ == b.params_;
  }

 private:
  static void validate_param_name(const std::string& s) {
    if (s.empty()) throw StructuralError("empty parameter name");
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
      throw StructuralError("bad parameter name: " + s);
    for (char c : s)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw StructuralError("bad parameter name: " + s);
    if (s == "alpha") throw StructuralError("'alpha' is reserved");
    auto digits_after = [&](std::string_view prefix) {
      if (s.size() <= prefix.size() || s.compare(0, prefix.size(), prefix) != 0) return false;
      for (std::size_t i = prefix.size(); i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
      return true;
    };
    if (digits_after("y") || digits_after("pi") || digits_after("x") || digits_after("xt"))
      throw StructuralError("parameter name collides with coordinate names: " + s);
  }

  int dim_;
  std::vector<std::string> params_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

inline VarSetPtr make_varset(int dim, std::vector<std::string> params = {}) {
  return std::make_shared<const VarSet>(dim, std::move(params));
}

}  // namespace bopp
