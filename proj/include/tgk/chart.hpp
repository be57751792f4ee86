#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tgk/error.hpp"

namespace tgk {

enum class CoordKind { affine, periodic };

struct Coordinate {
  std::string name;
  CoordKind kind = CoordKind::affine;

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

/// Ordered coordinates of a chart.  Affine coordinates carry polynomials,
/// periodic ones carry Fourier exponentials.
class ChartModel {
public:
  explicit ChartModel(std::vector<Coordinate> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw ValidationError("chart must have at least one coordinate");
    std::set<std::string> seen;
    for (const auto& c : coords_) {
      if (!valid_identifier(c.name))
        throw ValidationError("invalid coordinate name '" + c.name + "'");
      if (!seen.insert(c.name).second)
        throw ValidationError("duplicate coordinate name '" + c.name + "'");
    }
  }

  std::size_t dim() const { return coords_.size(); }
  const Coordinate& coord(std::size_t i) const { return coords_.at(i); }
  const std::vector<Coordinate>& coords() const { return coords_; }
  bool is_periodic(std::size_t i) const { return coords_.at(i).kind == CoordKind::periodic; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i].name == name) return i;
    return std::nullopt;
  }

  std::size_t require_index(const std::string& name) const {
    auto idx = index_of(name);
    if (!idx) throw ValidationError("unknown coordinate '" + name + "'");
    return *idx;
  }

  friend bool operator==(const ChartModel&, const ChartModel&) = default;

  // Names the expression grammar reserves for itself.
  static bool reserved(const std::string& name) {
    return name == "E" || name == "I" || name == "cos" || name == "sin";
  }

  static bool valid_identifier(const std::string& name) {
    if (name.empty() || reserved(name)) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    if (!alpha(name[0])) return false;
    for (char c : name)
      if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
    return true;
  }

private:
  std::vector<Coordinate> coords_;
};

using ChartPtr = std::shared_ptr<const ChartModel>;

inline ChartPtr make_chart(std::vector<Coordinate> coords) {
  return std::make_shared<const ChartModel>(std::move(coords));
}

inline bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (!same_chart(a, b)) throw ChartMismatch();
}

}  // namespace tgk
