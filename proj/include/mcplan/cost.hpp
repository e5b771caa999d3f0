#pragma once

#include <array>
#include <cstddef>

namespace mcplan {

/// Resources tracked by the mission model. The set is fixed for a whole
/// scenario: every action cost, accumulated budget and mission budget carries
/// exactly these components.
enum class Resource { Duration = 0, Energy = 1 };

inline constexpr size_t kResourceCount = 2;

inline constexpr std::array<Resource, kResourceCount> kAllResources = {
    Resource::Duration, Resource::Energy};

inline const char* resource_name(Resource r) {
  return r == Resource::Duration ? "duration" : "energy";
}

/// Per-resource non-negative magnitudes. Duration is in abstract time units,
/// energy in percent of battery.
class CostVector {
 public:
  constexpr CostVector() = default;
  constexpr CostVector(double duration, double energy)
      : v_{duration, energy} {}

  static constexpr CostVector zero() { return CostVector{}; }

  constexpr double operator[](Resource r) const {
    return v_[static_cast<size_t>(r)];
  }
  constexpr double& operator[](Resource r) {
    return v_[static_cast<size_t>(r)];
  }

  constexpr double duration() const { return v_[0]; }
  constexpr double energy() const { return v_[1]; }

  friend constexpr CostVector operator+(const CostVector& a,
                                        const CostVector& b) {
    return {a.v_[0] + b.v_[0], a.v_[1] + b.v_[1]};
  }
  friend constexpr CostVector operator-(const CostVector& a,
                                        const CostVector& b) {
    return {a.v_[0] - b.v_[0], a.v_[1] - b.v_[1]};
  }
  friend constexpr CostVector operator*(const CostVector& a, double s) {
    return {a.v_[0] * s, a.v_[1] * s};
  }
  CostVector& operator+=(const CostVector& o) {
    v_[0] += o.v_[0];
    v_[1] += o.v_[1];
    return *this;
  }

  friend constexpr bool operator==(const CostVector&,
                                   const CostVector&) = default;

  /// Componentwise max.
  static constexpr CostVector max(const CostVector& a, const CostVector& b) {
    return {a.v_[0] > b.v_[0] ? a.v_[0] : b.v_[0],
            a.v_[1] > b.v_[1] ? a.v_[1] : b.v_[1]};
  }

  /// a[r] <= b[r] for every resource.
  friend constexpr bool all_leq(const CostVector& a, const CostVector& b) {
    return a.v_[0] <= b.v_[0] && a.v_[1] <= b.v_[1];
  }

  /// a[r] > b[r] for at least one resource.
  friend constexpr bool any_gt(const CostVector& a, const CostVector& b) {
    return a.v_[0] > b.v_[0] || a.v_[1] > b.v_[1];
  }

  constexpr bool non_negative() const { return v_[0] >= 0.0 && v_[1] >= 0.0; }

 private:
  std::array<double, kResourceCount> v_{0.0, 0.0};
};

}  // namespace mcplan
