#pragma once

#include <map>
#include <string>

#include "halfhandle/core.hpp"

namespace hh {

enum class HandleSide { Left, Right };

// A half-handle of the given index in ambient dimension n+1. Right
// half-handles correspond to boundary unstable critical points, left ones
// to boundary stable critical points.
struct HalfHandleSpec {
  HandleSide side = HandleSide::Right;
  int index = 0;
  int n = 1;

  bool valid() const {
    if (n < 1) return false;
    return side == HandleSide::Right ? (0 <= index && index <= n)
                                     : (1 <= index && index <= n + 1);
  }
};

// Finitely supported degree -> rank map (integer coefficients, rank only).
struct GradedRanks {
  std::map<int, int> ranks;

  int rank(int degree) const {
    auto it = ranks.find(degree);
    return it == ranks.end() ? 0 : it->second;
  }
  void add(int degree, int r) {
    if (r == 0) return;
    ranks[degree] += r;
    if (ranks[degree] == 0) ranks.erase(degree);
  }
  bool trivial() const { return ranks.empty(); }
  long long alternating_sum() const {
    long long s = 0;
    for (auto& [deg, r] : ranks) s += (deg % 2 == 0 ? r : -r);
    return s;
  }
  friend bool operator==(const GradedRanks& a, const GradedRanks& b) { return a.ranks == b.ranks; }
};

enum class HandlePair { HB, CB0 };

// Relative homology of the half-handle pairs. (H,B) of a right half-handle
// deformation retracts to its core handle pair, one generator in the
// handle index; the left pair (H,B) retracts to a point, while its (C,B0)
// is a handle of one index lower.
inline GradedRanks half_handle_relative_homology(const HalfHandleSpec& spec, HandlePair pair) {
  if (!spec.valid()) throw Error(ErrorCode::RangeError, "invalid half-handle spec");
  GradedRanks g;
  if (spec.side == HandleSide::Right) {
    g.add(spec.index, 1);
  } else if (pair == HandlePair::CB0) {
    g.add(spec.index - 1, 1);
  }
  return g;
}

// chi(Omega, Sigma_0). Interior points and boundary unstable points attach
// a handle to Omega; boundary stable points leave Omega unchanged.
inline long long relative_euler_characteristic(const MorseDatum& d) {
  long long chi = 0;
  for (const auto& p : d.points) {
    if (p.kind == PointKind::BoundaryStable) continue;
    chi += (p.index % 2 == 0) ? 1 : -1;
  }
  return chi;
}

// One generator per interior or boundary unstable point in its index.
inline GradedRanks generator_counts(const MorseDatum& d) {
  GradedRanks g;
  for (const auto& p : d.points)
    if (p.kind != PointKind::BoundaryStable) g.add(p.index, 1);
  return g;
}

struct SurgeryEffect {
  int handle_index_on_Y = 0;       // classical handle attached to the lateral boundary
  bool attaches_to_sigma = false;  // true: glue a disk to the level set, false: remove one
  int sigma_handle_index = 0;      // index attached, or one less than removed (detachment)
  int surgery_index_on_M = 0;      // surgery performed on the level set's boundary
  bool changes_omega = false;      // right attachments change Omega, left ones do not
  int omega_handle_index = 0;      // meaningful only when changes_omega
};

// Topological effect of crossing one boundary critical point, read off the
// half-handle decomposition.
inline SurgeryEffect surgery_effect_descriptor(const HalfHandleSpec& spec) {
  if (!spec.valid()) throw Error(ErrorCode::RangeError, "invalid half-handle spec");
  SurgeryEffect e;
  if (spec.side == HandleSide::Right) {
    e.handle_index_on_Y = spec.index;
    e.attaches_to_sigma = true;
    e.sigma_handle_index = spec.index;
    e.surgery_index_on_M = spec.index;
    e.changes_omega = true;
    e.omega_handle_index = spec.index;
  } else {
    e.handle_index_on_Y = spec.index - 1;
    e.attaches_to_sigma = false;
    e.sigma_handle_index = spec.index - 1;
    e.surgery_index_on_M = spec.index - 1;
    e.changes_omega = false;
    e.omega_handle_index = 0;
  }
  return e;
}

}  // namespace hh
