#pragma once

#include <optional>
#include <sstream>
#include <string>

#include "halfhandle/error.hpp"

namespace hh {

enum class PointKind { Interior, BoundaryStable, BoundaryUnstable };

inline const char* kind_name(PointKind k) {
  switch (k) {
    case PointKind::Interior: return "interior";
    case PointKind::BoundaryStable: return "boundary_stable";
    case PointKind::BoundaryUnstable: return "boundary_unstable";
  }
  return "?";
}

// Index range of a critical point. Boundary stable points carry the index
// of the ambient function (one above the restriction to the lateral
// boundary), so index 0 cannot occur there; boundary unstable points agree
// with the restriction and cannot reach n+1.
inline bool valid_index(PointKind kind, int k, int n) {
  switch (kind) {
    case PointKind::Interior: return 0 <= k && k <= n + 1;
    case PointKind::BoundaryStable: return 1 <= k && k <= n + 1;
    case PointKind::BoundaryUnstable: return 0 <= k && k <= n;
  }
  return false;
}

// Stable/unstable manifold dimensions split by stratum. "empty" (nullopt)
// means the manifold does not meet that stratum at all; a 0-dimensional
// manifold (a point) is not empty.
struct StratifiedDims {
  std::optional<int> interior_stable;
  std::optional<int> boundary_stable;
  std::optional<int> interior_unstable;
  std::optional<int> boundary_unstable;
};

inline StratifiedDims stratified_dims(PointKind kind, int k, int n) {
  if (n < 1 || !valid_index(kind, k, n))
    throw Error(ErrorCode::RangeError, "invalid kind/index combination");
  StratifiedDims d;
  switch (kind) {
    case PointKind::Interior:
      d.interior_stable = k;
      d.interior_unstable = n + 1 - k;
      break;
    case PointKind::BoundaryStable:
      // normal direction attracting: the stable manifold leaves the
      // boundary, the unstable manifold lies inside it
      d.interior_stable = k;
      d.boundary_stable = k - 1;
      d.boundary_unstable = n + 1 - k;
      break;
    case PointKind::BoundaryUnstable:
      d.boundary_stable = k;
      d.interior_unstable = n + 1 - k;
      d.boundary_unstable = n - k;
      break;
  }
  return d;
}

// True iff a gradient trajectory from p2 up to p1 is not excluded by the
// transversality dimension count. Hard-coded row by row; the one
// asymmetric row is boundary unstable above boundary stable, where equal
// indices are allowed (this is the pair produced by splitting an interior
// point).
inline bool admissible(PointKind kind1, int k, PointKind kind2, int l, int n) {
  if (n < 1 || !valid_index(kind1, k, n) || !valid_index(kind2, l, n))
    throw Error(ErrorCode::RangeError, "invalid kind/index combination");
  using PK = PointKind;
  if (kind1 == PK::Interior && kind2 == PK::BoundaryStable) return false;
  if (kind1 == PK::BoundaryUnstable && kind2 == PK::Interior) return false;
  if (kind1 == PK::BoundaryUnstable && kind2 == PK::BoundaryStable) return k >= l;
  return k > l;
}

// The same predicate recomputed from stratified dimensions: a connecting
// trajectory needs a >= 1-dimensional transverse intersection in at least
// one stratum (interior stratum has dimension n+1, boundary stratum n).
inline bool derive_admissible(PointKind kind1, int k, PointKind kind2, int l, int n) {
  StratifiedDims s = stratified_dims(kind1, k, n);
  StratifiedDims u = stratified_dims(kind2, l, n);
  bool ok = false;
  if (s.interior_stable && u.interior_unstable)
    ok = ok || (*s.interior_stable + *u.interior_unstable - (n + 1) >= 1);
  if (s.boundary_stable && u.boundary_unstable)
    ok = ok || (*s.boundary_stable + *u.boundary_unstable - n >= 1);
  return ok;
}

// Fixed-layout rendering of the admissibility table for eyeball diffs.
inline std::string render_table() {
  struct Row {
    const char* p1;
    const char* p2;
    const char* ws_o;
    const char* ws_y;
    const char* wu_o;
    const char* wu_y;
    const char* empty_if;
  };
  static const Row rows[] = {
      {"interior", "interior", "k", "-", "n+1-l", "-", "k<=l"},
      {"interior", "b.stable", "k", "-", "-", "n+1-l", "always"},
      {"interior", "b.unstable", "k", "-", "n+1-l", "n-l", "k<=l"},
      {"b.stable", "interior", "k", "k-1", "n+1-l", "-", "k<=l"},
      {"b.stable", "b.stable", "k", "k-1", "-", "n+1-l", "k<=l"},
      {"b.stable", "b.unstable", "k", "k-1", "n+1-l", "n-l", "k<=l"},
      {"b.unstable", "interior", "-", "k", "n+1-l", "-", "always"},
      {"b.unstable", "b.stable", "-", "k", "-", "n+1-l", "k<l"},
      {"b.unstable", "b.unstable", "-", "k", "n+1-l", "n-l", "k<=l"},
  };
  std::ostringstream os;
  auto cell = [&](const std::string& s, int w) {
    os << s;
    for (int i = static_cast<int>(s.size()); i < w; ++i) os << ' ';
  };
  cell("p1", 12); cell("p2", 12);
  cell("dim_O W^s", 11); cell("dim_Y W^s", 11);
  cell("dim_O W^u", 11); cell("dim_Y W^u", 11);
  os << "empty if\n";
  for (const Row& r : rows) {
    cell(r.p1, 12); cell(r.p2, 12);
    cell(r.ws_o, 11); cell(r.ws_y, 11);
    cell(r.wu_o, 11); cell(r.wu_y, 11);
    os << r.empty_if << "\n";
  }
  return os.str();
}

}  // namespace hh
