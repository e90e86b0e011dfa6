#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "halfhandle/rational.hpp"
#include "halfhandle/table.hpp"

namespace hh {

struct CriticalPoint {
  std::string id;
  PointKind kind = PointKind::Interior;
  int index = 0;
  Rational value;

  friend bool operator==(const CriticalPoint& a, const CriticalPoint& b) {
    return a.id == b.id && a.kind == b.kind && a.index == b.index && a.value == b.value;
  }
};

// A recorded flow line bundle from one critical point up to another.
// Recorded means exactly that: the calculus never infers existence of a
// trajectory, it only checks admissibility of what the input asserts.
struct Trajectory {
  std::string from;
  std::string to;
  int multiplicity = 1;

  friend bool operator==(const Trajectory& a, const Trajectory& b) {
    return a.from == b.from && a.to == b.to && a.multiplicity == b.multiplicity;
  }
};

struct CobordismFlags {
  int n = 1;
  bool closed_sigma0 = false;
  bool closed_sigma1 = false;
  bool closed_omega = false;

  bool any_closed() const { return closed_sigma0 || closed_sigma1 || closed_omega; }

  friend bool operator==(const CobordismFlags& a, const CobordismFlags& b) {
    return a.n == b.n && a.closed_sigma0 == b.closed_sigma0 &&
           a.closed_sigma1 == b.closed_sigma1 && a.closed_omega == b.closed_omega;
  }
};

struct MorseDatum {
  CobordismFlags flags;
  std::vector<CriticalPoint> points;
  std::vector<Trajectory> trajectories;
  // Transient marker permitting equal critical values while points are
  // being re-levelled; it must be cleared before any move runs.
  bool allow_same_level = false;

  const CriticalPoint* find(const std::string& id) const {
    for (const auto& p : points)
      if (p.id == id) return &p;
    return nullptr;
  }
  CriticalPoint* find(const std::string& id) {
    for (auto& p : points)
      if (p.id == id) return &p;
    return nullptr;
  }

  friend bool operator==(const MorseDatum& a, const MorseDatum& b) {
    return a.flags == b.flags && a.points == b.points &&
           a.trajectories == b.trajectories && a.allow_same_level == b.allow_same_level;
  }
};

struct Violation {
  std::string subject;  // point id or "from->to" for a trajectory
  std::string rule;
  std::string message;
};

inline std::vector<Violation> validate(const MorseDatum& d) {
  std::vector<Violation> out;
  const int n = d.flags.n;
  if (n < 1) out.push_back({"flags", "dimension", "n must be >= 1"});

  std::set<std::string> ids;
  for (const auto& p : d.points) {
    if (!ids.insert(p.id).second)
      out.push_back({p.id, "point.duplicate_id", "duplicate point id"});
    if (n >= 1 && !valid_index(p.kind, p.index, n))
      out.push_back({p.id, "point.index_range",
                     std::string(kind_name(p.kind)) + " index " + std::to_string(p.index) +
                         " out of range for n=" + std::to_string(n)});
    if (!(Rational(0) < p.value && p.value < Rational(1)))
      out.push_back({p.id, "point.value_range", "critical value must lie strictly in (0,1)"});
  }

  if (!d.allow_same_level) {
    std::map<Rational, std::vector<std::string>, std::less<Rational>> by_value;
    for (const auto& p : d.points) by_value[p.value].push_back(p.id);
    for (auto& [v, who] : by_value)
      if (who.size() > 1)
        out.push_back({who[0] + "," + who[1], "datum.distinct_values",
                       "points share critical value " + v.str()});
  }

  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& t : d.trajectories) {
    const std::string subject = t.from + "->" + t.to;
    const CriticalPoint* a = d.find(t.from);
    const CriticalPoint* b = d.find(t.to);
    if (!a || !b) {
      out.push_back({subject, "trajectory.endpoints", "trajectory endpoint not in datum"});
      continue;
    }
    if (!seen.insert({t.from, t.to}).second)
      out.push_back({subject, "trajectory.duplicate",
                     "duplicate trajectory record (use multiplicity instead)"});
    if (t.multiplicity < 1)
      out.push_back({subject, "trajectory.multiplicity", "multiplicity must be >= 1"});
    if (!(a->value < b->value))
      out.push_back({subject, "trajectory.value_order",
                     "the function increases along flow lines: value(from) < value(to)"});
    if (n >= 1 && valid_index(a->kind, a->index, n) && valid_index(b->kind, b->index, n) &&
        !admissible(b->kind, b->index, a->kind, a->index, n))
      out.push_back({subject, "trajectory.admissible",
                     "trajectory excluded by the stable/unstable dimension count"});
  }
  return out;
}

enum class LiftSign { AllStable, AllUnstable };

// Extends boundary Morse data to the cobordism: the quadratic collar
// extension raises the index by one on the stable side and keeps it on the
// unstable side. No trajectories are recorded.
inline MorseDatum lift_boundary_datum(const std::vector<std::pair<int, Rational>>& boundary_points,
                                      LiftSign sign, const CobordismFlags& flags) {
  MorseDatum d;
  d.flags = flags;
  std::set<Rational> values;
  int i = 0;
  for (const auto& [k, v] : boundary_points) {
    if (k < 0 || k > flags.n)
      throw Error(ErrorCode::IndexOutOfRange,
                  "boundary index " + std::to_string(k) + " outside 0.." + std::to_string(flags.n));
    if (!(Rational(0) < v && v < Rational(1)))
      throw Error(ErrorCode::RangeError, "boundary value " + v.str() + " outside (0,1)");
    if (!values.insert(v).second)
      throw Error(ErrorCode::RangeError, "boundary values must be pairwise distinct");
    CriticalPoint p;
    p.id = "y" + std::to_string(i++);
    if (sign == LiftSign::AllStable) {
      p.kind = PointKind::BoundaryStable;
      p.index = k + 1;
    } else {
      p.kind = PointKind::BoundaryUnstable;
      p.index = k;
    }
    p.value = v;
    d.points.push_back(p);
  }
  return d;
}

// FNV-1a over a canonical rendering; used for trace pre/post fingerprints.
inline std::uint64_t datum_hash(const MorseDatum& d) {
  std::string s;
  s += "n=" + std::to_string(d.flags.n);
  s += d.flags.closed_sigma0 ? ";s0" : ";-";
  s += d.flags.closed_sigma1 ? ";s1" : ";-";
  s += d.flags.closed_omega ? ";om" : ";-";
  s += d.allow_same_level ? ";eq" : ";-";
  for (const auto& p : d.points)
    s += "|" + p.id + "," + kind_name(p.kind) + "," + std::to_string(p.index) + "," + p.value.str();
  for (const auto& t : d.trajectories)
    s += "|" + t.from + ">" + t.to + "x" + std::to_string(t.multiplicity);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace hh
