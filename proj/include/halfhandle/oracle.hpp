#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "halfhandle/core.hpp"
#include "halfhandle/moves.hpp"

namespace hh {

// Exact level-set bookkeeping for surfaces: every level is a disjoint
// union of circles and intervals, and every attachment acts componentwise.

enum class Shape1 { Circle, Interval };

inline const char* shape_name(Shape1 s) { return s == Shape1::Circle ? "circle" : "interval"; }

struct OneComponent {
  std::string id;
  Shape1 shape = Shape1::Circle;
  friend bool operator==(const OneComponent& a, const OneComponent& b) {
    return a.id == b.id && a.shape == b.shape;
  }
};

struct OneManifoldState {
  std::vector<OneComponent> components;

  const OneComponent* find(const std::string& id) const {
    for (const auto& c : components)
      if (c.id == id) return &c;
    return nullptr;
  }
  // chi of a disjoint union of circles and intervals; also half the number
  // of boundary points.
  int interval_count() const {
    int n = 0;
    for (const auto& c : components) n += c.shape == Shape1::Interval;
    return n;
  }
  bool has_circle() const {
    for (const auto& c : components)
      if (c.shape == Shape1::Circle) return true;
    return false;
  }
  friend bool operator==(const OneManifoldState& a, const OneManifoldState& b) {
    return a.components == b.components;
  }
};

enum class SiteKind { InteriorHandle, RightHalf, LeftHalf };

inline const char* site_kind_name(SiteKind k) {
  switch (k) {
    case SiteKind::InteriorHandle: return "interior";
    case SiteKind::RightHalf: return "right";
    case SiteKind::LeftHalf: return "left";
  }
  return "?";
}

struct AttachmentSite {
  SiteKind kind = SiteKind::InteriorHandle;
  int index = 0;
  std::vector<std::string> targets;  // one entry: both attachment points on that component
  // For two-point sites on an interval: whether the marked points are
  // adjacent along the component. Recorded for the site description; the
  // oriented outcome does not depend on it.
  bool endpoint_adjacent = false;
};

struct BuildMove {
  Rational level;
  AttachmentSite site;
};

// Replay harness: an initial bottom level plus an increasing sequence of
// attachments, each applied to named components. Component ids are
// assigned during replay, "c0", "c1", ... in creation order, starting with
// the bottom-level components.
struct CobordismBuild {
  std::vector<Shape1> sigma0;
  std::vector<BuildMove> moves;
};

namespace oracle_detail {

struct NameGen {
  int next = 0;
  std::string fresh() { return "c" + std::to_string(next++); }
};

inline Shape1 take(OneManifoldState& state, const std::string& id, const char* what) {
  for (auto it = state.components.begin(); it != state.components.end(); ++it) {
    if (it->id == id) {
      Shape1 s = it->shape;
      state.components.erase(it);
      return s;
    }
  }
  throw Error(ErrorCode::UnknownId, std::string(what) + ": component " + id + " not present");
}

}  // namespace oracle_detail

// Componentwise effect of one attachment. The two-point interior cases
// follow the oriented cut-and-reglue rule (incoming strand at one point
// joins the outgoing strand at the other); the segment-enumeration oracle
// in the test suite re-derives this table from scratch.
inline OneManifoldState apply_site(const OneManifoldState& state, const AttachmentSite& site,
                                   oracle_detail::NameGen& names) {
  OneManifoldState out = state;
  auto need_targets = [&](std::size_t lo, std::size_t hi) {
    if (site.targets.size() < lo || site.targets.size() > hi)
      throw Error(ErrorCode::SiteMismatch, "site has wrong number of target components");
  };
  auto add = [&](Shape1 s) { out.components.push_back({names.fresh(), s}); };

  switch (site.kind) {
    case SiteKind::InteriorHandle: {
      if (site.index == 0) {
        need_targets(0, 0);
        add(Shape1::Circle);
        return out;
      }
      if (site.index == 2) {
        need_targets(1, 1);
        if (oracle_detail::take(out, site.targets[0], "cap") != Shape1::Circle)
          throw Error(ErrorCode::SiteMismatch, "an index-2 cap closes a circle, not an interval");
        return out;
      }
      if (site.index != 1) throw Error(ErrorCode::SiteMismatch, "interior site index must be 0..2");
      need_targets(1, 2);
      if (site.targets.size() == 1) {
        Shape1 s = oracle_detail::take(out, site.targets[0], "saddle");
        if (s == Shape1::Circle) {
          add(Shape1::Circle);
          add(Shape1::Circle);
        } else {
          add(Shape1::Interval);
          add(Shape1::Circle);
        }
        return out;
      }
      if (site.targets[0] == site.targets[1])
        throw Error(ErrorCode::SiteMismatch, "same-component site must name the component once");
      Shape1 a = oracle_detail::take(out, site.targets[0], "saddle");
      Shape1 b = oracle_detail::take(out, site.targets[1], "saddle");
      if (a == Shape1::Circle && b == Shape1::Circle) {
        add(Shape1::Circle);
      } else if (a == Shape1::Interval && b == Shape1::Interval) {
        add(Shape1::Interval);
        add(Shape1::Interval);
      } else {
        // circle merged into an interval
        add(Shape1::Interval);
      }
      return out;
    }
    case SiteKind::RightHalf: {
      if (site.index == 0) {
        need_targets(0, 0);
        add(Shape1::Interval);
        return out;
      }
      if (site.index != 1) throw Error(ErrorCode::SiteMismatch, "right site index must be 0 or 1");
      need_targets(1, 2);
      if (site.targets.size() == 1) {
        if (oracle_detail::take(out, site.targets[0], "right join") != Shape1::Interval)
          throw Error(ErrorCode::SiteMismatch, "joining endpoints needs an interval (circles have none)");
        add(Shape1::Circle);
        return out;
      }
      if (site.targets[0] == site.targets[1])
        throw Error(ErrorCode::SiteMismatch, "same-component site must name the component once");
      if (oracle_detail::take(out, site.targets[0], "right join") != Shape1::Interval ||
          oracle_detail::take(out, site.targets[1], "right join") != Shape1::Interval)
        throw Error(ErrorCode::SiteMismatch, "joining endpoints needs intervals (circles have none)");
      add(Shape1::Interval);
      return out;
    }
    case SiteKind::LeftHalf: {
      need_targets(1, 1);
      if (site.index == 1) {
        Shape1 s = oracle_detail::take(out, site.targets[0], "left detach");
        if (s == Shape1::Interval) {
          add(Shape1::Interval);
          add(Shape1::Interval);
        } else {
          add(Shape1::Interval);
        }
        return out;
      }
      if (site.index != 2) throw Error(ErrorCode::SiteMismatch, "left site index must be 1 or 2");
      // a connected 1-manifold with its whole boundary marked is an entire
      // interval component; removing it deletes the component
      if (oracle_detail::take(out, site.targets[0], "left delete") != Shape1::Interval)
        throw Error(ErrorCode::SiteMismatch, "an index-2 removal deletes an interval, not a circle");
      return out;
    }
  }
  throw Error(ErrorCode::SiteMismatch, "unknown site kind");
}

struct ComponentBirth {
  Rational level;      // 0 for bottom-level components
  int creator = -1;    // move index, -1 for the bottom level
  Shape1 shape = Shape1::Circle;
};

struct ReplayResult {
  std::vector<OneManifoldState> states;  // states[i] = level set after i moves
  std::map<std::string, ComponentBirth> births;
};

inline void validate_build(const CobordismBuild& b) {
  for (std::size_t i = 0; i < b.moves.size(); ++i) {
    const Rational& v = b.moves[i].level;
    if (!(Rational(0) < v && v < Rational(1)))
      throw Error(ErrorCode::Parse, "move level " + v.str() + " outside (0,1)");
    if (i > 0 && !(b.moves[i - 1].level < v))
      throw Error(ErrorCode::Parse, "move levels must be strictly increasing");
  }
}

inline ReplayResult replay(const CobordismBuild& b) {
  validate_build(b);
  ReplayResult r;
  oracle_detail::NameGen names;
  OneManifoldState cur;
  for (Shape1 s : b.sigma0) {
    OneComponent c{names.fresh(), s};
    r.births[c.id] = {Rational(0), -1, s};
    cur.components.push_back(c);
  }
  r.states.push_back(cur);
  for (std::size_t i = 0; i < b.moves.size(); ++i) {
    OneManifoldState next = apply_site(cur, b.moves[i].site, names);
    for (const auto& c : next.components)
      if (!r.births.count(c.id))
        r.births[c.id] = {b.moves[i].level, static_cast<int>(i), c.shape};
    cur = std::move(next);
    r.states.push_back(cur);
  }
  return r;
}

// chi(Omega) = chi(Sigma_0) plus the signed handle count; left half-handle
// attachments do not change the total space.
inline long long chi_omega(const CobordismBuild& b) {
  validate_build(b);
  long long chi = 0;
  for (Shape1 s : b.sigma0) chi += s == Shape1::Interval;
  for (const auto& m : b.moves) {
    if (m.site.kind == SiteKind::LeftHalf) continue;
    chi += m.site.index % 2 == 0 ? 1 : -1;
  }
  return chi;
}

// Every circle component of a level set is a closed component of that
// level set. Each circle is reported once, at the level where it appears
// (0 for bottom-level circles).
inline std::vector<std::pair<Rational, std::string>> detect_closed_levels(const CobordismBuild& b) {
  ReplayResult r = replay(b);
  std::vector<std::pair<Rational, std::string>> out;
  for (const auto& [id, birth] : r.births)
    if (birth.shape == Shape1::Circle) out.push_back({birth.level, id});
  std::sort(out.begin(), out.end());
  return out;
}

namespace oracle_detail {

inline std::size_t move_at_level(const CobordismBuild& b, const Rational& level) {
  for (std::size_t i = 0; i < b.moves.size(); ++i)
    if (b.moves[i].level == level) return i;
  throw Error(ErrorCode::UnknownId, "no attachment at level " + level.str());
}

}  // namespace oracle_detail

// Split certificate for the interior point carried by the site at the
// given level: an interval component meets the lateral boundary, a circle
// does not.
inline OracleCertificate certify_split(const CobordismBuild& b, const Rational& level,
                                       const std::string& component) {
  ReplayResult r = replay(b);
  std::size_t i = oracle_detail::move_at_level(b, level);
  const AttachmentSite& site = b.moves[i].site;
  if (site.kind != SiteKind::InteriorHandle || site.index != 1)
    throw Error(ErrorCode::Precondition,
                "the attachment at level " + level.str() + " does not carry an interior "
                "intermediate-index point");
  bool is_target = false;
  for (const auto& t : site.targets) is_target |= (t == component);
  const OneComponent* c = r.states[i].find(component);
  if (!c || !is_target)
    throw Error(ErrorCode::UnknownId,
                "component " + component + " does not carry the point at level " + level.str());

  OracleCertificate cert;
  cert.component = component;
  if (c->shape == Shape1::Interval) {
    cert.ok = true;
    cert.diagnosis = "level component is an interval and meets the lateral boundary";
    return cert;
  }
  cert.ok = false;
  bool interval_target = false;
  for (const auto& t : site.targets) {
    const OneComponent* other = r.states[i].find(t);
    if (other && other->shape == Shape1::Interval) interval_target = true;
  }
  if (!interval_target) {
    cert.diagnosis =
        "level component through the point is a closed circle and misses the lateral boundary; "
        "locally the cobordism is a pair of pants (" +
        std::string(site.targets.size() == 1 ? "one circle splitting into two"
                                             : "two circles merging into one") +
        ")";
  } else {
    cert.diagnosis = "named component is a closed circle; the point also touches an interval "
                     "component, certify through it instead";
  }
  return cert;
}

struct OracleSplitStep {
  std::size_t move_index = 0;
  Rational level;
  OracleCertificate certificate;
};

struct OracleSplitPlan {
  bool ok = true;
  std::vector<OracleSplitStep> steps;  // interior index-1 sites, in level order
  Rational refused_level;
  std::string refusal;
};

// Processing order for moving the interior points to the boundary: each
// index-1 interior site is certified through one of its interval targets.
// A site all of whose targets are circles refuses, and the plan stops at
// the first refusal.
inline OracleSplitPlan plan_splits(const CobordismBuild& b) {
  ReplayResult r = replay(b);
  OracleSplitPlan plan;
  for (std::size_t i = 0; i < b.moves.size(); ++i) {
    const AttachmentSite& site = b.moves[i].site;
    if (site.kind != SiteKind::InteriorHandle || site.index != 1) continue;
    std::string via;
    for (const auto& t : site.targets) {
      const OneComponent* c = r.states[i].find(t);
      if (c && c->shape == Shape1::Interval) { via = t; break; }
    }
    const std::string probe = via.empty() ? site.targets.front() : via;
    OracleCertificate cert = certify_split(b, b.moves[i].level, probe);
    if (!cert.ok) {
      plan.ok = false;
      plan.refused_level = b.moves[i].level;
      plan.refusal = cert.diagnosis;
      return plan;
    }
    plan.steps.push_back({i, b.moves[i].level, cert});
  }
  return plan;
}

// Topology flags of the cobordism the build describes. A closed component
// of the total space is a component chain that never touches the lateral
// boundary (no interval anywhere) nor the bottom or top level.
inline CobordismFlags derive_flags(const CobordismBuild& b) {
  ReplayResult r = replay(b);
  CobordismFlags f;
  f.n = 1;
  f.closed_sigma0 = r.states.front().has_circle();
  f.closed_sigma1 = r.states.back().has_circle();

  std::map<std::string, std::string> parent;
  std::function<std::string(std::string)> root = [&](std::string x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [id, birth] : r.births) parent[id] = id;
  for (std::size_t i = 0; i < b.moves.size(); ++i) {
    std::vector<std::string> involved = b.moves[i].site.targets;
    for (const auto& [id, birth] : r.births)
      if (birth.creator == static_cast<int>(i)) involved.push_back(id);
    for (std::size_t j = 1; j < involved.size(); ++j)
      parent[root(involved[0])] = root(involved[j]);
  }
  std::map<std::string, bool> meets_y, touches_end;
  for (const auto& [id, birth] : r.births) {
    std::string g = root(id);
    if (birth.shape == Shape1::Interval) meets_y[g] = true;
    if (r.states.front().find(id) || r.states.back().find(id)) touches_end[g] = true;
  }
  for (const auto& [id, birth] : r.births) {
    std::string g = root(id);
    if (!meets_y[g] && !touches_end[g]) { f.closed_omega = true; break; }
  }
  return f;
}

// The symbolic shadow of a build: one critical point per attachment, with
// the attachment level as critical value. Interior sites give interior
// points, right sites boundary unstable points, left sites boundary stable
// points. No trajectories are recorded.
inline MorseDatum datum_from_build(const CobordismBuild& b) {
  validate_build(b);
  MorseDatum d;
  d.flags = derive_flags(b);
  for (std::size_t i = 0; i < b.moves.size(); ++i) {
    const AttachmentSite& s = b.moves[i].site;
    CriticalPoint p;
    p.id = "z" + std::to_string(i);
    p.value = b.moves[i].level;
    switch (s.kind) {
      case SiteKind::InteriorHandle: p.kind = PointKind::Interior; p.index = s.index; break;
      case SiteKind::RightHalf: p.kind = PointKind::BoundaryUnstable; p.index = s.index; break;
      case SiteKind::LeftHalf: p.kind = PointKind::BoundaryStable; p.index = s.index; break;
    }
    d.points.push_back(p);
  }
  return d;
}

// Translate an oracle plan into the split plan the datum-side pipeline
// consumes (point ids follow the datum_from_build naming).
inline std::vector<SplitPlanItem> datum_split_plan(const OracleSplitPlan& plan) {
  std::vector<SplitPlanItem> out;
  for (const auto& step : plan.steps)
    out.push_back({"z" + std::to_string(step.move_index), step.certificate});
  return out;
}

}  // namespace hh
