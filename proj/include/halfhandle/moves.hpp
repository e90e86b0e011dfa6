#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "halfhandle/core.hpp"
#include "halfhandle/homology.hpp"

namespace hh {

// One applied move. The post-state datum is kept in memory so suites can
// re-check invariants at every intermediate step; serialized traces carry
// only the summary fields.
struct TraceEntry {
  std::string move;
  std::string params;
  std::uint64_t pre_hash = 0;
  std::uint64_t post_hash = 0;
  long long chi_before = 0;
  long long chi_after = 0;
  std::string note;
  MorseDatum post;
};
using MoveTrace = std::vector<TraceEntry>;

class CancelRefusal : public Error {
 public:
  CancelRefusal(ErrorCode code, const std::string& msg, GradedRanks certificate)
      : Error(code, msg), certificate_(std::move(certificate)) {}
  const GradedRanks& certificate() const { return certificate_; }

 private:
  GradedRanks certificate_;
};

namespace detail {

inline void push_trace(MoveTrace* tr, const std::string& move, const std::string& params,
                       const MorseDatum& pre, const MorseDatum& post, const std::string& note = "") {
  if (!tr) return;
  TraceEntry e;
  e.move = move;
  e.params = params;
  e.pre_hash = datum_hash(pre);
  e.post_hash = datum_hash(post);
  e.chi_before = relative_euler_characteristic(pre);
  e.chi_after = relative_euler_characteristic(post);
  e.note = note;
  e.post = post;
  tr->push_back(std::move(e));
}

// Structural soundness every move relies on. Admissibility of recorded
// trajectories is deliberately not included here: rearrangement surfaces
// inadmissible records as ScheduleConflict instead.
inline void require_move_ready(const MorseDatum& d) {
  if (d.allow_same_level)
    throw Error(ErrorCode::Precondition, "same-level marker must be cleared before moves");
  if (d.flags.n < 1) throw Error(ErrorCode::Precondition, "n must be >= 1");
  std::set<std::string> ids;
  std::set<Rational> values;
  for (const auto& p : d.points) {
    if (!ids.insert(p.id).second)
      throw Error(ErrorCode::Precondition, "duplicate point id " + p.id);
    if (!valid_index(p.kind, p.index, d.flags.n))
      throw Error(ErrorCode::Precondition, "point " + p.id + " has invalid kind/index");
    if (!(Rational(0) < p.value && p.value < Rational(1)))
      throw Error(ErrorCode::Precondition, "point " + p.id + " has value outside (0,1)");
    if (!values.insert(p.value).second)
      throw Error(ErrorCode::Precondition, "points share a critical value");
  }
  for (const auto& t : d.trajectories) {
    const CriticalPoint* a = d.find(t.from);
    const CriticalPoint* b = d.find(t.to);
    if (!a || !b) throw Error(ErrorCode::Precondition, "trajectory endpoint missing");
    if (t.multiplicity < 1) throw Error(ErrorCode::Precondition, "trajectory multiplicity < 1");
    if (!(a->value < b->value))
      throw Error(ErrorCode::Precondition, "trajectory " + t.from + "->" + t.to + " not increasing");
  }
}

inline bool reachable(const MorseDatum& d, const std::string& from, const std::string& to) {
  std::deque<std::string> queue{from};
  std::set<std::string> seen{from};
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    if (cur == to) return true;
    for (const auto& t : d.trajectories)
      if (t.from == cur && seen.insert(t.to).second) queue.push_back(t.to);
  }
  return false;
}

}  // namespace detail

// True iff the two points are flow-independent: no recorded trajectory
// chain connects them in either direction, so their critical values can be
// exchanged freely.
inline bool can_reorder(const MorseDatum& d, const std::string& p, const std::string& q) {
  if (!d.find(p)) throw Error(ErrorCode::UnknownId, "unknown point " + p);
  if (!d.find(q)) throw Error(ErrorCode::UnknownId, "unknown point " + q);
  if (p == q) throw Error(ErrorCode::Precondition, "points must be distinct");
  return !detail::reachable(d, p, q) && !detail::reachable(d, q, p);
}

namespace detail {

// Shared by set_values and the schedulers; `conflict_code` distinguishes a
// user assignment (OrderConflict) from a canonical schedule that a
// recorded trajectory contradicts (ScheduleConflict).
inline MorseDatum apply_values(const MorseDatum& d, const std::map<std::string, Rational>& assignment,
                               ErrorCode conflict_code) {
  MorseDatum out = d;
  for (const auto& [id, v] : assignment) {
    CriticalPoint* p = out.find(id);
    if (!p) throw Error(ErrorCode::UnknownId, "unknown point " + id);
    if (!(Rational(0) < v && v < Rational(1)))
      throw Error(ErrorCode::RangeError, "value " + v.str() + " for " + id + " outside (0,1)");
    p->value = v;
  }
  std::set<Rational> values;
  for (const auto& p : out.points)
    if (!values.insert(p.value).second)
      throw Error(ErrorCode::RangeError, "assignment collides at value " + p.value.str());
  for (const auto& t : out.trajectories) {
    const CriticalPoint* a = out.find(t.from);
    const CriticalPoint* b = out.find(t.to);
    if (!(a->value < b->value))
      throw Error(conflict_code,
                  "trajectory " + t.from + "->" + t.to + " would be order-reversed");
  }
  return out;
}

inline std::string boundary_reorder_note(const MorseDatum& pre, const MorseDatum& post) {
  for (const auto& p : pre.points) {
    if (p.kind == PointKind::Interior) continue;
    for (const auto& q : pre.points) {
      if (&p == &q || q.kind == PointKind::Interior) continue;
      const CriticalPoint* p2 = post.find(p.id);
      const CriticalPoint* q2 = post.find(q.id);
      if (p2 && q2 && (p.value < q.value) != (p2->value < q2->value))
        return "two boundary points exchanged levels; realizing this may require a metric change "
               "away from their flow loci";
    }
  }
  return "";
}

}  // namespace detail

inline MorseDatum set_values(const MorseDatum& d, const std::map<std::string, Rational>& assignment,
                             MoveTrace* trace = nullptr) {
  detail::require_move_ready(d);
  MorseDatum out = detail::apply_values(d, assignment, ErrorCode::OrderConflict);
  std::string params;
  for (const auto& [id, v] : assignment) params += (params.empty() ? "" : ",") + id + "=" + v.str();
  detail::push_trace(trace, "set_values", params, d, out, detail::boundary_reorder_note(d, out));
  return out;
}

namespace detail {

struct BandSpec {
  Rational center;
  Rational radius;
};

// Distinct values inside a band, deterministic by id (and kind as a
// tiebreaker for shared centers such as interior/right index 0).
inline std::map<std::string, Rational> band_assignment(
    const MorseDatum& d, const std::map<std::string, BandSpec>& spec_by_id) {
  std::map<std::pair<Rational, std::string>, std::vector<std::string>> bands;
  for (const auto& [id, b] : spec_by_id)
    bands[{b.center, b.radius.str()}].push_back(id);
  std::map<std::string, Rational> assign;
  for (auto& [key, ids] : bands) {
    std::sort(ids.begin(), ids.end());
    const Rational center = key.first;
    const Rational radius = spec_by_id.at(ids.front()).radius;
    const int m = static_cast<int>(ids.size());
    for (int i = 0; i < m; ++i) {
      // center - r + (i+1) * 2r/(m+1), strictly inside the band
      Rational v = center - radius + Rational(2 * (i + 1)) * radius / Rational(m + 1);
      assign[ids[i]] = v;
    }
  }
  return assign;
}

inline Rational theta_for(int n) { return Rational(1, 4 * n + 6); }

// Canonical post-splitting schedule: boundary stable points of index k
// near (4k-1)theta, boundary unstable near (4k+1)theta, interior extremes
// at theta and 1-theta, remaining interior points near 4k theta.
inline std::map<std::string, BandSpec> canonical_bands(const MorseDatum& d) {
  const int n = d.flags.n;
  const Rational th = theta_for(n);
  std::map<std::string, BandSpec> out;
  for (const auto& p : d.points) {
    Rational c;
    switch (p.kind) {
      case PointKind::Interior:
        if (p.index == 0) c = th;
        else if (p.index == n + 1) c = Rational(1) - th;
        else c = Rational(4 * p.index) * th;
        break;
      case PointKind::BoundaryStable: c = Rational(4 * p.index - 1) * th; break;
      case PointKind::BoundaryUnstable: c = Rational(4 * p.index + 1) * th; break;
    }
    out[p.id] = {c, th / Rational(4)};
  }
  return out;
}

// Pre-splitting schedule: same as the canonical one in the middle, but the
// extreme classes are packed strictly below 2*theta and strictly above
// 1 - 2*theta so those two values can serve as the designated regular
// levels separating them.
inline std::map<std::string, BandSpec> technically_good_bands(const MorseDatum& d) {
  const int n = d.flags.n;
  const Rational th = theta_for(n);
  const Rational one(1);
  const auto canon = canonical_bands(d);
  std::map<std::string, BandSpec> out;
  for (const auto& p : d.points) {
    BandSpec b;
    b.radius = th / Rational(5);
    if (p.index == 0) {
      b.center = th / Rational(2);
    } else if (p.kind == PointKind::BoundaryStable && p.index == 1) {
      b.center = Rational(3) * th / Rational(2);
    } else if (p.kind == PointKind::BoundaryUnstable && p.index == n) {
      b.center = one - Rational(3) * th / Rational(2);
    } else if (p.kind == PointKind::BoundaryStable && p.index == n + 1) {
      b.center = one - th;
    } else if (p.kind == PointKind::Interior && p.index == n + 1) {
      b.center = one - th / Rational(2);
    } else {
      b = canon.at(p.id);
    }
    out[p.id] = b;
  }
  return out;
}

}  // namespace detail

inline MorseDatum global_rearrange(const MorseDatum& d, MoveTrace* trace = nullptr) {
  detail::require_move_ready(d);
  auto assign = detail::band_assignment(d, detail::canonical_bands(d));
  MorseDatum out = detail::apply_values(d, assign, ErrorCode::ScheduleConflict);
  detail::push_trace(trace, "global_rearrange", "theta=" + detail::theta_for(d.flags.n).str(), d,
                     out, detail::boundary_reorder_note(d, out));
  return out;
}

// ---- technical goodness -------------------------------------------------

namespace detail {

inline bool tg_order_ok(const MorseDatum& d) {
  for (const auto& p : d.points)
    for (const auto& q : d.points)
      if (p.index < q.index && !(p.value < q.value)) return false;
  // the designated separating levels must exist: extreme classes strictly
  // below / above everything else
  const int n = d.flags.n;
  auto is_bottom = [&](const CriticalPoint& p) {
    return p.index == 0 || (p.kind == PointKind::BoundaryStable && p.index == 1);
  };
  auto is_top = [&](const CriticalPoint& p) {
    return p.index == n + 1 || (p.kind == PointKind::BoundaryUnstable && p.index == n);
  };
  for (const auto& p : d.points)
    for (const auto& q : d.points) {
      if (is_bottom(p) && !is_bottom(q) && !(p.value < q.value)) return false;
      if (is_top(p) && !is_top(q) && !(q.value < p.value)) return false;
    }
  return true;
}

// A pair of interior points eligible for the 0/1 or n/(n+1) cleanup:
// joined by a unique multiplicity-one trajectory with no other incidences.
inline std::optional<std::pair<std::string, std::string>> find_tg_cancellable(const MorseDatum& d) {
  const int n = d.flags.n;
  for (const auto& t : d.trajectories) {
    if (t.multiplicity != 1) continue;
    const CriticalPoint* a = d.find(t.from);
    const CriticalPoint* b = d.find(t.to);
    if (!a || !b) continue;
    if (a->kind != PointKind::Interior || b->kind != PointKind::Interior) continue;
    const bool low = a->index == 0 && b->index == 1;
    const bool high = a->index == n && b->index == n + 1;
    if (!low && !high) continue;
    int incident = 0;
    for (const auto& u : d.trajectories)
      if (u.from == a->id || u.to == a->id || u.from == b->id || u.to == b->id) ++incident;
    if (incident == 1) return std::make_pair(a->id, b->id);
  }
  return std::nullopt;
}

}  // namespace detail

inline bool is_technically_good(const MorseDatum& d) {
  return detail::tg_order_ok(d) && !detail::find_tg_cancellable(d).has_value();
}

inline MorseDatum cancel_pair(const MorseDatum& d, const std::string& z_id, const std::string& w_id,
                              MoveTrace* trace = nullptr) {
  detail::require_move_ready(d);
  const CriticalPoint* z = d.find(z_id);
  const CriticalPoint* w = d.find(w_id);
  if (!z) throw Error(ErrorCode::UnknownId, "unknown point " + z_id);
  if (!w) throw Error(ErrorCode::UnknownId, "unknown point " + w_id);
  if (z_id == w_id) throw Error(ErrorCode::Precondition, "points must be distinct");
  if (w->index != z->index + 1)
    throw Error(ErrorCode::IndexMismatch,
                "cancellation needs index(w) = index(z)+1, got " + std::to_string(z->index) +
                    " and " + std::to_string(w->index));

  const bool z_int = z->kind == PointKind::Interior;
  const bool w_int = w->kind == PointKind::Interior;
  if (z_int != w_int) {
    MorseDatum pair_sub;
    pair_sub.flags = d.flags;
    pair_sub.points = {*z, *w};
    throw CancelRefusal(ErrorCode::MixedInteriorBoundary,
                        "one point is interior and one is on the lateral boundary; the restriction "
                        "to the lateral boundary keeps a critical point, so the side cobordism is "
                        "not a product",
                        generator_counts(pair_sub));
  }
  if (!z_int && z->kind != w->kind) {
    MorseDatum pair_sub;
    pair_sub.flags = d.flags;
    pair_sub.points = {*z, *w};
    GradedRanks cert = generator_counts(pair_sub);
    std::string degrees;
    for (auto& [deg, r] : cert.ranks)
      degrees += (degrees.empty() ? "" : ",") + std::to_string(deg) + ":" + std::to_string(r);
    throw CancelRefusal(ErrorCode::StableUnstableMix,
                        "one point is boundary stable and one boundary unstable; the relative "
                        "homology of the pair cobordism is nonzero ({" + degrees +
                            "}), so it is not a product",
                        cert);
  }

  int records = 0, mult = 0, incident = 0;
  for (const auto& t : d.trajectories) {
    if (t.from == z_id && t.to == w_id) { ++records; mult = t.multiplicity; }
    if (t.from == z_id || t.to == z_id || t.from == w_id || t.to == w_id) ++incident;
  }
  if (records != 1 || mult != 1 || incident != 1)
    throw Error(ErrorCode::NonUniqueTrajectory,
                "cancellation needs a unique multiplicity-1 trajectory joining the pair and no "
                "other trajectories touching it");

  MorseDatum out = d;
  std::erase_if(out.points, [&](const CriticalPoint& p) { return p.id == z_id || p.id == w_id; });
  std::erase_if(out.trajectories,
                [&](const Trajectory& t) { return t.from == z_id && t.to == w_id; });
  detail::push_trace(trace, "cancel_pair", z_id + "," + w_id, d, out);
  return out;
}

inline std::pair<MorseDatum, MoveTrace> make_technically_good(const MorseDatum& d) {
  detail::require_move_ready(d);
  MoveTrace tr;
  MorseDatum cur = d;
  if (!detail::tg_order_ok(cur)) {
    auto assign = detail::band_assignment(cur, detail::technically_good_bands(cur));
    MorseDatum next = detail::apply_values(cur, assign, ErrorCode::ScheduleConflict);
    detail::push_trace(&tr, "rearrange_for_goodness",
                       "theta=" + detail::theta_for(cur.flags.n).str(), cur, next,
                       detail::boundary_reorder_note(cur, next));
    cur = std::move(next);
  }
  while (auto pr = detail::find_tg_cancellable(cur))
    cur = cancel_pair(cur, pr->first, pr->second, &tr);
  return {cur, tr};
}

// ---- splitting ----------------------------------------------------------

struct FlagCertificate {};
struct OracleCertificate {
  bool ok = false;
  std::string component;
  std::string diagnosis;
};
using SplitCertificate = std::variant<FlagCertificate, OracleCertificate>;

namespace detail {

inline void check_certificate(const MorseDatum& d, const SplitCertificate& cert) {
  if (std::holds_alternative<FlagCertificate>(cert)) {
    if (d.flags.any_closed())
      throw Error(ErrorCode::Obstruction,
                  "the declared topology asserts a closed connected component, so the level "
                  "component through the point may miss the lateral boundary");
  } else {
    const auto& oc = std::get<OracleCertificate>(cert);
    if (!oc.ok) throw Error(ErrorCode::Obstruction, oc.diagnosis);
  }
}

inline std::string fresh_id(const MorseDatum& d, std::string base) {
  while (d.find(base)) base += "'";
  return base;
}

}  // namespace detail

// Replaces one interior point by a boundary stable / boundary unstable
// pair of the same index just below and above the old level, recording the
// single connecting trajectory inside the lateral boundary. Trajectories
// incident to the old point are dropped: the deformation is local and
// their persistence is not something the symbolic layer may infer.
inline MorseDatum split_interior(const MorseDatum& d, const std::string& z_id,
                                 const SplitCertificate& cert, MoveTrace* trace = nullptr) {
  detail::require_move_ready(d);
  const CriticalPoint* z = d.find(z_id);
  if (!z) throw Error(ErrorCode::UnknownId, "unknown point " + z_id);
  if (z->kind != PointKind::Interior)
    throw Error(ErrorCode::Precondition, "only interior points can be split");
  const int n = d.flags.n;
  if (z->index < 1 || z->index > n)
    throw Error(ErrorCode::IndexOutOfRange,
                "split needs interior index in 1.." + std::to_string(n) + ", got " +
                    std::to_string(z->index));
  detail::check_certificate(d, cert);

  const Rational v = z->value;
  Rational gap = v < Rational(1) - v ? v : Rational(1) - v;
  for (const auto& p : d.points) {
    if (p.id == z_id) continue;
    Rational dist = p.value < v ? v - p.value : p.value - v;
    if (dist < gap) gap = dist;
  }
  const Rational w = gap / Rational(4);

  CriticalPoint zs, zu;
  zs.id = detail::fresh_id(d, z_id + ".s");
  zs.kind = PointKind::BoundaryStable;
  zs.index = z->index;
  zs.value = v - w;
  zu.id = detail::fresh_id(d, z_id + ".u");
  zu.kind = PointKind::BoundaryUnstable;
  zu.index = z->index;
  zu.value = v + w;

  MorseDatum out = d;
  std::string dropped;
  std::erase_if(out.trajectories, [&](const Trajectory& t) {
    if (t.from != z_id && t.to != z_id) return false;
    dropped += (dropped.empty() ? "" : " ") + t.from + "->" + t.to;
    return true;
  });
  for (auto it = out.points.begin(); it != out.points.end(); ++it) {
    if (it->id == z_id) {
      it = out.points.erase(it);
      it = out.points.insert(it, zu);
      it = out.points.insert(it, zs);
      break;
    }
  }
  out.trajectories.push_back({zs.id, zu.id, 1});
  detail::push_trace(trace, "split_interior",
                     z_id + "->" + zs.id + "," + zu.id + " index=" + std::to_string(zs.index),
                     d, out,
                     dropped.empty() ? "" : "dropped recorded trajectories: " + dropped);
  return out;
}

struct SplitPlanItem {
  std::string point_id;
  SplitCertificate certificate;
};

// Splits every interior point of intermediate index. Without a plan the
// points are processed bottom-up with the flag-based certificate; a plan
// supplies the processing order and per-point certificates (used at n=1,
// where the order matters and the surface oracle provides it).
inline MorseDatum split_all_interior(const MorseDatum& d, MoveTrace* trace = nullptr,
                                     const std::vector<SplitPlanItem>* plan = nullptr) {
  detail::require_move_ready(d);
  if (!is_technically_good(d))
    throw Error(ErrorCode::Precondition, "datum is not technically good");
  const int n = d.flags.n;

  std::vector<std::pair<Rational, std::string>> targets;
  for (const auto& p : d.points)
    if (p.kind == PointKind::Interior && p.index >= 1 && p.index <= n)
      targets.push_back({p.value, p.id});
  std::sort(targets.begin(), targets.end());

  MorseDatum cur = d;
  if (plan) {
    std::set<std::string> planned;
    for (const auto& item : *plan) planned.insert(item.point_id);
    for (const auto& [v, id] : targets)
      if (!planned.count(id))
        throw Error(ErrorCode::Precondition, "split plan misses point " + id);
    for (const auto& item : *plan) cur = split_interior(cur, item.point_id, item.certificate, trace);
    return cur;
  }
  for (const auto& [v, id] : targets) {
    if (cur.flags.any_closed())
      throw Error(ErrorCode::Obstruction, "point " + id + " cannot be moved to the boundary: the "
                  "declared topology asserts a closed connected component");
    cur = split_interior(cur, id, FlagCertificate{}, trace);
  }
  return cur;
}

// ---- product recognition ------------------------------------------------

inline bool is_left_product(const MorseDatum& d) {
  for (const auto& p : d.points)
    if (p.kind != PointKind::BoundaryStable) return false;
  return true;
}

inline bool is_right_product(const MorseDatum& d) {
  for (const auto& p : d.points)
    if (p.kind != PointKind::BoundaryUnstable) return false;
  return true;
}

// ---- normal form --------------------------------------------------------

struct SplitBlock {
  std::string label;
  int twice_k = 0;  // 2k for the half-integer block position k
  Rational lo, hi;
  std::vector<std::string> point_ids;
};

struct SplitDecomposition {
  Rational theta;
  std::vector<SplitBlock> blocks;
};

namespace detail {

inline std::string block_label(int twice_k) {
  if (twice_k % 2 == 0) return "Omega_" + std::to_string(twice_k / 2);
  return "Omega_" + std::to_string(twice_k) + "/2";
}

// Block position by point class. Interior index-0 points and boundary
// unstable index-0 points both live in the first block: an index-0 right
// half-handle acts on the total space exactly like an index-0 handle.
inline int block_position(const CriticalPoint& p, int n) {
  switch (p.kind) {
    case PointKind::Interior:
      if (p.index == 0) return 0;
      if (p.index == n + 1) return 2 * (n + 1);
      break;
    case PointKind::BoundaryStable:
      return 2 * p.index - 1;
    case PointKind::BoundaryUnstable:
      return 2 * p.index;
  }
  throw Error(ErrorCode::Precondition,
              "point " + p.id + " has no block in the normal form (interior index " +
                  std::to_string(p.index) + ")");
}

}  // namespace detail

inline SplitDecomposition build_decomposition(const MorseDatum& d) {
  const int n = d.flags.n;
  const Rational th = detail::theta_for(n);
  SplitDecomposition dec;
  dec.theta = th;
  for (int j = 0; j <= 2 * (n + 1); ++j) {
    SplitBlock b;
    b.twice_k = j;
    b.label = detail::block_label(j);
    b.lo = Rational(2 * j) * th;
    b.hi = Rational(2 * j + 2) * th;
    dec.blocks.push_back(b);
  }
  for (const auto& p : d.points) {
    SplitBlock& b = dec.blocks[detail::block_position(p, n)];
    if (!(b.lo < p.value && p.value < b.hi))
      throw Error(ErrorCode::Precondition,
                  "point " + p.id + " at " + p.value.str() + " lies outside its block window [" +
                      b.lo.str() + "," + b.hi.str() + "]");
    b.point_ids.push_back(p.id);
  }
  return dec;
}

// Full pipeline: make the function technically good, move every interior
// point of intermediate index to the boundary, apply the canonical
// schedule and cut the interval into the block windows.
inline std::pair<SplitDecomposition, MoveTrace> normal_form(const MorseDatum& d) {
  {
    auto v = validate(d);
    if (!v.empty())
      throw Error(ErrorCode::Precondition, "datum invalid: " + v.front().rule + " (" +
                                               v.front().subject + ")");
  }
  if (d.flags.any_closed())
    throw Error(ErrorCode::Obstruction,
                "normal form requires that no level surface and no total-space component is "
                "closed; the declared topology says otherwise");
  auto [good, trace] = make_technically_good(d);
  MorseDatum split = split_all_interior(good, &trace);
  MorseDatum scheduled = global_rearrange(split, &trace);
  return {build_decomposition(scheduled), std::move(trace)};
}

// Invariant checks used by the test suites.
inline std::vector<std::string> check_split_decomposition(const SplitDecomposition& dec,
                                                          const MorseDatum& d) {
  std::vector<std::string> problems;
  const int n = d.flags.n;
  if (dec.theta != detail::theta_for(n)) problems.push_back("theta mismatch");
  if (static_cast<int>(dec.blocks.size()) != 2 * n + 3) problems.push_back("wrong block count");
  for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
    const SplitBlock& b = dec.blocks[i];
    if (!(b.lo < b.hi)) problems.push_back(b.label + ": empty window");
    if (i > 0 && dec.blocks[i - 1].hi != b.lo)
      problems.push_back(b.label + ": windows not contiguous increasing");
    for (const auto& id : b.point_ids) {
      const CriticalPoint* p = d.find(id);
      if (!p) { problems.push_back(b.label + ": unknown member " + id); continue; }
      if (!(b.lo < p->value && p->value < b.hi))
        problems.push_back(b.label + ": member " + id + " outside window");
      const int pos = b.twice_k;
      bool ok = false;
      if (pos == 0)
        ok = (p->kind == PointKind::Interior || p->kind == PointKind::BoundaryUnstable) &&
             p->index == 0;
      else if (pos == 2 * (n + 1))
        ok = p->kind == PointKind::Interior && p->index == n + 1;
      else if (pos % 2 == 1)
        ok = p->kind == PointKind::BoundaryStable && p->index == (pos + 1) / 2;
      else
        ok = p->kind == PointKind::BoundaryUnstable && p->index == pos / 2;
      if (!ok) problems.push_back(b.label + ": member " + id + " of wrong class");
    }
  }
  std::size_t total = 0;
  for (const auto& b : dec.blocks) total += b.point_ids.size();
  if (total != d.points.size()) problems.push_back("blocks do not partition the points");
  return problems;
}

}  // namespace hh
