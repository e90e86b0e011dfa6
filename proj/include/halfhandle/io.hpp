#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "halfhandle/moves.hpp"
#include "halfhandle/oracle.hpp"

namespace hh::io {

using json = nlohmann::json;

namespace detail {

inline void expect_object(const json& j, const char* what) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, std::string(what) + " must be an object");
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                           const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok |= (it.key() == k);
    if (!ok)
      throw Error(ErrorCode::Parse,
                  std::string("unknown field '") + it.key() + "' in " + what);
  }
}

inline std::string get_string(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_string())
    throw Error(ErrorCode::Parse, std::string(what) + " needs string field '" + key + "'");
  return j[key].get<std::string>();
}

inline long long get_int(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw Error(ErrorCode::Parse, std::string(what) + " needs integer field '" + key + "'");
  return j[key].get<long long>();
}

inline bool get_bool(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_boolean())
    throw Error(ErrorCode::Parse, std::string(what) + " needs boolean field '" + key + "'");
  return j[key].get<bool>();
}

}  // namespace detail

// ---- Morse datum documents ------------------------------------------------

inline PointKind parse_kind(const std::string& s) {
  if (s == "interior") return PointKind::Interior;
  if (s == "boundary_stable") return PointKind::BoundaryStable;
  if (s == "boundary_unstable") return PointKind::BoundaryUnstable;
  throw Error(ErrorCode::Parse, "unknown point kind '" + s + "'");
}

inline MorseDatum parse_datum(const json& j) {
  detail::expect_object(j, "datum");
  detail::reject_unknown(j, {"n", "flags", "points", "trajectories"}, "datum");
  MorseDatum d;
  d.flags.n = static_cast<int>(detail::get_int(j, "n", "datum"));
  if (j.contains("flags")) {
    const json& f = j["flags"];
    detail::expect_object(f, "flags");
    detail::reject_unknown(f, {"closed_sigma0", "closed_sigma1", "closed_omega"}, "flags");
    d.flags.closed_sigma0 = detail::get_bool(f, "closed_sigma0", "flags");
    d.flags.closed_sigma1 = detail::get_bool(f, "closed_sigma1", "flags");
    d.flags.closed_omega = detail::get_bool(f, "closed_omega", "flags");
  }
  if (j.contains("points")) {
    if (!j["points"].is_array()) throw Error(ErrorCode::Parse, "'points' must be an array");
    for (const json& pj : j["points"]) {
      detail::expect_object(pj, "point");
      detail::reject_unknown(pj, {"id", "kind", "index", "value"}, "point");
      CriticalPoint p;
      p.id = detail::get_string(pj, "id", "point");
      p.kind = parse_kind(detail::get_string(pj, "kind", "point"));
      p.index = static_cast<int>(detail::get_int(pj, "index", "point"));
      p.value = Rational::parse(detail::get_string(pj, "value", "point"));
      d.points.push_back(std::move(p));
    }
  }
  if (j.contains("trajectories")) {
    if (!j["trajectories"].is_array())
      throw Error(ErrorCode::Parse, "'trajectories' must be an array");
    for (const json& tj : j["trajectories"]) {
      detail::expect_object(tj, "trajectory");
      detail::reject_unknown(tj, {"from", "to", "multiplicity"}, "trajectory");
      Trajectory t;
      t.from = detail::get_string(tj, "from", "trajectory");
      t.to = detail::get_string(tj, "to", "trajectory");
      t.multiplicity =
          tj.contains("multiplicity") ? static_cast<int>(detail::get_int(tj, "multiplicity", "trajectory")) : 1;
      d.trajectories.push_back(std::move(t));
    }
  }
  return d;
}

inline json emit_datum(const MorseDatum& d) {
  json j;
  j["n"] = d.flags.n;
  j["flags"] = {{"closed_sigma0", d.flags.closed_sigma0},
                {"closed_sigma1", d.flags.closed_sigma1},
                {"closed_omega", d.flags.closed_omega}};
  j["points"] = json::array();
  for (const auto& p : d.points)
    j["points"].push_back({{"id", p.id},
                           {"kind", kind_name(p.kind)},
                           {"index", p.index},
                           {"value", p.value.str()}});
  j["trajectories"] = json::array();
  for (const auto& t : d.trajectories)
    j["trajectories"].push_back({{"from", t.from}, {"to", t.to}, {"multiplicity", t.multiplicity}});
  return j;
}

// ---- build documents -------------------------------------------------------

inline Shape1 parse_shape(const std::string& s) {
  if (s == "circle") return Shape1::Circle;
  if (s == "interval") return Shape1::Interval;
  throw Error(ErrorCode::Parse, "unknown component shape '" + s + "'");
}

inline SiteKind parse_site_kind(const std::string& s) {
  if (s == "interior") return SiteKind::InteriorHandle;
  if (s == "right") return SiteKind::RightHalf;
  if (s == "left") return SiteKind::LeftHalf;
  throw Error(ErrorCode::Parse, "unknown site kind '" + s + "'");
}

inline CobordismBuild parse_build(const json& j) {
  detail::expect_object(j, "build");
  detail::reject_unknown(j, {"sigma0", "moves"}, "build");
  CobordismBuild b;
  if (!j.contains("sigma0") || !j["sigma0"].is_array())
    throw Error(ErrorCode::Parse, "build needs array field 'sigma0'");
  for (const json& sj : j["sigma0"]) {
    if (!sj.is_string()) throw Error(ErrorCode::Parse, "sigma0 entries must be strings");
    b.sigma0.push_back(parse_shape(sj.get<std::string>()));
  }
  if (j.contains("moves")) {
    if (!j["moves"].is_array()) throw Error(ErrorCode::Parse, "'moves' must be an array");
    for (const json& mj : j["moves"]) {
      detail::expect_object(mj, "move");
      detail::reject_unknown(mj, {"level", "kind", "index", "targets", "endpoint_adjacent"},
                             "move");
      BuildMove m;
      m.level = Rational::parse(detail::get_string(mj, "level", "move"));
      m.site.kind = parse_site_kind(detail::get_string(mj, "kind", "move"));
      m.site.index = static_cast<int>(detail::get_int(mj, "index", "move"));
      if (mj.contains("targets")) {
        if (!mj["targets"].is_array()) throw Error(ErrorCode::Parse, "'targets' must be an array");
        for (const json& tj : mj["targets"]) {
          if (!tj.is_string()) throw Error(ErrorCode::Parse, "targets must be strings");
          m.site.targets.push_back(tj.get<std::string>());
        }
      }
      if (mj.contains("endpoint_adjacent"))
        m.site.endpoint_adjacent = detail::get_bool(mj, "endpoint_adjacent", "move");
      b.moves.push_back(std::move(m));
    }
  }
  validate_build(b);
  return b;
}

// ---- result documents ------------------------------------------------------

inline json emit_violations(const std::vector<Violation>& vs) {
  json arr = json::array();
  for (const auto& v : vs)
    arr.push_back({{"subject", v.subject}, {"rule", v.rule}, {"message", v.message}});
  return json{{"violations", arr}};
}

inline std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json emit_trace(const MoveTrace& tr) {
  json arr = json::array();
  for (const auto& e : tr) {
    json ej{{"move", e.move},
            {"params", e.params},
            {"pre_hash", hash_hex(e.pre_hash)},
            {"post_hash", hash_hex(e.post_hash)},
            {"chi_before", e.chi_before},
            {"chi_after", e.chi_after}};
    if (!e.note.empty()) ej["note"] = e.note;
    arr.push_back(std::move(ej));
  }
  return arr;
}

inline json emit_decomposition(const SplitDecomposition& dec) {
  json blocks = json::array();
  for (const auto& b : dec.blocks)
    blocks.push_back({{"label", b.label},
                      {"window", {b.lo.str(), b.hi.str()}},
                      {"points", b.point_ids}});
  return json{{"theta", dec.theta.str()}, {"blocks", blocks}};
}

inline json emit_state(const OneManifoldState& s) {
  json arr = json::array();
  for (const auto& c : s.components) arr.push_back({{"id", c.id}, {"shape", shape_name(c.shape)}});
  return arr;
}

// ---- files -----------------------------------------------------------------

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

inline MorseDatum load_datum_file(const std::string& path) {
  return parse_datum(load_json_file(path));
}

inline CobordismBuild load_build_file(const std::string& path) {
  return parse_build(load_json_file(path));
}

}  // namespace hh::io
