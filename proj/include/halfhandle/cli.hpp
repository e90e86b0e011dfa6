#pragma once

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "halfhandle/io.hpp"
#include "halfhandle/models.hpp"

namespace hh::cli {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void require_valid(const MorseDatum& d, std::ostream& err) {
  auto v = validate(d);
  if (!v.empty()) {
    err << io::emit_violations(v).dump(2) << "\n";
    throw Error(ErrorCode::Parse, "document violates datum invariants");
  }
}

inline int classify_exit(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (e.is_parse()) return 1;
  if (e.is_numeric()) return 3;
  return 2;
}

inline io::json point_json(const models::ClassifiedPoint& p) {
  io::json j{{"x", p.x},
             {"y", p.y},
             {"class", models::crit_class_name(p.cls)},
             {"eigenvalues", {p.eig_lo, p.eig_hi}}};
  if (p.index) j["index"] = *p.index;
  return j;
}

}  // namespace detail

// Single entry point used by the binary and the tests. Machine-readable
// results go to `out`, diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"half-handle calculus for cobordisms of manifolds with boundary"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for randomized suites (HF_SEED overrides)");

  std::string file, point_id, field_name = "D", start_text = "0.5,-0.5", component;
  std::vector<std::string> pair_ids;
  std::string level_text;
  double a = 1.0, delta = 0.01, eps = 0.1, T = 1.0, dt = 1e-3, grid = 0.05;
  double tmin = 0.8, tmax = 1.1, tstep = 1e-3;

  CLI::App* cmd_check = app.add_subcommand("check", "validate a Morse datum document");
  cmd_check->add_option("file", file)->required();
  CLI::App* cmd_norm = app.add_subcommand("normalize", "full splitting normal form");
  cmd_norm->add_option("file", file)->required();
  CLI::App* cmd_split = app.add_subcommand("split", "move one interior point to the boundary");
  cmd_split->add_option("file", file)->required();
  cmd_split->add_option("--point", point_id, "interior point id")->required();
  CLI::App* cmd_cancel = app.add_subcommand("cancel", "cancel a pair of critical points");
  cmd_cancel->add_option("file", file)->required();
  cmd_cancel->add_option("--pair", pair_ids, "the two point ids, lower index first")
      ->expected(2)
      ->required();
  CLI::App* cmd_rearr = app.add_subcommand("rearrange", "apply the canonical level schedule");
  cmd_rearr->add_option("file", file)->required();
  CLI::App* cmd_hom = app.add_subcommand("homology", "generator counts and Euler characteristic");
  cmd_hom->add_option("file", file)->required();
  CLI::App* cmd_table = app.add_subcommand("table", "print the trajectory admissibility table");

  CLI::App* cmd_model = app.add_subcommand("model", "numerical local models");
  CLI::App* m_crit = cmd_model->add_subcommand("critical", "find and classify critical points");
  m_crit->add_option("--a", a, "parameter of the cubic model");
  CLI::Option* crit_delta = m_crit->add_option("--delta", delta, "use parameter a = -delta");
  m_crit->add_option("--grid", grid, "Newton seed grid step");
  CLI::App* m_hom = cmd_model->add_subcommand("homotopy", "critical inventory along the deformation");
  m_hom->add_option("--delta", delta)->required();
  m_hom->add_option("--tmin", tmin);
  m_hom->add_option("--tmax", tmax);
  m_hom->add_option("--tstep", tstep);
  CLI::App* m_scan = cmd_model->add_subcommand("scan-u21", "min |grad| over the transition annulus");
  m_scan->add_option("--eps", eps)->required();
  m_scan->add_option("--delta", delta)->required();
  m_scan->add_option("--grid", grid);
  CLI::App* m_flow = cmd_model->add_subcommand("flow", "integrate one gradient trajectory (CSV)");
  m_flow->add_option("--field", field_name, "D, B or G");
  m_flow->add_option("--start", start_text, "x,y");
  m_flow->add_option("--T", T);
  m_flow->add_option("--dt", dt);
  m_flow->add_option("--a", a);
  m_flow->add_option("--delta", delta);
  m_flow->add_option("--eps", eps);
  CLI::App* m_phase = cmd_model->add_subcommand("phase", "trajectory bundle of the cubic model (CSV)");
  m_phase->add_option("--a", a)->required();
  m_phase->add_option("--T", T);
  m_phase->add_option("--dt", dt);

  CLI::App* cmd_oracle = app.add_subcommand("oracle", "exact level-set oracle for surfaces");
  CLI::App* o_replay = cmd_oracle->add_subcommand("replay", "replay a build and print all levels");
  o_replay->add_option("file", file)->required();
  CLI::App* o_cert = cmd_oracle->add_subcommand("certify", "certificate for splitting at a level");
  o_cert->add_option("file", file)->required();
  o_cert->add_option("--level", level_text)->required();
  o_cert->add_option("--component", component, "named component (default: an interval target)");
  CLI::App* o_chi = cmd_oracle->add_subcommand("chi", "Euler characteristic of the build");
  o_chi->add_option("file", file)->required();

  try {
    std::vector<const char*> argv;
    argv.push_back("hhcalc");
    for (const auto& s : args) argv.push_back(s.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    int code = app.exit(e, os, os);
    (code == 0 ? out : err) << os.str();
    return code == 0 ? 0 : 1;
  }

  if (const char* env = std::getenv("HF_SEED")) seed = std::strtoull(env, nullptr, 10);
  (void)seed;  // all subcommands are deterministic; the seed feeds the randomized suites

  models::ModelParams params;
  params.grid_step = grid;
  params.dt = dt;

  try {
    if (*cmd_check) {
      MorseDatum d = io::load_datum_file(file);
      out << io::emit_violations(validate(d)).dump(2) << "\n";
      return 0;
    }
    if (*cmd_norm) {
      MorseDatum d = io::load_datum_file(file);
      detail::require_valid(d, err);
      auto [dec, trace] = normal_form(d);
      io::json j = io::emit_decomposition(dec);
      j["trace"] = io::emit_trace(trace);
      out << j.dump(2) << "\n";
      return 0;
    }
    if (*cmd_split) {
      MorseDatum d = io::load_datum_file(file);
      detail::require_valid(d, err);
      MoveTrace tr;
      MorseDatum res = split_interior(d, point_id, FlagCertificate{}, &tr);
      io::json j = io::emit_datum(res);
      j["trace"] = io::emit_trace(tr);
      out << j.dump(2) << "\n";
      return 0;
    }
    if (*cmd_cancel) {
      MorseDatum d = io::load_datum_file(file);
      detail::require_valid(d, err);
      MoveTrace tr;
      MorseDatum res = cancel_pair(d, pair_ids[0], pair_ids[1], &tr);
      io::json j = io::emit_datum(res);
      j["trace"] = io::emit_trace(tr);
      out << j.dump(2) << "\n";
      return 0;
    }
    if (*cmd_rearr) {
      MorseDatum d = io::load_datum_file(file);
      detail::require_valid(d, err);
      MoveTrace tr;
      MorseDatum res = global_rearrange(d, &tr);
      io::json j = io::emit_datum(res);
      j["trace"] = io::emit_trace(tr);
      out << j.dump(2) << "\n";
      return 0;
    }
    if (*cmd_hom) {
      MorseDatum d = io::load_datum_file(file);
      detail::require_valid(d, err);
      GradedRanks g = generator_counts(d);
      io::json ranks = io::json::array();
      for (auto& [deg, r] : g.ranks) ranks.push_back({deg, r});
      out << io::json{{"chi", relative_euler_characteristic(d)}, {"ranks", ranks}}.dump(2) << "\n";
      return 0;
    }
    if (*cmd_table) {
      out << render_table();
      return 0;
    }
    if (*cmd_model) {
      if (*m_crit) {
        if (crit_delta->count()) a = -delta;
        models::Rect domain{0.0, 2.5, -1.5, 1.5};
        auto scan = models::find_critical_points(models::field_D(a), domain, params);
        io::json pts = io::json::array();
        for (const auto& p : scan.points) pts.push_back(detail::point_json(p));
        if (scan.points.empty() && scan.nonconverged_seeds > 0)
          throw Error(ErrorCode::DegenerateNormal, "no Newton seed converged");
        out << io::json{{"a", a}, {"points", pts}, {"nonconverged_seeds", scan.nonconverged_seeds}}
                   .dump(2)
            << "\n";
        return 0;
      }
      if (*m_hom) {
        auto scan = models::homotopy_scan(delta, tmin, tmax, tstep, params);
        io::json inv = io::json::array();
        for (const auto& i : scan.inventories)
          inv.push_back({{"t", i.t},
                         {"interior", i.interior},
                         {"boundary", i.boundary},
                         {"degenerate", i.degenerate}});
        io::json j{{"delta", delta}, {"inventories", inv}};
        if (scan.transition) j["transition"] = *scan.transition;
        out << j.dump(2) << "\n";
        return 0;
      }
      if (*m_scan) {
        auto scan = models::scan_U21(eps, delta, params);
        out << io::json{{"eps", eps},
                        {"delta", delta},
                        {"in_regime", scan.in_regime},
                        {"min_grad_norm", scan.min_grad_norm},
                        {"argmin", {scan.argmin_x, scan.argmin_y}},
                        {"points", scan.points}}
                   .dump(2)
            << "\n";
        return 0;
      }
      if (*m_flow) {
        double x0 = 0, y0 = 0;
        if (std::sscanf(start_text.c_str(), "%lf,%lf", &x0, &y0) != 2)
          throw Error(ErrorCode::Parse, "--start must be x,y");
        models::VecField f;
        models::Rect domain{0.0, 6.0, -3.0, 3.0};
        bool with_A = false;
        if (field_name == "D") {
          f = models::flow_field_D(a);
        } else if (field_name == "B") {
          f = models::flow_field_B();
          with_A = true;
        } else if (field_name == "G") {
          f = models::flow_field_G(delta, eps);
          domain = {0.0, 3.5, -1.0, 1.0};
        } else {
          throw Error(ErrorCode::Parse, "--field must be D, B or G");
        }
        auto path = models::flow(f, x0, y0, T, dt, domain, params);
        out << (with_A ? "t,x,y,F,A\n" : "t,x,y,F\n");
        for (const auto& s : path.samples) {
          out << fmt17(s.t) << ',' << fmt17(s.x) << ',' << fmt17(s.y) << ','
              << fmt17(f.potential(s.x, s.y));
          if (with_A) out << ',' << fmt17(models::model_AB(s.x, s.y).A);
          out << "\n";
        }
        err << "# stop: " << models::flow_stop_name(path.reason) << "\n";
        return 0;
      }
      if (*m_phase) {
        models::VecField f = models::flow_field_D(a);
        models::Rect domain{0.0, 3.0, -1.6, 1.6};
        out << "traj,t,x,y,F\n";
        int id = 0;
        for (double sx : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5}) {
          for (double sy : {-1.2, -0.4, 0.4, 1.2}) {
            auto path = models::flow(f, sx, sy, T, dt, domain, params);
            for (const auto& s : path.samples)
              out << id << ',' << fmt17(s.t) << ',' << fmt17(s.x) << ',' << fmt17(s.y) << ','
                  << fmt17(f.potential(s.x, s.y)) << "\n";
            ++id;
          }
        }
        return 0;
      }
    }
    if (*cmd_oracle) {
      if (*o_replay) {
        CobordismBuild b = io::load_build_file(file);
        ReplayResult r = replay(b);
        io::json levels = io::json::array();
        levels.push_back({{"level", "0"}, {"state", io::emit_state(r.states[0])}});
        for (std::size_t i = 0; i < b.moves.size(); ++i)
          levels.push_back(
              {{"level", b.moves[i].level.str()}, {"state", io::emit_state(r.states[i + 1])}});
        io::json closed = io::json::array();
        for (const auto& [lvl, id] : detect_closed_levels(b)) closed.push_back({lvl.str(), id});
        out << io::json{{"levels", levels}, {"closed_components", closed}}.dump(2) << "\n";
        return 0;
      }
      if (*o_cert) {
        CobordismBuild b = io::load_build_file(file);
        Rational level = Rational::parse(level_text);
        std::string comp = component;
        if (comp.empty()) {
          ReplayResult r = replay(b);
          std::size_t i = 0;
          bool found = false;
          for (; i < b.moves.size(); ++i)
            if (b.moves[i].level == level) { found = true; break; }
          if (!found) throw Error(ErrorCode::UnknownId, "no attachment at level " + level.str());
          for (const auto& t : b.moves[i].site.targets) {
            const OneComponent* c = r.states[i].find(t);
            if (c && c->shape == Shape1::Interval) { comp = t; break; }
          }
          if (comp.empty() && !b.moves[i].site.targets.empty())
            comp = b.moves[i].site.targets.front();
        }
        OracleCertificate cert = certify_split(b, level, comp);
        out << io::json{{"ok", cert.ok}, {"component", cert.component}, {"diagnosis", cert.diagnosis}}
                   .dump(2)
            << "\n";
        return cert.ok ? 0 : 2;
      }
      if (*o_chi) {
        CobordismBuild b = io::load_build_file(file);
        long long chi0 = 0;
        for (Shape1 s : b.sigma0) chi0 += s == Shape1::Interval;
        out << io::json{{"chi", chi_omega(b)}, {"chi_sigma0", chi0}}.dump(2) << "\n";
        return 0;
      }
    }
  } catch (const Error& e) {
    return detail::classify_exit(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace hh::cli
