#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "halfhandle/error.hpp"

namespace hh::models {

struct ModelParams {
  double grid_step = 0.05;
  double dt = 1e-3;
  double newton_tol = 1e-12;
  double boundary_tol = 1e-9;
  // radius of the tube in the remaining coordinates; the cutoff in those
  // directions dies at 3/4 eta^2, and eps must stay <= eta/10
  double eta = 2.0;
};

struct Rect {
  double x0 = 0.0, x1 = 2.0;
  double y0 = -1.0, y1 = 1.0;
  bool contains(double x, double y, double slack = 0.0) const {
    return x >= x0 - slack && x <= x1 + slack && y >= y0 - slack && y <= y1 + slack;
  }
};

struct Eval2 {
  double value = 0.0;
  double gx = 0.0, gy = 0.0;
  double hxx = 0.0, hxy = 0.0, hyy = 0.0;
};

using ScalarField = std::function<Eval2(double, double)>;

// ---- the cubic model family ---------------------------------------------

// D(x,y) = y^3 - y x^2 + a y on the half-plane {x >= 0}. The boundary
// {x=0} is invariant: the x-component of the gradient is -2xy.
inline Eval2 model_D(double x, double y, double a) {
  Eval2 e;
  e.value = y * y * y - y * x * x + a * y;
  e.gx = -2.0 * x * y;
  e.gy = 3.0 * y * y - x * x + a;
  e.hxx = -2.0 * y;
  e.hxy = -2.0 * x;
  e.hyy = 6.0 * y;
  return e;
}

inline ScalarField field_D(double a) {
  return [a](double x, double y) { return model_D(x, y, a); };
}

// Slice of the deformation family at parameter t: the coefficient of the
// linear term passes through zero at t0 = 1/(1+delta).
inline ScalarField field_Gt(double delta, double t) {
  const double lin = 1.0 - t * (1.0 + delta);
  return [lin](double x, double y) {
    Eval2 e;
    e.value = y * y * y - y * x * x + lin * y + 0.5;
    e.gx = -2.0 * x * y;
    e.gy = 3.0 * y * y - x * x + lin;
    e.hxx = -2.0 * y;
    e.hxy = -2.0 * x;
    e.hyy = 6.0 * y;
    return e;
  };
}

// ---- bump function -------------------------------------------------------

// Quintic smoothstep: p(0)=0, p(1)=1, p'(0)=p'(1)=p''(0)=p''(1)=0 and
// max |p'| = 15/8 < 2, which gives the required derivative bounds.
inline double smoothstep5(double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  return r * r * r * (10.0 + r * (-15.0 + 6.0 * r));
}
inline double smoothstep5_d(double r) {
  if (r <= 0.0 || r >= 1.0) return 0.0;
  return 30.0 * r * r * (1.0 - r) * (1.0 - r);
}

struct BumpEval {
  double s = 0.0, sx = 0.0, sy = 0.0;
};

// Cutoff equal to 1 on the inner tube {|y|<=eps, x<=3} with its cap disc,
// 0 outside the doubled tube. In the strip the profile depends on y only;
// around the cap it depends on the distance to (3,0).
inline BumpEval bump_s(double x, double y, double eps) {
  BumpEval b;
  if (x <= 3.0) {
    const double t = std::fabs(y);
    if (t <= eps) { b.s = 1.0; return b; }
    if (t >= 2.0 * eps) return b;
    const double r = (2.0 * eps - t) / eps;
    b.s = smoothstep5(r);
    b.sy = -smoothstep5_d(r) / eps * (y >= 0.0 ? 1.0 : -1.0);
    return b;
  }
  const double rr = std::hypot(x - 3.0, y);
  if (rr <= eps) { b.s = 1.0; return b; }
  if (rr >= 2.0 * eps) return b;
  const double r = (2.0 * eps - rr) / eps;
  b.s = smoothstep5(r);
  const double d = -smoothstep5_d(r) / eps;
  b.sx = d * (x - 3.0) / rr;
  b.sy = d * y / rr;
  return b;
}

// Cutoff in the remaining coordinates, as a function of q = |u|^2:
// equal to 1 at 0, 0 from (3/4) eta^2 on, decreasing in between.
inline double cutoff_phi(double q, double eta) {
  return 1.0 - smoothstep5(q / (0.75 * eta * eta));
}
inline double cutoff_phi_d(double q, double eta) {
  return -smoothstep5_d(q / (0.75 * eta * eta)) / (0.75 * eta * eta);
}

// Bound on the coupling |(delta+1) s y phi'(|u|^2)| over the tube
// {|y| <= 2 eps, |u| <= eta}. While it stays below 1, every component of
// the u-gradient 2 u_j (sign_j - coupling) vanishes only at u = 0, so all
// critical points of the extended function live on the u = 0 slice.
inline double max_u_coupling(double delta, double eps, double eta) {
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double y = 2.0 * eps * (static_cast<double>(i) / 200.0);
    for (int j = 0; j <= 200; ++j) {
      const double q = eta * eta * (static_cast<double>(j) / 200.0);
      worst = std::max(worst, (delta + 1.0) * y * std::fabs(cutoff_phi_d(q, eta)));
    }
  }
  return worst;
}

// The deformed function on the u=0 slice:
//   G = y^3 - y x^2 + y - (delta+1) s(x,y) y + 1/2.
// Value and gradient only; scans call this in the inner loop.
inline Eval2 eval_G(double delta, double eps, double x, double y) {
  Eval2 e;
  BumpEval b = bump_s(x, y, eps);
  e.value = y * y * y - y * x * x + y - (delta + 1.0) * b.s * y + 0.5;
  e.gx = -2.0 * x * y - (delta + 1.0) * b.sx * y;
  e.gy = 3.0 * y * y - x * x + 1.0 - (delta + 1.0) * (b.sy * y + b.s);
  return e;
}

// Full evaluation with the Hessian taken by differencing the analytic
// gradient; critical points sit where the cutoff is locally constant, so
// classification is exact there.
inline ScalarField field_G(double delta, double eps) {
  return [delta, eps](double x, double y) {
    Eval2 e = eval_G(delta, eps, x, y);
    const double h = 1e-6;
    Eval2 xp = eval_G(delta, eps, x + h, y);
    Eval2 xm = eval_G(delta, eps, x - h, y);
    Eval2 yp = eval_G(delta, eps, x, y + h);
    Eval2 ym = eval_G(delta, eps, x, y - h);
    e.hxx = (xp.gx - xm.gx) / (2 * h);
    e.hyy = (yp.gy - ym.gy) / (2 * h);
    e.hxy = 0.5 * ((yp.gx - ym.gx) / (2 * h) + (xp.gy - xm.gy) / (2 * h));
    return e;
  };
}

// ---- the holomorphic pair -----------------------------------------------

struct ABEval {
  double A = 0.0, B = 0.0;
  double Ax = 0.0, Ay = 0.0, Bx = 0.0, By = 0.0;
};

// A + iB = w^3 - w + 2/(3 sqrt 3) with w = x/sqrt(3) - i y. A is a first
// integral of the rescaled gradient flow of B, and the pairing
// 3 Ax Bx + Ay By vanishes identically.
inline ABEval model_AB(double x, double y) {
  static const double s3 = std::sqrt(3.0);
  ABEval e;
  e.A = x * x * x / (3.0 * s3) - s3 * x * y * y - x / s3 + 2.0 / (3.0 * s3);
  e.B = y * y * y - y * x * x + y;
  e.Ax = x * x / s3 - s3 * y * y - 1.0 / s3;
  e.Ay = -2.0 * s3 * x * y;
  e.Bx = -2.0 * x * y;
  e.By = 3.0 * y * y - x * x + 1.0;
  return e;
}

inline double rescaled_pairing(double x, double y) {
  ABEval e = model_AB(x, y);
  return 3.0 * e.Ax * e.Bx + e.Ay * e.By;
}

inline double euclidean_pairing(double x, double y) {
  ABEval e = model_AB(x, y);
  return e.Ax * e.Bx + e.Ay * e.By;
}

inline double orthogonality_residual(const std::vector<std::pair<double, double>>& samples) {
  double worst = 0.0;
  for (auto [x, y] : samples) worst = std::max(worst, std::fabs(rescaled_pairing(x, y)));
  return worst;
}

// ---- critical point finding ----------------------------------------------

enum class CritClass { Interior, BoundaryStable, BoundaryUnstable, Degenerate };

inline const char* crit_class_name(CritClass c) {
  switch (c) {
    case CritClass::Interior: return "interior";
    case CritClass::BoundaryStable: return "boundary_stable";
    case CritClass::BoundaryUnstable: return "boundary_unstable";
    case CritClass::Degenerate: return "degenerate";
  }
  return "?";
}

struct ClassifiedPoint {
  double x = 0.0, y = 0.0;
  CritClass cls = CritClass::Interior;
  std::optional<int> index;
  double eig_lo = 0.0, eig_hi = 0.0;  // Hessian eigenvalues
};

inline void symmetric_eigs(const Eval2& e, double& lo, double& hi) {
  const double tr = e.hxx + e.hyy;
  const double disc = std::sqrt(std::max(0.0, (e.hxx - e.hyy) * (e.hxx - e.hyy) + 4 * e.hxy * e.hxy));
  lo = 0.5 * (tr - disc);
  hi = 0.5 * (tr + disc);
}

// Normal linearization at a boundary point: the sign of d(xdot)/dx = hxx
// decides whether the normal direction attracts (boundary stable) or
// repels (boundary unstable).
inline CritClass classify_boundary_point(const ScalarField& f, double x, double y,
                                         const ModelParams& params) {
  Eval2 e = f(x, y);
  if (std::fabs(e.hxx) < params.newton_tol)
    throw Error(ErrorCode::DegenerateNormal, "normal linearization vanishes at the boundary point");
  return e.hxx < 0.0 ? CritClass::BoundaryStable : CritClass::BoundaryUnstable;
}

struct CritScan {
  std::vector<ClassifiedPoint> points;
  int nonconverged_seeds = 0;
};

// Newton iteration from every grid node of the rectangle (which must lie
// in {x >= 0}), deduplicated, then classified by the Hessian and the
// boundary distance. Seeds that fail to converge are counted, not fatal.
inline CritScan find_critical_points(const ScalarField& f, const Rect& domain,
                                     const ModelParams& params) {
  if (domain.x0 < -1e-12)
    throw Error(ErrorCode::RangeError, "domain must lie in the half-plane x >= 0");
  CritScan out;
  const double h = params.grid_step;
  std::vector<std::pair<double, double>> roots;

  for (double sx = domain.x0; sx <= domain.x1 + 1e-12; sx += h) {
    for (double sy = domain.y0; sy <= domain.y1 + 1e-12; sy += h) {
      double x = sx, y = sy;
      bool ok = false;
      // keep polishing past the tolerance so roots with a singular Hessian
      // (where Newton only contracts linearly) still collapse to one point
      for (int it = 0; it < 200; ++it) {
        Eval2 e = f(x, y);
        const double gnorm = std::hypot(e.gx, e.gy);
        if (gnorm < params.newton_tol) ok = true;
        const double det = e.hxx * e.hyy - e.hxy * e.hxy;
        // relative guard: a Hessian that is merely small (near a degenerate
        // root) still gives a well-conditioned step
        const double hnorm2 = e.hxx * e.hxx + 2 * e.hxy * e.hxy + e.hyy * e.hyy;
        if (hnorm2 == 0.0 || std::fabs(det) < 1e-12 * hnorm2) break;
        const double dx = (-e.gx * e.hyy + e.gy * e.hxy) / det;
        const double dy = (-e.gy * e.hxx + e.gx * e.hxy) / det;
        if (ok && std::hypot(dx, dy) < 1e-15 * (1.0 + std::hypot(x, y))) break;
        x += dx;
        y += dy;
        if (!std::isfinite(x) || !std::isfinite(y) || std::fabs(x) > 1e8 || std::fabs(y) > 1e8)
          break;
      }
      if (!ok || !std::isfinite(x) || !std::isfinite(y)) { ++out.nonconverged_seeds; continue; }
      if (x < -params.boundary_tol || !domain.contains(x, y, 1e-6)) continue;
      bool dup = false;
      for (auto& [rx, ry] : roots)
        if (std::hypot(rx - x, ry - y) < 10 * params.newton_tol) { dup = true; break; }
      if (!dup) roots.push_back({x, y});
    }
  }

  std::sort(roots.begin(), roots.end());
  for (auto& [x, y] : roots) {
    ClassifiedPoint p;
    p.x = x;
    p.y = y;
    Eval2 e = f(x, y);
    symmetric_eigs(e, p.eig_lo, p.eig_hi);
    const double small = std::min(std::fabs(p.eig_lo), std::fabs(p.eig_hi));
    if (small < std::sqrt(params.newton_tol)) {
      p.cls = CritClass::Degenerate;
    } else if (x <= params.boundary_tol) {
      p.x = 0.0;
      try {
        p.cls = classify_boundary_point(f, 0.0, y, params);
      } catch (const Error&) {
        p.cls = CritClass::Degenerate;
      }
      p.index = (p.eig_lo < 0) + (p.eig_hi < 0);
    } else {
      p.cls = CritClass::Interior;
      p.index = (p.eig_lo < 0) + (p.eig_hi < 0);
    }
    out.points.push_back(p);
  }
  return out;
}

// ---- homotopy scan -------------------------------------------------------

struct TInventory {
  double t = 0.0;
  int interior = 0, boundary = 0, degenerate = 0;
  std::vector<ClassifiedPoint> points;
};

struct HomotopyScan {
  std::vector<TInventory> inventories;
  std::optional<double> transition;  // midpoint of the bracketing grid step
};

inline HomotopyScan homotopy_scan(double delta, double tmin, double tmax, double tstep,
                                  const ModelParams& params) {
  HomotopyScan out;
  Rect domain{0.0, 2.0, -0.9, 0.9};
  const long long steps = std::llround((tmax - tmin) / tstep);
  for (long long i = 0; i <= steps; ++i) {
    const double t = tmin + static_cast<double>(i) * tstep;
    TInventory inv;
    inv.t = t;
    CritScan scan = find_critical_points(field_Gt(delta, t), domain, params);
    for (const auto& p : scan.points) {
      switch (p.cls) {
        case CritClass::Interior: ++inv.interior; break;
        case CritClass::Degenerate: ++inv.degenerate; break;
        default: ++inv.boundary; break;
      }
    }
    inv.points = scan.points;
    out.inventories.push_back(std::move(inv));
  }
  for (std::size_t i = 1; i < out.inventories.size(); ++i) {
    const TInventory& a = out.inventories[i - 1];
    const TInventory& b = out.inventories[i];
    if (a.interior >= 1 && b.boundary >= 2) {
      out.transition = 0.5 * (a.t + b.t);
      break;
    }
  }
  return out;
}

// ---- the no-critical-point annulus ----------------------------------------

struct U21Scan {
  double min_grad_norm = 0.0;
  double argmin_x = 0.0, argmin_y = 0.0;
  long long points = 0;
  bool in_regime = false;  // delta < eps^2/2, the strictest of the stated bounds
};

// Minimum of |grad G| over the closed region between the inner and outer
// tubes. The bound delta < eps^2/2 implies the minimum is positive; out of
// that regime the scan still runs and simply reports what it finds.
inline U21Scan scan_U21(double eps, double delta, const ModelParams& params) {
  if (eps > params.eta / 10.0)
    throw Error(ErrorCode::RangeError, "eps must stay below eta/10");
  U21Scan out;
  out.in_regime = delta < eps * eps / 2.0;
  out.min_grad_norm = 1e300;
  const double h = params.grid_step;
  auto consider = [&](double x, double y) {
    Eval2 e = eval_G(delta, eps, x, y);
    const double g = std::hypot(e.gx, e.gy);
    ++out.points;
    if (g < out.min_grad_norm) {
      out.min_grad_norm = g;
      out.argmin_x = x;
      out.argmin_y = y;
    }
  };
  // strip part: x in [0,3], eps <= |y| <= 2 eps
  for (double x = 0.0; x <= 3.0 + 1e-12; x += h)
    for (double y = eps; y <= 2.0 * eps + 1e-12; y += h) {
      consider(x, y);
      consider(x, -y);
    }
  // cap part: half-annulus eps <= |(x,y)-(3,0)| <= 2 eps, x >= 3
  for (double x = 3.0; x <= 3.0 + 2.0 * eps + 1e-12; x += h)
    for (double y = -2.0 * eps; y <= 2.0 * eps + 1e-12; y += h) {
      const double r = std::hypot(x - 3.0, y);
      if (r >= eps - 1e-12 && r <= 2.0 * eps + 1e-12) consider(x, y);
    }
  if (out.points == 0) throw Error(ErrorCode::RegionEmpty, "scan region contains no grid points");
  return out;
}

// dG/dy on the axis beyond the cap, where it must be negative.
inline double max_dGdy_on_axis(double eps, double delta, double x0, double x1, double h) {
  double worst = -1e300;
  for (double x = x0; x <= x1 + 1e-12; x += h)
    worst = std::max(worst, eval_G(delta, eps, x, 0.0).gy);
  return worst;
}

// ---- flow integration -----------------------------------------------------

struct VecField {
  std::function<void(double, double, double&, double&)> eval;
  std::function<double(double, double)> potential;  // increases along the flow
};

// Gradient field of D in the flat metric.
inline VecField flow_field_D(double a) {
  VecField v;
  v.eval = [a](double x, double y, double& vx, double& vy) {
    Eval2 e = model_D(x, y, a);
    vx = e.gx;
    vy = e.gy;
  };
  v.potential = [a](double x, double y) { return model_D(x, y, a).value; };
  return v;
}

// Gradient field of B in the metric that makes (x/sqrt 3, y) orthonormal;
// A is exactly constant along its trajectories.
inline VecField flow_field_B() {
  VecField v;
  v.eval = [](double x, double y, double& vx, double& vy) {
    ABEval e = model_AB(x, y);
    vx = 3.0 * e.Bx;
    vy = e.By;
  };
  v.potential = [](double x, double y) { return model_AB(x, y).B; };
  return v;
}

inline VecField flow_field_G(double delta, double eps) {
  VecField v;
  v.eval = [delta, eps](double x, double y, double& vx, double& vy) {
    Eval2 e = eval_G(delta, eps, x, y);
    vx = e.gx;
    vy = e.gy;
  };
  v.potential = [delta, eps](double x, double y) { return eval_G(delta, eps, x, y).value; };
  return v;
}

enum class FlowStop { TimeOut, LeftDomain, ConvergedToCritical };

inline const char* flow_stop_name(FlowStop s) {
  switch (s) {
    case FlowStop::TimeOut: return "time-out";
    case FlowStop::LeftDomain: return "left-domain";
    case FlowStop::ConvergedToCritical: return "converged-to-critical";
  }
  return "?";
}

struct FlowSample {
  double t = 0.0, x = 0.0, y = 0.0;
};

struct FlowPath {
  std::vector<FlowSample> samples;
  FlowStop reason = FlowStop::TimeOut;
};

// Classical fixed-step RK4. The step is halved when a step would decrease
// the potential (which only happens near critical points); below 1e-12 the
// integrator gives up.
inline FlowPath flow(const VecField& field, double x0, double y0, double T, double dt,
                     const Rect& domain, const ModelParams& params) {
  if (dt <= 0.0) throw Error(ErrorCode::RangeError, "dt must be positive");
  FlowPath path;
  double t = 0.0, x = x0, y = y0;
  path.samples.push_back({t, x, y});
  auto speed = [&](double px, double py) {
    double vx, vy;
    field.eval(px, py, vx, vy);
    return std::hypot(vx, vy);
  };
  while (t < T - 1e-15) {
    if (speed(x, y) < params.newton_tol) {
      path.reason = FlowStop::ConvergedToCritical;
      return path;
    }
    double step = std::min(dt, T - t);
    const double f_before = field.potential ? field.potential(x, y) : 0.0;
    for (;;) {
      double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;
      field.eval(x, y, k1x, k1y);
      field.eval(x + 0.5 * step * k1x, y + 0.5 * step * k1y, k2x, k2y);
      field.eval(x + 0.5 * step * k2x, y + 0.5 * step * k2y, k3x, k3y);
      field.eval(x + step * k3x, y + step * k3y, k4x, k4y);
      const double nx = x + step / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
      const double ny = y + step / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
      if (field.potential && std::isfinite(nx) && std::isfinite(ny)) {
        const double f_after = field.potential(nx, ny);
        if (f_after < f_before - 1e-12 * (1.0 + std::fabs(f_before))) {
          step *= 0.5;
          if (step < 1e-12)
            throw Error(ErrorCode::StepUnderflow, "step halved below 1e-12 near a critical point");
          continue;
        }
      }
      t += step;
      x = nx;
      y = ny;
      break;
    }
    if (!std::isfinite(x) || !std::isfinite(y) || !domain.contains(x, y)) {
      path.reason = FlowStop::LeftDomain;
      return path;
    }
    path.samples.push_back({t, x, y});
  }
  path.reason = FlowStop::TimeOut;
  return path;
}

struct DriftResult {
  double drift = 0.0;
  FlowPath path;
};

// Maximal deviation of the first integral A along the integrated rescaled
// gradient path of B; shrinks at fourth order in the step size.
inline DriftResult first_integral_drift(double x0, double y0, double T, double dt,
                                        const Rect& domain, const ModelParams& params) {
  DriftResult out;
  out.path = flow(flow_field_B(), x0, y0, T, dt, domain, params);
  const double a0 = model_AB(x0, y0).A;
  for (const auto& s : out.path.samples)
    out.drift = std::max(out.drift, std::fabs(model_AB(s.x, s.y).A - a0));
  return out;
}

}  // namespace hh::models
