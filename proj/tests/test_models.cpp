#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "halfhandle/models.hpp"

using namespace hh::models;
using Catch::Approx;

TEST_CASE("cubic model evaluation") {
  auto e = model_D(0.0, 0.0, 1.0);
  CHECK(e.value == 0.0);
  CHECK(e.gx == 0.0);
  CHECK(e.gy == 1.0);

  auto crit = model_D(1.0, 0.0, 1.0);
  CHECK(crit.gx == 0.0);
  CHECK(crit.gy == 0.0);

  // boundary critical point of the shifted family at (0, sqrt(delta/3))
  auto b = model_D(0.0, 0.1, -0.03);
  CHECK(b.gx == 0.0);
  CHECK(b.gy == Approx(0.0).margin(1e-15));
}

TEST_CASE("analytic gradients match central differences") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(0.0, 3.0), uy(-1.5, 1.5);
  const double h = 1e-6;
  auto check_grad = [&](const ScalarField& f, double x, double y) {
    Eval2 e = f(x, y);
    const double fdx = (f(x + h, y).value - f(x - h, y).value) / (2 * h);
    const double fdy = (f(x, y + h).value - f(x, y - h).value) / (2 * h);
    const double scale = 1.0 + std::fabs(fdx) + std::fabs(fdy);
    CHECK(std::fabs(e.gx - fdx) / scale < 1e-6);
    CHECK(std::fabs(e.gy - fdy) / scale < 1e-6);
  };
  ScalarField D = field_D(0.7);
  ScalarField Gt = field_Gt(0.01, 0.95);
  ScalarField G = field_G(0.004, 0.1);
  for (int i = 0; i < 100; ++i) {
    double x = ux(rng), y = uy(rng);
    check_grad(D, x, y);
    check_grad(Gt, x, y);
    check_grad(G, x, y);
    ABEval ab = model_AB(x, y);
    auto A = [](double px, double py) { return model_AB(px, py).A; };
    auto B = [](double px, double py) { return model_AB(px, py).B; };
    CHECK(std::fabs(ab.Ax - (A(x + h, y) - A(x - h, y)) / (2 * h)) < 1e-6 * (1 + std::fabs(ab.Ax)));
    CHECK(std::fabs(ab.Ay - (A(x, y + h) - A(x, y - h)) / (2 * h)) < 1e-6 * (1 + std::fabs(ab.Ay)));
    CHECK(std::fabs(ab.Bx - (B(x + h, y) - B(x - h, y)) / (2 * h)) < 1e-6 * (1 + std::fabs(ab.Bx)));
    CHECK(std::fabs(ab.By - (B(x, y + h) - B(x, y - h)) / (2 * h)) < 1e-6 * (1 + std::fabs(ab.By)));
  }
}

TEST_CASE("boundary invariance of every implemented field") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uy(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    double y = uy(rng);
    CHECK(model_D(0.0, y, 1.3).gx == 0.0);
    CHECK(field_Gt(0.01, 0.7)(0.0, y).gx == 0.0);
    CHECK(eval_G(0.004, 0.1, 0.0, y).gx == 0.0);
    CHECK(model_AB(0.0, y).Bx == 0.0);
  }
}

TEST_CASE("critical points of the cubic model") {
  ModelParams params;
  params.grid_step = 0.25;
  Rect domain{0.0, 2.5, -1.5, 1.5};

  SECTION("one interior saddle for positive parameter") {
    auto scan = find_critical_points(field_D(1.0), domain, params);
    REQUIRE(scan.points.size() == 1);
    const auto& p = scan.points[0];
    CHECK(p.cls == CritClass::Interior);
    CHECK(p.index == 1);
    CHECK(p.x == Approx(1.0).margin(1e-8));
    CHECK(p.y == Approx(0.0).margin(1e-8));
  }
  SECTION("two boundary points for negative parameter") {
    auto scan = find_critical_points(field_D(-0.03), domain, params);
    REQUIRE(scan.points.size() == 2);
    const auto& lo = scan.points[0].y < scan.points[1].y ? scan.points[0] : scan.points[1];
    const auto& hi = scan.points[0].y < scan.points[1].y ? scan.points[1] : scan.points[0];
    CHECK(lo.x == 0.0);
    CHECK(hi.x == 0.0);
    CHECK(hi.y == Approx(0.1).margin(1e-8));
    CHECK(lo.y == Approx(-0.1).margin(1e-8));
    CHECK(hi.cls == CritClass::BoundaryStable);
    CHECK(lo.cls == CritClass::BoundaryUnstable);
  }
  SECTION("degenerate point at the transition") {
    auto scan = find_critical_points(field_D(0.0), domain, params);
    REQUIRE(scan.points.size() == 1);
    CHECK(scan.points[0].cls == CritClass::Degenerate);
    CHECK(std::hypot(scan.points[0].x, scan.points[0].y) < 1e-6);
  }
}

TEST_CASE("boundary classification via the normal linearization") {
  ModelParams params;
  ScalarField f = field_D(-0.03);
  CHECK(classify_boundary_point(f, 0.0, 0.1, params) == CritClass::BoundaryStable);
  CHECK(classify_boundary_point(f, 0.0, -0.1, params) == CritClass::BoundaryUnstable);
  CHECK_THROWS_AS(classify_boundary_point(f, 0.0, 0.0, params), hh::Error);
}

TEST_CASE("homotopy scan brackets the transition") {
  ModelParams params;
  params.grid_step = 0.1;
  const double delta = 0.01;
  auto scan = homotopy_scan(delta, 0.9, 1.0, 1e-3, params);

  REQUIRE_FALSE(scan.inventories.empty());
  const auto& first = scan.inventories.front();
  CHECK(first.interior == 1);
  CHECK(first.boundary == 0);
  const auto& last = scan.inventories.back();
  CHECK(last.interior == 0);
  CHECK(last.boundary == 2);
  REQUIRE(scan.transition.has_value());
  CHECK(std::fabs(*scan.transition - 1.0 / (1.0 + delta)) <= 1e-3);

  // positions of the boundary pair at t = 1 follow the closed form
  for (const auto& p : last.points) {
    CHECK(p.x == 0.0);
    CHECK(std::fabs(std::fabs(p.y) - std::sqrt((1.0 * (1 + delta) - 1.0) / 3.0)) < 1e-8);
  }
}

TEST_CASE("exactly at the transition the origin is a single degenerate point") {
  ModelParams params;
  params.grid_step = 0.1;
  const double delta = 0.01;
  const double t0 = 1.0 / (1.0 + delta);
  auto scan = find_critical_points(field_Gt(delta, t0), Rect{0.0, 2.0, -0.9, 0.9}, params);
  REQUIRE_FALSE(scan.points.empty());
  for (const auto& p : scan.points) {
    CHECK(p.cls == CritClass::Degenerate);
    CHECK(std::hypot(p.x, p.y) < 1e-7);
  }
}

TEST_CASE("inventory is one interior point below the transition, two boundary above") {
  ModelParams params;
  params.grid_step = 0.1;
  const double delta = 0.01;
  const double t0 = 1.0 / (1.0 + delta);
  auto scan = homotopy_scan(delta, 0.0, 1.0, 0.05, params);
  for (const auto& inv : scan.inventories) {
    if (inv.t < t0 - 1e-3) {
      CHECK(inv.interior == 1);
      CHECK(inv.boundary == 0);
    } else if (inv.t > t0 + 1e-3) {
      CHECK(inv.interior == 0);
      CHECK(inv.boundary == 2);
    }
  }
}

TEST_CASE("interior root follows the closed form sqrt(a)") {
  ModelParams params;
  params.grid_step = 0.25;
  for (double a : {0.7, 0.25, 1.9}) {
    auto scan = find_critical_points(field_D(a), Rect{0.0, 2.5, -1.5, 1.5}, params);
    REQUIRE(scan.points.size() == 1);
    CHECK(scan.points[0].x == Approx(std::sqrt(a)).margin(1e-8));
    CHECK(scan.points[0].y == Approx(0.0).margin(1e-8));
  }
}

TEST_CASE("scan minimum stays positive on a delta grid below the bound") {
  ModelParams params;
  params.grid_step = 2e-3;
  for (double eps : {0.05, 0.1, 0.2})
    for (double frac : {0.05, 0.2, 0.45}) {
      auto scan = scan_U21(eps, frac * eps * eps, params);
      CHECK(scan.in_regime);
      CHECK(scan.min_grad_norm > 0.0);
    }
}

TEST_CASE("bump profile satisfies the stated bounds") {
  const double eps = 0.1;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ux(0.0, 3.4), uy(-3 * eps, 3 * eps);
  double max_dy = 0.0, max_dr = 0.0;
  for (int i = 0; i < 20000; ++i) {
    double x = ux(rng), y = uy(rng);
    BumpEval b = bump_s(x, y, eps);
    if (x <= 3.0) {
      CHECK(b.sx == 0.0);                   // no x-dependence in the strip
      if (y != 0.0) CHECK(y * b.sy <= 0.0); // decreasing away from the axis
      max_dy = std::max(max_dy, std::fabs(b.sy));
    } else {
      max_dr = std::max(max_dr, std::hypot(b.sx, b.sy));
    }
    CHECK(b.s >= 0.0);
    CHECK(b.s <= 1.0);
  }
  CHECK(max_dy < 2.0 / eps);
  CHECK(max_dr < 2.0 / eps);
  // value pins
  CHECK(bump_s(1.0, 0.5 * eps, eps).s == 1.0);
  CHECK(bump_s(1.0, 2.5 * eps, eps).s == 0.0);
  CHECK(bump_s(3.0 + 2.5 * eps, 0.0, eps).s == 0.0);
}

TEST_CASE("transverse cutoff confines critical points to the slice") {
  const double eta = 2.0;
  CHECK(cutoff_phi(0.0, eta) == 1.0);
  CHECK(cutoff_phi(0.75 * eta * eta, eta) == 0.0);
  CHECK(cutoff_phi(eta * eta, eta) == 0.0);
  double prev = 1.0;
  for (int i = 1; i <= 50; ++i) {
    double q = eta * eta * i / 50.0;
    CHECK(cutoff_phi(q, eta) <= prev);
    prev = cutoff_phi(q, eta);
  }
  // coupling below 1 means the u-gradient only vanishes at u = 0
  for (double eps : {0.05, 0.1, 0.2})
    CHECK(max_u_coupling(eps * eps / 4.0, eps, 10.0 * eps) < 1.0);
}

TEST_CASE("critical points of the deformed field sit at the predicted boundary pair") {
  ModelParams params;
  params.grid_step = 0.05;
  const double delta = 0.004, eps = 0.1;
  auto scan = find_critical_points(field_G(delta, eps), Rect{0.0, 3.4, -0.3, 0.3}, params);
  REQUIRE(scan.points.size() == 2);
  const auto& lo = scan.points[0].y < scan.points[1].y ? scan.points[0] : scan.points[1];
  const auto& hi = scan.points[0].y < scan.points[1].y ? scan.points[1] : scan.points[0];
  const double ystar = std::sqrt(delta / 3.0);
  CHECK(hi.x == 0.0);
  CHECK(lo.x == 0.0);
  CHECK(hi.y == Approx(ystar).margin(1e-8));
  CHECK(lo.y == Approx(-ystar).margin(1e-8));
  CHECK(hi.cls == CritClass::BoundaryStable);
  CHECK(lo.cls == CritClass::BoundaryUnstable);
}

TEST_CASE("gradient scan over the annulus") {
  ModelParams params;
  params.grid_step = 2e-3;
  SECTION("positive minimum in regime") {
    auto scan = scan_U21(0.1, 0.004, params);
    CHECK(scan.in_regime);
    CHECK(scan.min_grad_norm > 0.0);
  }
  SECTION("out-of-regime scans run and are flagged") {
    auto scan = scan_U21(0.1, 0.06, params);
    CHECK_FALSE(scan.in_regime);
    CHECK(scan.points > 0);
  }
  SECTION("beyond the cap the y-derivative is negative on the axis") {
    CHECK(max_dGdy_on_axis(0.1, 0.004, 3.05, 3.4, 1e-3) < 0.0);
  }
}

TEST_CASE("holomorphic pair identities") {
  static const double s3 = std::sqrt(3.0);
  SECTION("pinned values") {
    ABEval e = model_AB(1.0, 0.0);
    CHECK(e.A == Approx(0.0).margin(1e-15));
    CHECK(e.B == 0.0);
    ABEval r = model_AB(s3, 0.0);
    CHECK(r.A == Approx(2.0 / (3.0 * s3)).margin(1e-15));
    CHECK(r.B == 0.0);
    // on the boundary A is constant and B is the odd cubic
    for (double y : {-1.5, -0.2, 0.4, 2.0}) {
      CHECK(model_AB(0.0, y).A == Approx(2.0 / (3.0 * s3)).margin(1e-15));
      CHECK(model_AB(0.0, y).B == Approx(y * y * y + y).margin(1e-12));
    }
  }
  SECTION("rescaled pairing vanishes, euclidean does not") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ux(0.0, 4.0), uy(-2.0, 2.0);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 1000; ++i) pts.push_back({ux(rng), uy(rng)});
    CHECK(orthogonality_residual(pts) <= 1e-12);
    CHECK(rescaled_pairing(1.0, 0.0) == 0.0);
    // closed form of the euclidean defect: (4/sqrt 3) x y (x^2 - 3 y^2 - 1)
    CHECK(euclidean_pairing(1.0, 1.0) == Approx(-4.0 * s3).margin(1e-12));
    CHECK(euclidean_pairing(2.0, 0.5) ==
          Approx(4.0 / s3 * 2.0 * 0.5 * (4.0 - 0.75 - 1.0)).margin(1e-12));
  }
}

TEST_CASE("flow integration") {
  ModelParams params;
  Rect domain{0.0, 6.0, -3.0, 3.0};
  SECTION("the potential increases along gradient paths") {
    auto f = flow_field_D(1.0);
    auto path = flow(f, 0.5, -0.5, 1.0, 1e-3, domain, params);
    REQUIRE(path.samples.size() > 10);
    double prev = -1e300;
    for (const auto& s : path.samples) {
      double v = f.potential(s.x, s.y);
      CHECK(v >= prev - 1e-9 * static_cast<double>(path.samples.size()));
      prev = v;
    }
  }
  SECTION("paths starting on the boundary stay there exactly") {
    auto path = flow(flow_field_D(1.0), 0.0, -0.8, 0.5, 1e-3, domain, params);
    for (const auto& s : path.samples) CHECK(s.x == 0.0);
    auto pb = flow(flow_field_B(), 0.0, 0.3, 0.5, 1e-3, domain, params);
    for (const auto& s : pb.samples) CHECK(s.x == 0.0);
  }
  SECTION("starting at a critical point converges immediately") {
    auto path = flow(flow_field_D(1.0), 1.0, 0.0, 1.0, 1e-3, domain, params);
    CHECK(path.reason == FlowStop::ConvergedToCritical);
    CHECK(path.samples.size() == 1);
  }
  SECTION("leaving the domain is reported") {
    auto path = flow(flow_field_B(), 0.5, -1.0, 2.0, 1e-3, domain, params);
    CHECK(path.reason == FlowStop::LeftDomain);
  }
}

TEST_CASE("first integral drift") {
  ModelParams params;
  Rect domain{0.0, 6.0, -3.0, 3.0};
  SECTION("pinned start meets the tolerance") {
    auto r = first_integral_drift(2.0, 0.5, 1.0, 1e-3, domain, params);
    CHECK(r.path.reason == FlowStop::TimeOut);
    CHECK(r.drift <= 1e-6);
  }
  SECTION("fourth-order reduction under step halving") {
    double d1 = first_integral_drift(2.0, 0.5, 1.0, 1e-3, domain, params).drift;
    double d2 = first_integral_drift(2.0, 0.5, 1.0, 5e-4, domain, params).drift;
    double d3 = first_integral_drift(2.0, 0.5, 1.0, 2.5e-4, domain, params).drift;
    CHECK(d1 / d2 >= 8.0);
    CHECK(d2 / d3 >= 8.0);
  }
  SECTION("zero horizon has zero drift") {
    CHECK(first_integral_drift(2.0, 0.5, 0.0, 1e-3, domain, params).drift == 0.0);
  }
  SECTION("boundary starts have exactly zero drift") {
    CHECK(first_integral_drift(0.0, 1.0, 0.5, 1e-3, domain, params).drift == 0.0);
  }
}
