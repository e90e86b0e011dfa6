#include <catch_amalgamated.hpp>

#include <random>

#include "halfhandle/homology.hpp"
#include "support/generators.hpp"

using namespace hh;

TEST_CASE("half-handle relative homology table") {
  SECTION("pinned examples") {
    auto r = half_handle_relative_homology({HandleSide::Right, 1, 2}, HandlePair::HB);
    CHECK(r.ranks == std::map<int, int>{{1, 1}});
    CHECK(half_handle_relative_homology({HandleSide::Left, 2, 2}, HandlePair::HB).trivial());
    auto l = half_handle_relative_homology({HandleSide::Left, 2, 2}, HandlePair::CB0);
    CHECK(l.ranks == std::map<int, int>{{1, 1}});
  }
  SECTION("exhaustive against the closed form, n <= 4") {
    for (int n = 1; n <= 4; ++n) {
      for (int k = 0; k <= n; ++k) {
        HalfHandleSpec right{HandleSide::Right, k, n};
        auto hb = half_handle_relative_homology(right, HandlePair::HB);
        auto cb = half_handle_relative_homology(right, HandlePair::CB0);
        CHECK(hb.rank(k) == 1);
        CHECK(hb.ranks.size() == 1);
        CHECK(hb == cb);  // the core pair is a deformation retract
      }
      for (int k = 1; k <= n + 1; ++k) {
        HalfHandleSpec left{HandleSide::Left, k, n};
        CHECK(half_handle_relative_homology(left, HandlePair::HB).trivial());
        auto cb = half_handle_relative_homology(left, HandlePair::CB0);
        CHECK(cb.rank(k - 1) == 1);
        CHECK(cb.ranks.size() == 1);
      }
    }
  }
  SECTION("invalid specs throw") {
    CHECK_THROWS_AS(half_handle_relative_homology({HandleSide::Right, 3, 2}, HandlePair::HB), Error);
    CHECK_THROWS_AS(half_handle_relative_homology({HandleSide::Left, 0, 2}, HandlePair::HB), Error);
  }
}

namespace {

MorseDatum datum_of(int n, std::vector<std::pair<PointKind, int>> classes) {
  MorseDatum d;
  d.flags.n = n;
  int i = 0;
  for (auto [k, idx] : classes)
    d.points.push_back({"p" + std::to_string(i), k, idx, Rational(++i, 100)});
  return d;
}

}  // namespace

TEST_CASE("relative Euler characteristic") {
  CHECK(relative_euler_characteristic(datum_of(2, {})) == 0);
  CHECK(relative_euler_characteristic(datum_of(2, {{PointKind::BoundaryUnstable, 1}})) == -1);
  // splitting an interior point conserves chi
  auto before = datum_of(2, {{PointKind::Interior, 1}});
  auto after = datum_of(2, {{PointKind::BoundaryStable, 1}, {PointKind::BoundaryUnstable, 1}});
  CHECK(relative_euler_characteristic(before) == -1);
  CHECK(relative_euler_characteristic(after) == -1);
}

TEST_CASE("generator counts") {
  auto d = datum_of(2, {{PointKind::Interior, 0}, {PointKind::Interior, 1}});
  auto g = generator_counts(d);
  CHECK(g.ranks == std::map<int, int>{{0, 1}, {1, 1}});
  CHECK(g.alternating_sum() == 0);

  CHECK(generator_counts(datum_of(2, {{PointKind::BoundaryStable, 1}, {PointKind::BoundaryStable, 3}}))
            .trivial());

  auto u = generator_counts(datum_of(3, {{PointKind::BoundaryUnstable, 2}}));
  CHECK(u.ranks == std::map<int, int>{{2, 1}});
  CHECK(relative_euler_characteristic(datum_of(3, {{PointKind::BoundaryUnstable, 2}})) == 1);
}

TEST_CASE("alternating sum equals chi on random data") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    MorseDatum d = testgen::random_datum(rng);
    CHECK(generator_counts(d).alternating_sum() == relative_euler_characteristic(d));
  }
}

TEST_CASE("a mixed stable/unstable pair has nonzero homology") {
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; k <= n; ++k) {
      if (!valid_index(PointKind::BoundaryUnstable, k + 1, n)) continue;
      auto d = datum_of(n, {{PointKind::BoundaryStable, k}, {PointKind::BoundaryUnstable, k + 1}});
      CHECK_FALSE(generator_counts(d).trivial());
    }
}

TEST_CASE("surgery effect descriptors") {
  SECTION("right index 1 in ambient 3") {
    auto e = surgery_effect_descriptor({HandleSide::Right, 1, 2});
    CHECK(e.handle_index_on_Y == 1);
    CHECK(e.attaches_to_sigma);
    CHECK(e.sigma_handle_index == 1);
    CHECK(e.surgery_index_on_M == 1);
    CHECK(e.changes_omega);
    CHECK(e.omega_handle_index == 1);
  }
  SECTION("left index 1: removal, total space unchanged") {
    auto e = surgery_effect_descriptor({HandleSide::Left, 1, 2});
    CHECK(e.handle_index_on_Y == 0);
    CHECK_FALSE(e.attaches_to_sigma);
    CHECK_FALSE(e.changes_omega);
    CHECK(e.surgery_index_on_M == 0);
  }
  SECTION("left top index performs an n-surgery on M") {
    for (int n = 1; n <= 4; ++n) {
      auto e = surgery_effect_descriptor({HandleSide::Left, n + 1, n});
      CHECK(e.surgery_index_on_M == n);
    }
  }
}
