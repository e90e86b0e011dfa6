#include <catch_amalgamated.hpp>

#include "halfhandle/table.hpp"

using namespace hh;

TEST_CASE("stratified dimensions per class") {
  SECTION("interior") {
    auto d = stratified_dims(PointKind::Interior, 1, 2);
    CHECK(d.interior_stable == 1);
    CHECK_FALSE(d.boundary_stable.has_value());
    CHECK(d.interior_unstable == 2);
    CHECK_FALSE(d.boundary_unstable.has_value());
  }
  SECTION("boundary unstable index 0") {
    auto d = stratified_dims(PointKind::BoundaryUnstable, 0, 2);
    CHECK_FALSE(d.interior_stable.has_value());
    CHECK(d.boundary_stable == 0);
    CHECK(d.interior_unstable == 3);
    CHECK(d.boundary_unstable == 2);
  }
  SECTION("boundary stable top index") {
    auto d = stratified_dims(PointKind::BoundaryStable, 3, 2);
    CHECK_FALSE(d.interior_unstable.has_value());
    CHECK(d.interior_stable == 3);
    CHECK(d.boundary_stable == 2);
    CHECK(d.boundary_unstable == 0);
  }
  SECTION("invalid combinations throw") {
    CHECK_THROWS_AS(stratified_dims(PointKind::BoundaryStable, 0, 2), Error);
    CHECK_THROWS_AS(stratified_dims(PointKind::BoundaryUnstable, 3, 2), Error);
    CHECK_THROWS_AS(stratified_dims(PointKind::Interior, 4, 2), Error);
  }
}

TEST_CASE("admissibility special rows") {
  // equal-index trajectory from boundary stable up to boundary unstable
  CHECK(admissible(PointKind::BoundaryUnstable, 1, PointKind::BoundaryStable, 1, 1));
  CHECK(admissible(PointKind::BoundaryUnstable, 1, PointKind::BoundaryStable, 1, 4));
  CHECK_FALSE(admissible(PointKind::BoundaryUnstable, 1, PointKind::BoundaryStable, 2, 4));
  // nothing flows from a boundary stable point down into an interior point
  CHECK_FALSE(admissible(PointKind::Interior, 2, PointKind::BoundaryStable, 1, 3));
  CHECK_FALSE(admissible(PointKind::Interior, 3, PointKind::BoundaryStable, 1, 3));
  // interior-to-interior needs a strict index drop along the flow
  CHECK(admissible(PointKind::Interior, 2, PointKind::Interior, 1, 3));
  CHECK_FALSE(admissible(PointKind::Interior, 1, PointKind::Interior, 1, 3));
  CHECK_FALSE(admissible(PointKind::Interior, 1, PointKind::Interior, 2, 3));
  // boundary unstable never receives from the interior
  CHECK_FALSE(admissible(PointKind::BoundaryUnstable, 2, PointKind::Interior, 0, 3));
}

namespace {

std::vector<std::pair<PointKind, int>> all_points(int n) {
  std::vector<std::pair<PointKind, int>> out;
  for (int k = 0; k <= n + 1; ++k) {
    for (PointKind kind :
         {PointKind::Interior, PointKind::BoundaryStable, PointKind::BoundaryUnstable})
      if (valid_index(kind, k, n)) out.push_back({kind, k});
  }
  return out;
}

}  // namespace

TEST_CASE("derived rule equals the table exhaustively") {
  for (int n = 1; n <= 5; ++n) {
    for (auto [k1, i1] : all_points(n)) {
      for (auto [k2, i2] : all_points(n)) {
        INFO("n=" << n << " p1=" << kind_name(k1) << i1 << " p2=" << kind_name(k2) << i2);
        CHECK(admissible(k1, i1, k2, i2, n) == derive_admissible(k1, i1, k2, i2, n));
      }
    }
  }
}

TEST_CASE("flow direction is never admissible both ways") {
  for (int n = 1; n <= 4; ++n)
    for (auto [k1, i1] : all_points(n))
      for (auto [k2, i2] : all_points(n))
        CHECK_FALSE((admissible(k1, i1, k2, i2, n) && admissible(k2, i2, k1, i1, n)));
}

TEST_CASE("table rendering is fixed layout") {
  std::string t = render_table();
  CHECK(t.find("b.unstable  b.stable") != std::string::npos);
  CHECK(t.find("k<l") != std::string::npos);
  // nine data rows plus the header
  CHECK(std::count(t.begin(), t.end(), '\n') == 10);
}
