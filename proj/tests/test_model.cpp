#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "crowdflow/rng.hpp"
#include "crowdflow/types.hpp"

using namespace crowdflow;

TEST_CASE("centroid of a box is the coordinate mean") {
  CHECK(centroid({0, 0, 10, 10}).x == 5.0);
  CHECK(centroid({0, 0, 10, 10}).y == 5.0);

  // degenerate zero-area box
  CHECK(centroid({2, 4, 2, 4}).x == 2.0);
  CHECK(centroid({2, 4, 2, 4}).y == 4.0);

  CHECK(centroid({1, 2, 4, 10}).x == 2.5);
  CHECK(centroid({1, 2, 4, 10}).y == 6.0);
}

TEST_CASE("centroid is translation-equivariant") {
  Xorshift64Star rng(7);
  for (int i = 0; i < 200; ++i) {
    const double x1 = rng.uniform(-500, 500);
    const double y1 = rng.uniform(-500, 500);
    const BoundingBox box{x1, y1, x1 + rng.uniform(0, 100), y1 + rng.uniform(0, 100)};
    const double dx = rng.uniform(-2000, 2000);
    const double dy = rng.uniform(-2000, 2000);
    const BoundingBox shifted{box.x1 + dx, box.y1 + dy, box.x2 + dx, box.y2 + dy};
    const Point base = centroid(box);
    const Point moved = centroid(shifted);
    CHECK(moved.x == doctest::Approx(base.x + dx).epsilon(1e-12));
    CHECK(moved.y == doctest::Approx(base.y + dy).epsilon(1e-12));
  }
}

TEST_CASE("validate_box accepts valid and names violations") {
  CHECK_FALSE(validate_box({0, 0, 1, 1}).has_value());
  CHECK_FALSE(validate_box({2, 4, 2, 4}).has_value());

  const auto x_violation = validate_box({5, 0, 1, 1});
  REQUIRE(x_violation.has_value());
  CHECK(x_violation->find("x1") != std::string::npos);

  const auto y_violation = validate_box({0, 5, 1, 1});
  REQUIRE(y_violation.has_value());
  CHECK(y_violation->find("y1") != std::string::npos);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto nan_violation = validate_box({0, 0, nan, 1});
  REQUIRE(nan_violation.has_value());
  CHECK(nan_violation->find("non-finite") != std::string::npos);

  const double inf = std::numeric_limits<double>::infinity();
  CHECK(validate_box({0, 0, inf, 1}).has_value());
}

TEST_CASE("density labels are exact and round-trip") {
  CHECK(density_label(DensityLevel::Normal) == "normal crowd");
  CHECK(density_label(DensityLevel::Medium) == "medium crowd");
  CHECK(density_label(DensityLevel::High) == "high crowd");

  for (const auto level : {DensityLevel::Normal, DensityLevel::Medium,
                           DensityLevel::High}) {
    const auto back = density_from_label(density_label(level));
    REQUIRE(back.has_value());
    CHECK(*back == level);
  }
  CHECK_FALSE(density_from_label("Normal crowd").has_value());
  CHECK_FALSE(density_from_label("").has_value());
}

TEST_CASE("tracker config validation") {
  CHECK_FALSE(validate_config(TrackerConfig{}).has_value());
  CHECK(validate_config(TrackerConfig{0, 50.0}).has_value());
  CHECK(validate_config(TrackerConfig{-3, 50.0}).has_value());
  CHECK(validate_config(TrackerConfig{40, -1.0}).has_value());
  CHECK(validate_config(TrackerConfig{40, 0.0}).has_value());
  CHECK(validate_config(
            TrackerConfig{40, std::numeric_limits<double>::infinity()})
            .has_value());
}

TEST_CASE("density config validation") {
  CHECK_FALSE(validate_config(DensityConfig{}).has_value());
  CHECK_FALSE(validate_config(DensityConfig{15, 15}).has_value());
  CHECK(validate_config(DensityConfig{25, 15}).has_value());
  CHECK(validate_config(DensityConfig{0, 25}).has_value());
}
