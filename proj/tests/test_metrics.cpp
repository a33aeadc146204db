#include "techlev/errors.hpp"
#include "techlev/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace techlev;

TEST_CASE("leverage ratios") {
  CHECK(technical_leverage(400000, 0, 0, 100000) == doctest::Approx(4.0));
  CHECK(technical_leverage(0, 0, 0, 5000) == 0.0);
  CHECK(direct_leverage(300, 100) == doctest::Approx(3.0));
  // ratio invariance under common scaling
  CHECK(direct_leverage(7 * 400, 7 * 100) == doctest::Approx(direct_leverage(400, 100)));
  CHECK(technical_leverage(100, 50, 25, 100) == doctest::Approx(1.75));
  CHECK_THROWS_AS(technical_leverage(1, 0, 0, 0), DataError);
}

TEST_CASE("velocity components") {
  const auto same = change_velocity(100, 50, 100, 50);
  CHECK(same.delta_dep == 0);
  CHECK(same.delta_own == 0);
  const auto grow = change_velocity(100, 50, 400, 50);
  CHECK(grow.delta_dep == 300);
  CHECK(grow.delta_own == 0);
  const auto shrink = change_velocity(400, 50, 100, 80);
  CHECK(shrink.delta_dep == -300);
  CHECK(shrink.delta_own == 30);
  // antisymmetry
  const auto fwd = change_velocity(120, 40, 300, 90);
  const auto back = change_velocity(300, 90, 120, 40);
  CHECK(fwd.delta_dep == -back.delta_dep);
  CHECK(fwd.delta_own == -back.delta_own);
}

TEST_CASE("distance is the euclidean norm") {
  CHECK(change_distance(3, 4) == doctest::Approx(5.0));
  CHECK(change_distance(0, 0) == 0.0);
  // sqrt(90900) = 30 * sqrt(101)
  CHECK(change_distance(-300, 30) == doctest::Approx(301.4962686336267).epsilon(1e-12));
}

TEST_CASE("direction lands on the documented angles") {
  CHECK(change_direction(1, 0) == doctest::Approx(0.0));
  CHECK(change_direction(0, 5) == doctest::Approx(90.0));
  CHECK(change_direction(-3, 0) == doctest::Approx(180.0));
  CHECK(change_direction(0, -2) == doctest::Approx(270.0));
  CHECK(change_direction(-1, -1) == doctest::Approx(225.0));
  CHECK(change_direction(0, 0) == 0.0);
  CHECK(change_direction(1, 1) == doctest::Approx(45.0));
  // no negative zero leaks into output
  CHECK(std::signbit(change_direction(1, 0)) == false);
}

TEST_CASE("polar reconstruction and range on random integer deltas") {
  std::mt19937 rng(1234567);
  std::uniform_int_distribution<std::int64_t> delta(-100000, 100000);
  constexpr double deg = 3.141592653589793238462643383279502884 / 180.0;
  for (int i = 0; i < 10000; ++i) {
    const std::int64_t dd = delta(rng);
    const std::int64_t dn = delta(rng);
    const double rho = change_distance(dd, dn);
    const double theta = change_direction(dd, dn);
    CHECK(theta > -45.0);
    CHECK(theta <= 315.0);
    if (rho > 0) {
      CHECK(rho * std::cos(theta * deg) ==
            doctest::Approx(static_cast<double>(dd)).epsilon(1e-9));
      CHECK(rho * std::sin(theta * deg) ==
            doctest::Approx(static_cast<double>(dn)).epsilon(1e-9));
    } else {
      CHECK(dd == 0);
      CHECK(dn == 0);
      CHECK(theta == 0.0);
    }
  }
}

TEST_CASE("direction classification intervals") {
  const auto at30 = classify_direction(30.0);
  CHECK(at30.dominance == Dominance::dependency_dominant);
  CHECK(at30.total_trend == TotalTrend::increasing);
  CHECK(at30.primary_direction == PrimaryDirection::mixed);

  const auto at90 = classify_direction(90.0);
  CHECK(at90.dominance == Dominance::own_dominant);
  CHECK(at90.total_trend == TotalTrend::increasing);
  CHECK(at90.primary_direction == PrimaryDirection::own_increasing);

  const auto at250 = classify_direction(250.0);
  CHECK(at250.dominance == Dominance::own_dominant);
  CHECK(at250.total_trend == TotalTrend::decreasing);
  CHECK(at250.primary_direction == PrimaryDirection::mixed);

  CHECK(classify_direction(0.0).primary_direction ==
        PrimaryDirection::dependency_adopting);
  CHECK(classify_direction(180.0).primary_direction ==
        PrimaryDirection::dependency_removing);
  CHECK(classify_direction(270.0).primary_direction == PrimaryDirection::own_removing);
  CHECK(classify_direction(-5.0).primary_direction ==
        PrimaryDirection::dependency_adopting);
  CHECK(classify_direction(309.9).primary_direction == PrimaryDirection::mixed);

  // boundary membership: 45 is dependency-dominant, 46 is not
  CHECK(classify_direction(45.0).dominance == Dominance::dependency_dominant);
  CHECK(classify_direction(46.0).dominance == Dominance::own_dominant);
  CHECK(classify_direction(135.0).total_trend == TotalTrend::increasing);
  CHECK(classify_direction(135.5).total_trend == TotalTrend::decreasing);
  CHECK(classify_direction(225.0).dominance == Dominance::dependency_dominant);
  CHECK(classify_direction(225.5).dominance == Dominance::own_dominant);
  CHECK(classify_direction(315.0).dominance == Dominance::own_dominant);
}

TEST_CASE("dominance equals the absolute-delta comparison off the boundary") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<std::int64_t> delta(-500, 500);
  for (int i = 0; i < 4000; ++i) {
    const std::int64_t dd = delta(rng);
    const std::int64_t dn = delta(rng);
    if (std::llabs(dd) == std::llabs(dn)) continue; // 45-degree family
    const auto cls = classify_direction(change_direction(dd, dn));
    const bool dep_dominant = std::llabs(dd) > std::llabs(dn);
    CHECK((cls.dominance == Dominance::dependency_dominant) == dep_dominant);
  }
}

TEST_CASE("size classes split at the threshold") {
  CHECK(classify_size(100000) == SizeClass::small_medium);
  CHECK(classify_size(100001) == SizeClass::large);
  CHECK(classify_size(50, 100) == SizeClass::small_medium);
}

TEST_CASE("change records from a small chain set") {
  auto make = [](const char* gav, const char* date, std::int64_t own,
                 std::int64_t dep, std::int64_t own_vulns) {
    LibraryInstance inst;
    inst.id = parse_versioned_coordinate(gav);
    inst.released = parse_utc(date);
    inst.own_loc = own;
    inst.dep_loc = dep;
    inst.own_vulns = own_vulns;
    return inst;
  };

  ReleaseChain chain;
  chain.chain_id = "g:a";
  chain.instances = {make("g:a:1.0", "2020-01-01", 1000, 500, 0),
                     make("g:a:1.1", "2020-01-21", 1100, 500, 1),
                     make("g:a:1.2", "2020-03-01", 1100, 2000, 0)};
  compute_release_intervals(chain);

  const auto records = build_change_records({chain});
  REQUIRE(records.size() == 2);

  CHECK(records[0].gav_from.gav() == "g:a:1.0");
  CHECK(records[0].gav_to.gav() == "g:a:1.1");
  CHECK(records[0].delta_dep == 0);
  CHECK(records[0].delta_own == 100);
  CHECK(records[0].theta == doctest::Approx(90.0));
  CHECK(records[0].lambda_dir == doctest::Approx(500.0 / 1100.0));
  CHECK(records[0].rel_interval == 20);
  CHECK_FALSE(records[0].rel_interval_prev.has_value());
  CHECK(records[0].is_vuln);
  CHECK(records[0].size_class == SizeClass::small_medium);

  CHECK(records[1].delta_dep == 1500);
  CHECK(records[1].delta_own == 0);
  CHECK(records[1].theta == doctest::Approx(0.0));
  REQUIRE(records[1].rel_interval_prev.has_value());
  CHECK(*records[1].rel_interval_prev == 20);
  CHECK_FALSE(records[1].is_vuln);

  // single-instance chain yields no records
  ReleaseChain lone;
  lone.chain_id = "g:b";
  lone.instances = {make("g:b:1.0", "2020-01-01", 1000, 0, 0)};
  compute_release_intervals(lone);
  CHECK(build_change_records({lone}).empty());
}
