#include "techlev/chains.hpp"
#include "techlev/errors.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace techlev;

namespace {

LibraryInstance make(const std::string& version, const std::string& released) {
  LibraryInstance inst;
  inst.id = parse_versioned_coordinate("org.apache.tomcat:tomcat:" + version);
  inst.released = parse_utc(released);
  inst.own_loc = 1000;
  return inst;
}

std::vector<std::string> versions_of(const ReleaseChain& chain) {
  std::vector<std::string> out;
  for (const auto& inst : chain.instances) out.push_back(inst.id.version.text);
  return out;
}

} // namespace

TEST_CASE("the documented six-release trace") {
  std::vector<LibraryInstance> releases = {
      make("8.5.30", "2018-04-06T00:00:00Z"), make("9.0.7", "2018-04-06T00:17:00Z"),
      make("7.0.86", "2018-04-12T00:00:00Z"), make("8.0.51", "2018-04-13T00:00:00Z"),
      make("9.0.8", "2018-05-04T00:00:00Z"),  make("8.5.31", "2018-05-05T00:00:00Z")};
  const auto chains = split_release_chains(releases);

  REQUIRE(chains.size() == 3);
  CHECK(chains[0].chain_id == "org.apache.tomcat:tomcat");
  CHECK(versions_of(chains[0]) == std::vector<std::string>{"8.5.30", "9.0.7", "9.0.8"});
  CHECK(chains[1].chain_id == "org.apache.tomcat:tomcat@7");
  CHECK(versions_of(chains[1]) == std::vector<std::string>{"7.0.86"});
  CHECK(chains[2].chain_id == "org.apache.tomcat:tomcat@8");
  CHECK(versions_of(chains[2]) == std::vector<std::string>{"8.0.51", "8.5.31"});

  // 17 minutes apart on the same day: a zero-day interval; the next gap is
  // 28 calendar days short 17 minutes, which floors to 27
  REQUIRE(chains[0].intervals.size() == 2);
  CHECK(chains[0].intervals[0] == 0);
  CHECK(chains[0].intervals[1] == 27);
}

TEST_CASE("strictly increasing versions form one chain") {
  std::vector<LibraryInstance> releases = {make("1.0", "2020-01-01"),
                                           make("1.1", "2020-02-01"),
                                           make("2.0", "2020-03-15")};
  const auto chains = split_release_chains(releases);
  REQUIRE(chains.size() == 1);
  CHECK(chains[0].instances.size() == 3);
  CHECK(chains[0].intervals == std::vector<std::int64_t>{31, 43});
}

TEST_CASE("single release and empty input") {
  const auto chains = split_release_chains({make("1.0", "2020-01-01")});
  REQUIRE(chains.size() == 1);
  CHECK(chains[0].instances.size() == 1);
  CHECK(chains[0].intervals.empty());
  CHECK(split_release_chains({}).empty());
}

TEST_CASE("unsorted input is rejected") {
  std::vector<LibraryInstance> releases = {make("1.1", "2020-02-01"),
                                           make("1.0", "2020-01-01")};
  CHECK_THROWS_AS(split_release_chains(releases), DataError);
}

TEST_CASE("same-day ties must be version-ordered") {
  std::vector<LibraryInstance> bad = {make("1.1", "2020-01-01"),
                                      make("1.0", "2020-01-01")};
  CHECK_THROWS_AS(split_release_chains(bad), DataError);
  std::vector<LibraryInstance> good = {make("1.0", "2020-01-01"),
                                       make("1.1", "2020-01-01")};
  CHECK(split_release_chains(good).size() == 1);
}

TEST_CASE("per-pair intervals expose the predecessor's interval") {
  std::vector<LibraryInstance> releases = {
      make("1.0", "2020-01-01"), make("1.1", "2020-01-11"),
      make("1.2", "2020-01-14"), make("1.3", "2020-02-14")};
  const auto chains = split_release_chains(releases);
  REQUIRE(chains.size() == 1);
  REQUIRE(chains[0].intervals.size() == 3);

  const auto p0 = pair_intervals(chains[0], 0);
  CHECK(p0.rel_interval == 10);
  CHECK_FALSE(p0.rel_interval_prev.has_value());

  const auto p2 = pair_intervals(chains[0], 2);
  CHECK(p2.rel_interval == 31);
  REQUIRE(p2.rel_interval_prev.has_value());
  CHECK(*p2.rel_interval_prev == 3);

  CHECK_THROWS_AS(pair_intervals(chains[0], 3), DataError);
}

TEST_CASE("shifting all timestamps preserves intervals") {
  std::vector<LibraryInstance> releases = {make("1.0", "2020-01-01"),
                                           make("1.1", "2020-03-05"),
                                           make("1.2", "2021-01-01")};
  auto shifted = releases;
  for (auto& inst : shifted) inst.released += std::chrono::hours{24 * 1000};
  CHECK(split_release_chains(releases)[0].intervals ==
        split_release_chains(shifted)[0].intervals);
}

TEST_CASE("finer branch key separates 8.0.x from 8.5.x") {
  std::vector<LibraryInstance> releases = {
      make("9.0.1", "2020-01-01"), make("8.0.1", "2020-01-02"),
      make("8.5.1", "2020-01-03"), make("9.0.2", "2020-01-04")};
  const auto coarse = split_release_chains(releases, 1);
  REQUIRE(coarse.size() == 2);
  CHECK(coarse[1].chain_id == "org.apache.tomcat:tomcat@8");
  CHECK(coarse[1].instances.size() == 2);

  const auto fine = split_release_chains(releases, 2);
  REQUIRE(fine.size() == 3);
  CHECK(fine[1].chain_id == "org.apache.tomcat:tomcat@8.0");
  CHECK(fine[2].chain_id == "org.apache.tomcat:tomcat@8.5");
}

TEST_CASE("partition property on randomized histories") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> size_dist(1, 24);
  std::uniform_int_distribution<int> major(1, 4);
  std::uniform_int_distribution<int> minor(0, 9);
  std::uniform_int_distribution<int> gap(0, 40);

  for (int iter = 0; iter < 1000; ++iter) {
    const int n = size_dist(rng);
    std::vector<LibraryInstance> releases;
    auto when = parse_utc("2015-01-01T00:00:00Z");
    std::set<std::string> used;
    for (int i = 0; i < n; ++i) {
      std::string v;
      do {
        v = std::to_string(major(rng)) + "." + std::to_string(minor(rng)) + "." +
            std::to_string(minor(rng));
      } while (!used.insert(v).second);
      releases.push_back(make(v, "2015-01-01"));
      releases.back().released = when;
      when += std::chrono::hours{24 * gap(rng) + 1};
    }
    // date order holds by construction; same-day version ties cannot occur
    const auto chains = split_release_chains(releases);

    std::size_t total = 0;
    std::set<std::string> seen;
    for (const auto& chain : chains) {
      total += chain.instances.size();
      CHECK(chain.intervals.size() + 1 == chain.instances.size());
      for (const auto& inst : chain.instances) {
        CHECK(seen.insert(inst.id.gav()).second); // no instance in two chains
      }
      for (std::size_t i = 1; i < chain.instances.size(); ++i) {
        CHECK(chain.instances[i - 1].released <= chain.instances[i].released);
      }
      for (const auto interval : chain.intervals) CHECK(interval >= 0);
    }
    CHECK(total == releases.size());
  }
}
