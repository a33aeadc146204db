#include "techlev/corpus.hpp"
#include "techlev/errors.hpp"
#include "techlev/version.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace techlev;

namespace {

VersionToken num(std::uint64_t v) { return VersionToken{v}; }
VersionToken qual(const char* s) { return VersionToken{std::string(s)}; }

// oracle: pad with numeric zeros, compare token by token per the stated rule
int oracle_compare(std::vector<VersionToken> a, std::vector<VersionToken> b) {
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, num(0));
  b.resize(n, num(0));
  for (std::size_t i = 0; i < n; ++i) {
    const bool na = std::holds_alternative<std::uint64_t>(a[i]);
    const bool nb = std::holds_alternative<std::uint64_t>(b[i]);
    if (na && nb) {
      const auto x = std::get<std::uint64_t>(a[i]);
      const auto y = std::get<std::uint64_t>(b[i]);
      if (x != y) return x < y ? -1 : 1;
    } else if (!na && !nb) {
      const int c = std::get<std::string>(a[i]).compare(std::get<std::string>(b[i]));
      if (c != 0) return c < 0 ? -1 : 1;
    } else if (na != nb) {
      return na ? 1 : -1; // qualifier precedes numeric
    }
  }
  return 0;
}

Version from_tokens(std::vector<VersionToken> tokens) {
  Version v;
  v.tokens = std::move(tokens);
  return v;
}

int sign_of(std::strong_ordering o) {
  if (o == std::strong_ordering::less) return -1;
  if (o == std::strong_ordering::greater) return 1;
  return 0;
}

} // namespace

TEST_CASE("coordinate parsing") {
  const auto c = parse_coordinate("org.slf4j:slf4j-api");
  CHECK(c.group == "org.slf4j");
  CHECK(c.artifact == "slf4j-api");
  CHECK(c.ga() == "org.slf4j:slf4j-api");

  const auto gav = parse_versioned_coordinate("org.slf4j:slf4j-api:1.7.25");
  CHECK(gav.coord.group == "org.slf4j");
  CHECK(gav.version.tokens == std::vector<VersionToken>{num(1), num(7), num(25)});
  CHECK(gav.gav() == "org.slf4j:slf4j-api:1.7.25");

  CHECK_THROWS_AS(parse_versioned_coordinate("a:b:"), ParseError);
  CHECK_THROWS_AS(parse_versioned_coordinate("a:b"), ParseError);
  CHECK_THROWS_AS(parse_coordinate(":b"), ParseError);
  CHECK_THROWS_AS(parse_coordinate("a:b:c"), ParseError);
}

TEST_CASE("version tokenizing") {
  CHECK(tokenize_version("1.7.25") ==
        std::vector<VersionToken>{num(1), num(7), num(25)});
  CHECK(tokenize_version("1.0-alpha") ==
        std::vector<VersionToken>{num(1), num(0), qual("alpha")});
  // digit/letter boundaries split, qualifiers lowercased
  CHECK(tokenize_version("2.0RC1") ==
        std::vector<VersionToken>{num(2), num(0), qual("rc"), num(1)});
  CHECK(tokenize_version("8_5_30") ==
        std::vector<VersionToken>{num(8), num(5), num(30)});
  CHECK(tokenize_version("9.0.7.Final") ==
        std::vector<VersionToken>{num(9), num(0), num(7), qual("final")});
  CHECK_THROWS_AS(Version::parse("..."), ParseError);
}

TEST_CASE("version ordering basics") {
  auto less = [](const char* a, const char* b) {
    return Version::parse(a) < Version::parse(b);
  };
  CHECK(less("8.5.30", "9.0.7"));
  CHECK(less("1.0-alpha", "1.0")); // qualifier precedes its base
  CHECK(Version::parse("1.2") == Version::parse("1.2.0"));
  CHECK(less("1.0-alpha", "1.0-beta"));
  CHECK(less("1.9", "1.10"));
  CHECK_FALSE(less("1.2.0", "1.2"));
}

TEST_CASE("version ordering agrees with the padding oracle and is total") {
  std::mt19937 rng(20260819);
  std::uniform_int_distribution<int> len_dist(1, 4);
  std::uniform_int_distribution<int> numeric_dist(0, 3);
  const char* quals[] = {"alpha", "beta", "rc", "final", "m"};
  std::uniform_int_distribution<int> qual_dist(0, 4);
  std::uniform_int_distribution<int> kind(0, 3);

  auto random_tokens = [&] {
    std::vector<VersionToken> t;
    const int n = len_dist(rng);
    for (int i = 0; i < n; ++i) {
      if (kind(rng) == 0) {
        t.push_back(qual(quals[qual_dist(rng)]));
      } else {
        t.push_back(num(static_cast<std::uint64_t>(numeric_dist(rng))));
      }
    }
    return t;
  };

  for (int iter = 0; iter < 2000; ++iter) {
    const auto ta = random_tokens();
    const auto tb = random_tokens();
    const auto tc = random_tokens();
    const Version a = from_tokens(ta), b = from_tokens(tb), c = from_tokens(tc);

    CHECK(sign_of(compare_versions(a, b)) == oracle_compare(ta, tb));
    // antisymmetry
    CHECK(sign_of(compare_versions(a, b)) == -sign_of(compare_versions(b, a)));
    // transitivity
    if (compare_versions(a, b) != std::strong_ordering::greater &&
        compare_versions(b, c) != std::strong_ordering::greater) {
      CHECK(compare_versions(a, c) != std::strong_ordering::greater);
    }
  }
}

TEST_CASE("version ranges") {
  const Version v15 = Version::parse("1.5");
  const Version v20 = Version::parse("2.0");
  const Version v123 = Version::parse("1.2.3");

  const auto r = parse_version_range("[1.0,2.0)");
  CHECK(range_contains(r, v15));
  CHECK_FALSE(range_contains(r, v20));
  CHECK(range_contains(r, Version::parse("1.0")));

  const auto open_lo = parse_version_range("(,1.5]");
  CHECK(range_contains(open_lo, Version::parse("0.1")));
  CHECK(range_contains(open_lo, v15));
  CHECK_FALSE(range_contains(open_lo, Version::parse("1.5.1")));

  const auto exact = parse_version_range("[1.2.3]");
  CHECK(range_contains(exact, v123));
  CHECK_FALSE(range_contains(exact, Version::parse("1.2.4")));
  CHECK(range_contains(parse_version_range("[1.2.3,1.2.3]"), v123));

  const auto open_hi = parse_version_range("[3.0,)");
  CHECK(range_contains(open_hi, Version::parse("4.7")));
  CHECK_FALSE(range_contains(open_hi, v20));

  CHECK_THROWS_AS(parse_version_range("1.0,2.0"), ParseError);
  CHECK_THROWS_AS(parse_version_range("(1.2.3)"), ParseError);
  CHECK_THROWS_AS(parse_version_range("[,]"), ParseError);
  CHECK_THROWS_AS(parse_version_range(""), ParseError);
}

TEST_CASE("range [v,v] contains v for random versions") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> seg(0, 30);
  for (int i = 0; i < 200; ++i) {
    const std::string text = std::to_string(seg(rng)) + "." + std::to_string(seg(rng)) +
                             "." + std::to_string(seg(rng));
    const auto range = parse_version_range("[" + text + "," + text + "]");
    CHECK(range_contains(range, Version::parse(text)));
  }
}

TEST_CASE("scope classification") {
  const auto own = DependencyScope::own_project;
  const auto third = DependencyScope::third_party;
  CHECK(classify_dependency_scope({"org.apache.tomcat", "a"},
                                  {"org.apache.tomcat", "b"}) == own);
  CHECK(classify_dependency_scope({"org.slf4j", "x"}, {"com.fasterxml", "y"}) == third);
  CHECK(classify_dependency_scope({"org.x", "a"}, {"org.x.plugins", "b"}) == own);
  // prefix without the dot boundary is a different project
  CHECK(classify_dependency_scope({"org.x", "a"}, {"org.xy", "b"}) == third);
  // only the dependency may extend the dependent's group, not the reverse
  CHECK(classify_dependency_scope({"org.x.plugins", "a"}, {"org.x", "b"}) == third);
}

TEST_CASE("hand-labeled same-project pairs") {
  const std::pair<const char*, const char*> same_project[] = {
      {"com.acme", "com.acme"},
      {"com.acme", "com.acme.io"},
      {"com.acme", "com.acme.io.net"},
      {"org.apache.tomcat", "org.apache.tomcat.embed"},
      {"io.netty", "io.netty.incubator"},
      {"a.b", "a.b.c"},
      {"x", "x.y"},
      {"org.eclipse.jetty", "org.eclipse.jetty.http2"},
      {"net.corp", "net.corp.tools"},
      {"g", "g"},
  };
  for (const auto& [dependent, dep] : same_project) {
    CHECK(classify_dependency_scope({dependent, "a"}, {dep, "b"}) ==
          DependencyScope::own_project);
  }
}
