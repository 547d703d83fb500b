#include <catch_amalgamated.hpp>

#include "coverlab/coverlab.hpp"

using namespace coverlab;

namespace {

SuiteConfig config(const std::string& suite, std::optional<std::size_t> n, std::vector<std::size_t> omegas) {
  SuiteConfig c;
  c.suite = suite;
  c.n = n;
  c.omega_sizes = std::move(omegas);
  return c;
}

std::size_t count(const std::vector<Verdict>& v, Status s) {
  std::size_t k = 0;
  for (const auto& x : v) k += x.status == s;
  return k;
}

const Verdict& find_check(const std::vector<Verdict>& v, const std::string& prefix) {
  for (const auto& x : v)
    if (x.check.rfind(prefix, 0) == 0) return x;
  FAIL("no verdict named " << prefix);
  throw;
}

void require_no_failures(const std::vector<Verdict>& v) {
  for (const auto& x : v) {
    INFO(x.check << " " << x.witness.dump());
    CHECK(x.status != Status::Fail);
  }
}

}  // namespace

TEST_CASE("main theorem suite") {
  SECTION("single letters") {
    SuiteConfig c = config("main-theorem", 1, {5, 6});
    c.twists = 4;
    auto v = run_suite(c);
    require_no_failures(v);
    CHECK(count(v, Status::Unverified) == 0);
    CHECK(find_check(v, "predicted congruences").witness["count"] == 2);
    // 2 congruences, each with a roundtrip and a twist verdict, per omega
    CHECK(v.size() == 2 * (1 + 2 * 2));
  }
  SECTION("pairs") {
    SuiteConfig c = config("main-theorem", 2, {4});
    c.twists = 2;
    c.jobs = 2;
    auto v = run_suite(c);
    require_no_failures(v);
    CHECK(v.size() == 1 + 2 * 5);
    for (const auto& x : v) CHECK(x.replay.find("--suite main-theorem --n 2 --omega 4") != std::string::npos);
  }
  SECTION("an abelian G is outside the hypotheses") {
    SuiteConfig c = config("main-theorem", 1, {5});
    c.group = "c:5";
    auto v = run_suite(c);
    REQUIRE(v.size() == 1);
    CHECK(v.front().status == Status::Unverified);
  }
}

TEST_CASE("injected faults are caught with a witness") {
  SECTION("main theorem") {
    SuiteConfig c = config("main-theorem", 1, {5});
    c.twists = 1;
    c.fault = "drop-kernel-generator";
    auto v = run_suite(c);
    CHECK(any_fail(v));
    const Verdict& rt = find_check(v, "roundtrip");
    CHECK(rt.status == Status::Fail);
    CHECK((rt.witness.contains("pair") || rt.witness.contains("point")));
    CHECK(rt.replay.find("--inject-fault drop-kernel-generator") != std::string::npos);
  }
  SECTION("primitive corollary") {
    SuiteConfig c = config("primitive-corollary", 1, {5});
    c.twists = 1;
    c.fault = "drop-kernel-generator";
    CHECK(any_fail(run_suite(c)));
  }
  SECTION("constructions") {
    SuiteConfig c = config("constructions", 1, {4});
    c.fault = "drop-kernel-generator";
    CHECK(any_fail(run_suite(c)));
  }
  SECTION("unknown faults and suites are rejected") {
    SuiteConfig c = config("main-theorem", 1, {5});
    c.fault = "flip-bits";
    CHECK_THROWS_AS(run_suite(c), ParseError);
    CHECK_THROWS_AS(run_suite(config("nonsense", 1, {5})), ParseError);
    CHECK_THROWS_AS(run_suite(config("main-theorem", 2, {3})), DomainError);
    CHECK_THROWS_AS(run_suite(config("main-theorem", 0, {5})), DomainError);
  }
}

TEST_CASE("primitive corollary suite") {
  SECTION("Sym(Omega) on letters") {
    SuiteConfig c = config("primitive-corollary", std::nullopt, {});
    c.twists = 2;
    auto v = run_suite(c);
    require_no_failures(v);
    CHECK(find_check(v, "congruences are trivial").status == Status::Pass);
    CHECK(find_check(v, "kernels are diagonal or full").witness["kernel_orders"].size() == 2);
  }
  SECTION("A5 on five points") {
    SuiteConfig c = config("primitive-corollary", std::nullopt, {});
    c.upsilon = "alt:5";
    c.twists = 2;
    auto v = run_suite(c);
    require_no_failures(v);
    CHECK(count(v, Status::Pass) == 2);
  }
  SECTION("an imprimitive base is reported unverified") {
    SuiteConfig c = config("primitive-corollary", std::nullopt, {});
    c.upsilon = "wreath:c:2/sym:2";
    auto v = run_suite(c);
    REQUIRE(v.size() == 1);
    CHECK(v.front().status == Status::Unverified);
    CHECK(v.front().witness["precondition"] == "Upsilon is not primitive");
  }
}

TEST_CASE("pregeometry suite") {
  SuiteConfig c = config("pregeometry", 1, {5});
  c.subset_bound = 2;
  auto v = run_suite(c);
  require_no_failures(v);
  // two congruences, each plain and with one twist
  CHECK(v.size() == 4);
  CHECK(count(v, Status::Pass) == 4);

  SuiteConfig big = config("pregeometry", 2, {7});
  auto u = run_suite(big);
  REQUIRE(u.size() == 1);
  CHECK(u.front().status == Status::Unverified);
}

TEST_CASE("blocks suite") {
  SuiteConfig c = config("blocks", std::nullopt, {});
  auto v = run_suite(c);
  require_no_failures(v);
  for (const char* key : {"pairs:4", "wreath:sym:3/sym:2", "wreath:c:2/sym:3"})
    CHECK(find_check(v, std::string("block/subgroup roundtrip ") + key).status == Status::Pass);

  SuiteConfig two = config("blocks", 2, {4, 5});
  auto w = run_suite(two);
  require_no_failures(w);
  const Verdict& at4 = find_check(w, "containment omega=4");
  CHECK(at4.witness["surplus"] == 1);
  CHECK(find_check(w, "containment omega=5").witness["surplus"] == 0);
  const Verdict& exact = find_check(w, "exact at largest omega");
  CHECK(exact.status == Status::Pass);
  CHECK(exact.witness["exact_from_omega"] == 5);

  SuiteConfig five = config("blocks", 5, {});
  CHECK(run_suite(five).front().status == Status::Unverified);
}

TEST_CASE("constructions suite") {
  SuiteConfig c = config("constructions", 1, {5, 6});
  auto v = run_suite(c);
  require_no_failures(v);
  CHECK(find_check(v, "principal order").status == Status::Pass);
  CHECK(find_check(v, "fibre product").status == Status::Unverified);
  const Verdict& growth = find_check(v, "lift class growth");
  CHECK(growth.status == Status::Pass);
  CHECK(growth.witness["sizes"][0]["from"] == 4);
  CHECK(growth.witness["sizes"][0]["to"] == 5);
}

TEST_CASE("reports are deterministic") {
  SuiteConfig c = config("main-theorem", 1, {5, 6});
  c.twists = 3;
  const std::string a = report_json(run_suite(c)).dump();
  const std::string b = report_json(run_suite(c)).dump();
  c.jobs = 4;
  const std::string parallel = report_json(run_suite(c)).dump();
  CHECK(a == b);
  CHECK(a == parallel);

  json first = report_json(run_suite(c)).front();
  for (const char* key : {"suite", "instance", "check", "status", "witness", "replay"}) CHECK(first.contains(key));
}
