#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(COVERLAB_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(COVERLAB_FIXTURES) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "coverlab_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("enumerate lists the predicted congruences") {
  Run r = run("enumerate --n 2");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.size() == 5);
  CHECK(j[0]["spec"]["kind"] == "finite");
  CHECK(j[4]["spec"]["kind"] == "universal");

  Run realized = run("enumerate --n 2 --omega 5");
  REQUIRE(realized.code == 0);
  json k = json::parse(realized.out);
  CHECK(k[1]["system"]["classes"].size() == 10);

  Run table = run("enumerate --n 1 --format table");
  CHECK(table.code == 0);
  CHECK(std::count(table.out.begin(), table.out.end(), '\n') == 2);
}

TEST_CASE("build, extract and lift through files") {
  auto cover = scratch("af.json");
  Run b = run("build --recipe " + fixture("almost_free_pairs.json") + " -o " + cover.string());
  REQUIRE(b.code == 0);
  std::ifstream in(cover);
  json built = json::parse(in);
  CHECK(built["provenance"]["kernel_order"] == "46656000000");
  CHECK(built["W"]["kind"] == "tuples");

  Run e = run("extract --cover " + cover.string());
  REQUIRE(e.code == 0);
  json rho = json::parse(e.out);
  CHECK(rho["classes"].size() == 6);
  for (const auto& c : rho["classes"]) CHECK(c.size() == 2);

  auto principal = scratch("principal.json");
  REQUIRE(run("build --recipe " + fixture("principal_n1.json") + " -o " + principal.string()).code == 0);
  Run pe = run("extract --cover " + principal.string() + " --jobs 2");
  REQUIRE(pe.code == 0);
  CHECK(json::parse(pe.out)["classes"].size() == 5);

  auto twisted = scratch("twisted.json");
  REQUIRE(run("build --recipe " + fixture("twisted_first_entry.json") + " -o " + twisted.string()).code == 0);
  Run te = run("extract --cover " + twisted.string());
  REQUIRE(te.code == 0);
  CHECK(json::parse(te.out)["classes"].size() == 4);

  Run l = run("lift --cover " + principal.string() + " --m 2");
  REQUIRE(l.code == 0);
  json lr = json::parse(l.out);
  CHECK(lr["report"]["kernel_iso"] == true);
  CHECK(lr["report"]["beta_bijective"] == true);
  CHECK(lr["report"]["class_size"] == 4);

  Run lb = run("build --recipe " + fixture("lift_principal.json"));
  REQUIRE(lb.code == 0);
  CHECK(json::parse(lb.out)["provenance"]["lift"]["class_size"] == 4);
}

TEST_CASE("verify exit codes and determinism") {
  Run ok = run("verify --suite main-theorem --n 1 --omega 5 --twists 2");
  CHECK(ok.code == 0);
  json report = json::parse(ok.out);
  CHECK(report.size() == 5);
  for (const auto& v : report) CHECK(v["status"] == "pass");

  Run again = run("verify --suite main-theorem --n 1 --omega 5 --twists 2 --jobs 3");
  CHECK(again.out == ok.out);

  Run fault = run("verify --suite main-theorem --n 1 --omega 5 --twists 1 --inject-fault drop-kernel-generator");
  CHECK(fault.code == 1);
  bool any = false;
  for (const auto& v : json::parse(fault.out)) any = any || v["status"] == "fail";
  CHECK(any);

  Run unverified = run("verify --suite primitive-corollary --upsilon wreath:c:2/sym:2");
  CHECK(unverified.code == 0);
  CHECK(json::parse(unverified.out)[0]["status"] == "unverified");

  Run table = run("verify --suite blocks --n 1 --format table");
  CHECK(table.code == 0);
  CHECK(table.out.find("pass  finite-kind count") != std::string::npos);
}

TEST_CASE("usage and input errors") {
  CHECK(run("").code == 2);
  CHECK(run("enumerate").code == 2);
  CHECK(run("enumerate --n 2 --bogus").code == 2);
  CHECK(run("verify --suite nonsense").code == 2);
  CHECK(run("verify --suite main-theorem --inject-fault flip").code == 2);
  CHECK(run("enumerate --n 2 --format xml").code == 2);
  CHECK(run("--help").code == 0);

  CHECK(run("build --recipe " + fixture("truncated.json")).code == 3);
  CHECK(run("build --recipe " + fixture("unknown_construction.json")).code == 3);
  CHECK(run("build --recipe " + fixture("does_not_exist.json")).code == 3);
  CHECK(run("enumerate --n 2 --omega 2").code == 3);
  CHECK(run("verify --suite main-theorem --n 2 --omega 3").code == 3);
  CHECK(run("enumerate --n 2 --caps nonsense").code == 3);
  CHECK(run("enumerate --n 4 --caps predicted_arity=3").code == 3);

  auto bad = scratch("bad_cover.json");
  std::ofstream(bad) << R"j({"delta": 2, "W": {"kind": "set", "size": 2}, "generators": ["(0 2)"], "upsilon": ["(0 1)"]})j";
  CHECK(run("extract --cover " + bad.string()).code == 3);
}
