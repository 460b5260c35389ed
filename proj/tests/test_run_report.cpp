#include "chernvan/error.hpp"
#include "chernvan/pipeline.hpp"
#include "chernvan/run_report.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chernvan;

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("report JSON round trip") {
  RunReport r;
  r.subcommand = "demo";
  r.inputs_digest = fnv1a64_hex("demo");
  r.add_check("first", true, "fine");
  r.add_check("second", false);
  r.data["value"] = Rat(-1, 2).str();
  r.timing.push_back({"phase", 0.5});
  r.finalize();
  CHECK_FALSE(r.passed);
  CHECK(r.first_failure()->name == "second");
  const std::string text = to_json(r);
  const RunReport back = parse_run_report(text);
  CHECK(to_json(back) == text);
  CHECK(back.checks == r.checks);
  CHECK(text.find("seconds") == std::string::npos);
  CHECK(timing_json(r).find("\"phase\"") != std::string::npos);
  CHECK(to_text(r).find("[FAIL] second") != std::string::npos);
  CHECK_THROWS_AS(parse_run_report("{}"), InputError);
  CHECK_THROWS_AS(parse_run_report("not json"), InputError);
}

TEST_CASE("runner reports are deterministic") {
  CHECK(to_json(run_numbers(10)) == to_json(run_numbers(10)));
  const std::string cfg = testsupport::fixture("grr/chain.cfg");
  CHECK(to_json(run_grr_certify(cfg)) == to_json(run_grr_certify(cfg)));
  const RunReport n = run_numbers(6);
  CHECK(n.passed);
  CHECK(n.data["bernoulli"][2]["value"] == "1/6");
  CHECK_THROWS_AS(run_numbers(-1), std::invalid_argument);
  CHECK_THROWS_AS(run_identities(0, 10), std::invalid_argument);
  CHECK_THROWS_AS(run_identities(2, 15), std::invalid_argument);
}

TEST_CASE("runner outcomes") {
  CHECK(run_lemma21(2, 6).passed);
  CHECK(run_identities(2, 6).passed);
  CHECK(run_grr_delta(testsupport::fixture("grr/chain.cfg"), "Y1,Y2").data["strata"][0]["delta"] == 1);
  CHECK_THROWS_AS(run_grr_delta(testsupport::fixture("grr/crossing.cfg"), "Y1,Y2"), InputError);
  const RunReport red = run_grr_reduce(testsupport::fixture("grr/double_fiber.cfg"), "cg*Y1^2", 5);
  CHECK(red.passed);
  CHECK(red.data["normal_form"] == "1/2*cg*f*(T1)*Y1");
  CHECK_THROWS_AS(run_grr_reduce(testsupport::fixture("grr/double_fiber.cfg"), "Y1^2"), InputError);
  CHECK_THROWS_AS(run_grr_reduce(testsupport::fixture("grr/double_fiber.cfg"), "cg*Q"), InputError);
  const RunReport cone = run_cone_check(testsupport::fixture("cones/g1_odd.cone"), true);
  CHECK(cone.passed);
  CHECK(cone.data["fixed_stratum"]["status"] == "hypothesis violation");
  CHECK_FALSE(run_cone_check(testsupport::fixture("cones/g1_nonsmooth.cone"), true).passed);
}

TEST_CASE("verify-all on the bundled corpus") {
  const RunReport r = run_verify_all({2, 6, CHERNVAN_FIXTURE_DIR});
  CHECK(r.passed);
  CHECK_THROWS_AS(run_verify_all({0, 10, CHERNVAN_FIXTURE_DIR}), std::invalid_argument);
  CHECK_THROWS_AS(run_verify_all({2, 10, "/nonexistent"}), InputError);
}
