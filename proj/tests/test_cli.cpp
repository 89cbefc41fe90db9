#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "hermsig/cli.hpp"

using namespace hermsig;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

Request make_request(const std::string& sub, const std::string& path) {
  Request req;
  req.subcommand = sub;
  req.input_path = path;
  req.json_output = true;
  return req;
}

njson run_json(const std::string& sub, const std::string& path, int expected_exit = 0) {
  const RunResult r = run(make_request(sub, path));
  REQUIRE(r.exit_code == expected_exit);
  return njson::parse(r.output);
}

std::string write_temp(const std::string& name, const njson& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content.dump(2);
  return path.string();
}

}  // namespace

TEST_CASE("classify on the Hamilton fixture") {
  const njson out = run_json("classify", fixture("hamilton.json"));
  REQUIRE(out.contains("P0"));
  CHECK(out["P0"]["nil"] == false);
  CHECK(out["P0"]["lambda"] == 2);
  CHECK(out["P0"]["nP"] == 1);
  CHECK(out["P0"]["MP"] == 1);
  CHECK(out["P0"]["mP"] == 1);
  CHECK(out["P0"]["cP"] == 4);
}

TEST_CASE("classify accepts algebra ids") {
  const njson out = run_json("classify", fixture("hamilton_id.json"));
  CHECK(out["P0"]["lambda"] == 2);
}

TEST_CASE("ps-check fixtures") {
  const njson bad = run_json("ps-check", fixture("m2q_ad_diag.json"));
  CHECK(bad["holds"] == false);
  CHECK(bad["witness"] == "1");
  CHECK(bad["ordering"] == 0);

  const njson good = run_json("ps-check", fixture("m2q_transpose.json"));
  CHECK(good["holds"] == true);

  const njson quat = run_json("ps-check", fixture("quat_sqrt2.json"));
  CHECK(quat["holds"] == true);
  CHECK(quat["x_tilde"] == njson::array({0}));
}

TEST_CASE("classify reports both orderings over a quadratic field") {
  const njson out = run_json("classify", fixture("quat_sqrt2.json"));
  CHECK(out["P0"]["nil"] == false);
  CHECK(out["P1"]["nil"] == true);
}

TEST_CASE("x-sigma and trace-form fixtures") {
  const njson xs = run_json("x-sigma", fixture("hamilton.json"));
  CHECK(xs["x_sigma"] == njson::array({0}));

  const njson tf = run_json("trace-form", fixture("hamilton.json"));
  CHECK(tf["signature"]["P0"] == 4);
  CHECK(tf["psd"]["P0"] == true);
  CHECK(tf["kind"] == "first");

  const njson tfu = run_json("trace-form", fixture("unitary_m3.json"));
  CHECK(tfu["kind"] == "second");
  CHECK(tfu["signature"]["P0"] == 1);
}

TEST_CASE("signature and maximal subcommands") {
  const njson sig = run_json("signature", fixture("maximal_u.json"), 2);  // singular form
  CHECK(sig["error"]["code"] == "SingularForm");

  const njson mx = run_json("maximal", fixture("maximal_u.json"));
  CHECK(mx["P0"] == true);
}

TEST_CASE("certify then verify round trip") {
  const njson cert = run_json("certify", fixture("certify_psd.json"));
  REQUIRE(cert.contains("certificate"));
  const std::string path = write_temp("hermsig_roundtrip.json", cert);
  const njson verdict = run_json("verify", path);
  CHECK(verdict["valid"] == true);

  // tampering breaks it
  njson bad = cert;
  bad["u"][0][0][0][0] = "17";
  const std::string bad_path = write_temp("hermsig_tampered.json", bad);
  const njson bad_verdict = run_json("verify", bad_path);
  CHECK(bad_verdict["valid"] == false);
}

TEST_CASE("certify reports NotPSD with exit code 2") {
  const RunResult r = run(make_request("certify", fixture("certify_indef.json")));
  CHECK(r.exit_code == 2);
  const njson out = njson::parse(r.output);
  CHECK(out["error"]["code"] == "NotPSD");
}

TEST_CASE("audit fixture") {
  const njson out = run_json("audit", fixture("hamilton.json"));
  CHECK(out["all_agree"] == true);
  REQUIRE(out["rows"].size() == 1);
  CHECK(out["rows"][0]["psd"] == true);
  CHECK(out["rows"][0]["maximal"] == true);
}

TEST_CASE("json descriptors round trip") {
  for (const char* name :
       {"hamilton.json", "m2q_ad_diag.json", "quat_sqrt2.json", "unitary_m3.json"}) {
    std::ifstream in(fixture(name));
    njson j;
    in >> j;
    const Algebra A = json_to_algebra(j);
    CHECK(json_to_algebra(algebra_to_json(A)) == A);
    const HermitianForm h = diag_form(A, {a_one(A), -a_one(A)});
    const HermitianForm back = json_to_form(form_to_json(h));
    CHECK(back.gram == h.gram);
    CHECK(back.dim == h.dim);
  }
}

TEST_CASE("certify runs the bounded search when an algebra is given") {
  const std::string path = write_temp(
      "hermsig_search.json",
      njson{{"algebra", "hamilton"}, {"u", njson::array({"5", "0", "0", "0"})}});
  const njson out = run_json("certify", path);
  CHECK(out["found"] == true);
  const std::string cert_path = write_temp("hermsig_search_cert.json", out);
  CHECK(run_json("verify", cert_path)["valid"] == true);

  const std::string neg = write_temp(
      "hermsig_search_neg.json",
      njson{{"algebra", "hamilton"}, {"u", njson::array({"-1", "0", "0", "0"})}});
  const njson out2 = run_json("certify", neg);
  CHECK(out2["found"] == false);
}

TEST_CASE("parse errors exit with 64") {
  CHECK(run(make_request("classify", fixture("does_not_exist.json"))).exit_code == 64);
  const std::string garbled = write_temp("hermsig_garbled.json", njson());
  std::ofstream(garbled) << "{ not json";
  CHECK(run(make_request("classify", garbled)).exit_code == 64);
  CHECK(run(make_request("frobnicate", fixture("hamilton.json"))).exit_code == 64);
}

TEST_CASE("json output is byte-stable across runs") {
  for (const char* sub : {"classify", "ps-check", "x-sigma", "trace-form", "audit"}) {
    const RunResult a = run(make_request(sub, fixture("hamilton.json")));
    const RunResult b = run(make_request(sub, fixture("hamilton.json")));
    CHECK(a.output == b.output);
    CHECK(a.exit_code == 0);
  }
  const RunResult a = run(make_request("certify", fixture("certify_psd.json")));
  const RunResult b = run(make_request("certify", fixture("certify_psd.json")));
  CHECK(a.output == b.output);
}

TEST_CASE("ordering selector restricts the report") {
  Request req = make_request("classify", fixture("quat_sqrt2.json"));
  req.ordering = 1;
  const RunResult r = run(req);
  REQUIRE(r.exit_code == 0);
  const njson out = njson::parse(r.output);
  CHECK(out.contains("P1"));
  CHECK_FALSE(out.contains("P0"));

  req.ordering = 5;
  CHECK(run(req).exit_code == 64);
}
