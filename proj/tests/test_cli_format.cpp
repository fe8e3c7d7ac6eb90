#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unicoh/analysis.hpp"
#include "unicoh/groupfile.hpp"

using namespace unicoh;

namespace {

const char* kMinimal = R"({
  "schema_version": 1,
  "torus": {"n": 1, "J": [["0", "-1"], ["1", "0"]]},
  "generators": [{"matrix": [[1, 0], [0, 1]]}],
  "metadata": {"note": "identity on the square curve"}
})";

} // namespace

TEST_CASE("parse and canonical round trip") {
  GroupFileData data = parse_group_file(kMinimal);
  CHECK(data.torus.n == 1);
  CHECK(data.generators.size() == 1);
  std::string canon = serialize_group_file(data);
  GroupFileData again = parse_group_file(canon);
  CHECK(serialize_group_file(again) == canon);
}

TEST_CASE("gallery cases serialize round-trip exactly") {
  for (const auto& c : {u_n_on_torus(2), u_n_on_torus(4), eisenstein_case(2)}) {
    GroupFileData data = groupfile_from_case(c);
    std::string canon = serialize_group_file(data);
    GroupFileData again = parse_group_file(canon);
    CHECK(serialize_group_file(again) == canon);
    REQUIRE(again.generators.size() == data.generators.size());
    for (size_t i = 0; i < data.generators.size(); ++i)
      CHECK(again.generators[i].mat == data.generators[i].mat);
  }
  // the affine case travels as its block embedding
  GroupFileData aff = groupfile_from_case(affine_example(3, 1));
  CHECK(aff.torus.n == 3);
  std::string canon = serialize_group_file(aff);
  CHECK(serialize_group_file(parse_group_file(canon)) == canon);
}

TEST_CASE("parser names the violated invariant and generator") {
  // non-commuting generator: swap on the lattice of E^2 does commute, so use
  // a genuinely J-breaking matrix instead
  std::string bad = R"({
    "schema_version": 1,
    "torus": {"n": 1, "J": [["0", "-1"], ["1", "0"]]},
    "generators": [{"matrix": [[1, 1], [0, 1]]}]
  })";
  try {
    parse_group_file(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    std::string msg = e.what();
    CHECK(msg.find("generator 0") != std::string::npos);
    CHECK(msg.find("commute") != std::string::npos);
  }

  std::string bad_torus = R"({
    "schema_version": 1,
    "torus": {"n": 1, "J": [["1", "0"], ["0", "1"]]},
    "generators": []
  })";
  CHECK_THROWS_AS(parse_group_file(bad_torus), Error);

  std::string float_contamination = R"({
    "schema_version": 1,
    "torus": {"n": 1, "J": [[0.0, -1.0], [1.0, 0.0]]},
    "generators": []
  })";
  CHECK_THROWS_AS(parse_group_file(float_contamination), Error);

  std::string non_unimodular = R"({
    "schema_version": 1,
    "torus": {"n": 1, "J": [["0", "-1"], ["1", "0"]]},
    "generators": [{"matrix": [[2, 0], [0, 2]]}]
  })";
  try {
    parse_group_file(non_unimodular);
    CHECK(false);
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("generator 0") != std::string::npos);
    CHECK(msg.find("unimodular") != std::string::npos);
  }
}

TEST_CASE("translations are parsed mod 1") {
  std::string with_translation = R"({
    "schema_version": 1,
    "torus": {"n": 1, "J": [["0", "-1"], ["1", "0"]]},
    "generators": [{"matrix": [[1, 0], [0, 1]], "translation": ["7/2", "-1/3"]}]
  })";
  GroupFileData data = parse_group_file(with_translation);
  REQUIRE(data.generators[0].translation.has_value());
  CHECK((*data.generators[0].translation)[0] == Rat(1, 2));
  CHECK((*data.generators[0].translation)[1] == Rat(2, 3));
}

TEST_CASE("analyze_group report on a non-unipotent generator") {
  GroupFileData data;
  data.torus = square_torus(1);
  Mat minus = -Mat::identity(2);
  data.generators.push_back(TorusAutomorphism{minus, std::nullopt});
  analysis::Options opt;
  analysis::Json rep = analysis::analyze_group(data, opt);
  CHECK(rep["generators"][0]["unipotent"] == false);
  CHECK(rep["generators"][0]["quasi_unipotent_order"] == 2);
  CHECK(rep["group"]["all_unipotent"] == false);
  CHECK(analysis::exit_code_for(rep) == 0);
}

TEST_CASE("analyze_group and growth on the u_2 gallery file") {
  GroupFileData data = groupfile_from_case(u_n_on_torus(2));
  analysis::Options opt;
  analysis::Json rep = analysis::analyze_group(data, opt);
  CHECK(rep["group"]["nilpotency_class"] == 1);
  CHECK(rep["group"]["derived_length"] == 1);
  CHECK(rep["violations"].empty());

  analysis::Json gr = analysis::growth(data, opt);
  CHECK(gr["violations"].empty());
  bool found = false;
  for (const auto& e : gr["elements"])
    for (const auto& b : e["bounds"])
      if (b["p"] == 1 && b["q"] == 1) {
        found = true;
        CHECK(b["exponent"] == 2);
      }
  CHECK(found);
  std::string csv = analysis::growth_csv(gr);
  CHECK(csv.find("element,p,q,exponent,bound,pass") == 0);
  CHECK(csv.find("g0,1,1,2,2,true") != std::string::npos);
}

TEST_CASE("decompose reports the joint chain status") {
  GroupFileData data = groupfile_from_case(u_n_on_torus(2));
  analysis::Options opt;
  analysis::Json rep = analysis::decompose(data, opt);
  CHECK(rep["group_chain"]["status"] == "found");
  CHECK(rep["violations"].empty());

  // transverse pair: joint chain search must report not_found, exit code 4
  GroupFileData bad;
  bad.torus = square_torus(2);
  bad.generators.push_back(tau_on_product(2, 0, 1));
  bad.generators.push_back(tau_on_product(2, 1, 0));
  analysis::Json rep2 = analysis::decompose(bad, opt);
  CHECK(rep2["group_chain"]["status"] == "not_found");
  CHECK(analysis::exit_code_for(rep2) == 4);
}

TEST_CASE("library-level report determinism") {
  GroupFileData data = groupfile_from_case(u_n_on_torus(3));
  analysis::Options opt;
  CHECK(analysis::analyze_group(data, opt).dump() == analysis::analyze_group(data, opt).dump());
  CHECK(analysis::fuzz(2, 3, 11, 1).dump() == analysis::fuzz(2, 3, 11, 2).dump());
}
