#include "itp/io.hpp"

#include "helpers.hpp"
#include "itp/errors.hpp"

#include <doctest.h>

using namespace itp;

TEST_CASE("dataset json round-trips") {
  const Dataset& original = testutil::case_study();
  const Dataset reparsed = parse_dataset(dataset_to_json(original).dump());
  CHECK(dataset_to_json(reparsed) == dataset_to_json(original));
  CHECK(reparsed.parts.size() == original.parts.size());
  CHECK(reparsed.defects.size() == original.defects.size());
  CHECK(reparsed.traceability == original.traceability);
}

TEST_CASE("dataset parse errors name the offending path") {
  CHECK_THROWS_AS(parse_dataset("not json"), InputError);
  CHECK_THROWS_AS(parse_dataset("[]"), InputError);

  try {
    parse_dataset(R"({"parts": [{"kind": "code_class"}]})");
    FAIL("missing id accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("parts[0]") != std::string::npos);
    CHECK(std::string(e.what()).find("'id'") != std::string::npos);
  }

  try {
    parse_dataset(R"({"format_version": 2})");
    FAIL("future version accepted");
  } catch (const InputError& e) {
    CHECK(e.code() == "unsupported_format_version");
  }
}

TEST_CASE("defect csv matches the dataset's defect list") {
  const auto defects = parse_defects_csv(testutil::read("case_study/defects.csv"));
  const Dataset& dataset = testutil::case_study();
  REQUIRE(defects.size() == dataset.defects.size());
  for (size_t i = 0; i < defects.size(); ++i) {
    CHECK(defects[i].id == dataset.defects[i].id);
    CHECK(defects[i].part_id == dataset.defects[i].part_id);
    CHECK(defects[i].severity == dataset.defects[i].severity);
    CHECK(defects[i].odc_type == dataset.defects[i].odc_type);
    CHECK(defects[i].phase == dataset.defects[i].phase);
    CHECK(defects[i].functional == dataset.defects[i].functional);
    CHECK(defects[i].accepted == dataset.defects[i].accepted);
  }
}

TEST_CASE("csv reader handles quoting, escapes, and crlf") {
  const std::string text =
      "id,part_id,severity,odc_type,phase,functional,accepted,description\r\n"
      "d1,I,minor,checking,inspection,true,true,\"says \"\"look, here\"\"\"\r\n"
      "d2,II,major,other:usability,system_test,false,true,plain\n";
  const auto defects = parse_defects_csv(text);
  REQUIRE(defects.size() == 2);
  CHECK(defects[0].description == "says \"look, here\"");
  CHECK(defects[1].odc_type == OdcType{OdcValue::other, "usability"});
  CHECK(defects[1].phase == Phase::system_test);
  CHECK_FALSE(defects[1].functional);
}

TEST_CASE("csv reader rejects malformed input") {
  CHECK_THROWS_AS(parse_defects_csv(""), InputError);
  CHECK_THROWS_AS(parse_defects_csv("id,part_id\nx,y\n"), InputError);
  const std::string header =
      "id,part_id,severity,odc_type,phase,functional,accepted,description\n";
  CHECK_THROWS_AS(parse_defects_csv(header + "d1,I,minor,checking,inspection,true\n"), InputError);
  CHECK_THROWS_AS(parse_defects_csv(header + "d1,I,minor,checking,inspection,maybe,true,x\n"),
                  InputError);
  CHECK_THROWS_AS(parse_defects_csv(header + "d1,I,minor,checking,inspection,true,true,\"open\n"),
                  InputError);
}

TEST_CASE("missing files raise file_not_found") {
  try {
    load_dataset("/nonexistent/dataset.json");
    FAIL("missing file accepted");
  } catch (const InputError& e) {
    CHECK(e.code() == "file_not_found");
  }
}
