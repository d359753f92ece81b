#include <doctest.h>

#include "nervelab/fixtures.hpp"
#include "nervelab/io.hpp"

using namespace nervelab;
using io::Json;

namespace {

std::string schema_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    CHECK(e.code() == Errc::schema_error);
    return e.what();
  }
  FAIL("no error raised");
  return {};
}

const char* rem_json = R"({
  "space": {"maximal_simplices": [["a", "b"]]},
  "working_level": 1,
  "levels": [
    [{"id": "P", "stars": ["{a}", "{a,b}"]}, {"id": "Q'", "stars": ["{b}"]}],
    [{"id": "P'", "stars": ["{a}"]}, {"id": "Q", "stars": ["{a,b}", "{b}"]}],
    [{"id": "P", "stars": ["{a}", "{a,b}"]}, {"id": "Q", "stars": ["{a,b}", "{b}"]}]
  ]
})";

}  // namespace

TEST_CASE("cover JSON round trip") {
  const auto cs = io::cover_from_json(io::parse(rem_json));
  const auto rem = fixtures::remark_cover();
  CHECK(cs.levels().size() == 3);
  for (std::size_t n = 0; n < 3; ++n)
    for (std::size_t i = 0; i < cs.levels()[n].size(); ++i) {
      CHECK(cs.levels()[n][i].id == rem.levels()[n][i].id);
      CHECK(cs.levels()[n][i].set == rem.levels()[n][i].set);
    }
  const auto again = io::cover_from_json(io::cover_to_json(cs));
  CHECK(io::dump(io::cover_to_json(again)) == io::dump(io::cover_to_json(cs)));
}

TEST_CASE("schema errors carry a JSON path") {
  auto j = io::parse(rem_json);
  j["levels"][1][0]["stars"] = Json::array({1});
  CHECK(schema_message([&] { io::cover_from_json(j); }).find("$.levels[1][0].stars[0]: expected a string") !=
        std::string::npos);

  j = io::parse(rem_json);
  j["levels"][2][1]["stars"] = Json::array({"{zz}"});
  CHECK(schema_message([&] { io::cover_from_json(j); }).find("$.levels[2][1].stars") != std::string::npos);

  j = io::parse(rem_json);
  j["levels"][0].erase(0);
  j["levels"][1].erase(0);
  j["levels"].erase(2);
  CHECK(schema_message([&] { io::cover_from_json(j); }).find("InvalidCover") != std::string::npos);

  j = io::parse(rem_json);
  j["space"]["maximal_simplices"] = Json::array();
  CHECK(schema_message([&] { io::cover_from_json(j); }).find("$.space.maximal_simplices") != std::string::npos);

  CHECK(schema_message([] { io::parse("{"); }).find("$: invalid JSON") != std::string::npos);
}

TEST_CASE("points take exact rationals and reject floating-point numbers") {
  const auto p = io::point_from_json(io::parse(R"({"level": 0, "coords": {"a": "1/3", "b": "2/3"}})"));
  CHECK(p.coords.at("a") == Rational(1, 3));
  CHECK(io::point_to_json(p)["coords"]["b"] == "2/3");
  CHECK(schema_message([] { io::point_from_json(io::parse(R"({"level": 0, "coords": {"a": 0.5}})")); })
            .find("$.coords.a") != std::string::npos);
  CHECK_THROWS_AS(io::point_from_json(io::parse(R"({"level": 0, "coords": {"a": "1/0"}})")), Error);
}

TEST_CASE("canonical map JSON round trip and checks") {
  const auto cs = io::cover_from_json(io::parse(rem_json));
  const auto j = io::parse(R"({"subdivision_level": 1, "kappa": 2,
    "vertex_images": {"{a}": ["P", 0], "{a,b}": ["P", 0], "{b}": ["Q", 1]}})");
  const auto f = io::canonical_from_json(j, cs);
  CHECK(is_canonical(f, cs, Kappa::finite(2)));
  const auto back = io::canonical_to_json(f, 2, TargetKind::nerve);
  CHECK(back["vertex_images"]["{b}"] == Json::array({"Q", 1}));

  auto missing = j;
  missing["vertex_images"].erase("{b}");
  CHECK(schema_message([&] { io::canonical_from_json(missing, cs); }).find("missing image for vertex \"{b}\"") !=
        std::string::npos);
  auto unknown = j;
  unknown["vertex_images"]["zz"] = Json::array({"P", 0});
  CHECK(schema_message([&] { io::canonical_from_json(unknown, cs); }).find("$.vertex_images.zz") != std::string::npos);
}

TEST_CASE("dump puts schema_version first and is deterministic") {
  Json j = Json::object();
  j["b"] = 1;
  j["a"] = 2;
  const auto text = io::dump(j);
  CHECK(text.rfind("{\n  \"schema_version\": 1,", 0) == 0);
  CHECK(text == io::dump(j));
}

TEST_CASE("DOT output lists the 1-skeleton and the f-vector") {
  const auto dot = io::complex_to_dot(fixtures::triangle(), "tri");
  CHECK(dot.find("label=\"f-vector (3,3,1)\"") != std::string::npos);
  CHECK(dot.find("\"a\" -- \"b\";") != std::string::npos);
  const auto nerve_dot = io::nerve_to_dot(delta_subcomplex(fixtures::remark_cover(), Kappa::finite(2)).complex, "d");
  CHECK(nerve_dot.find("\"P@0\" -- \"Q@1\";") != std::string::npos);
}

TEST_CASE("mapping sequence JSON keyed by simplex tokens") {
  const auto j = io::parse(R"({
    "space": {"maximal_simplices": [["a", "b"]]}, "level": 0,
    "target": {"maximal_simplices": [["y1", "y2"]]},
    "tables": [{"{a}": [["y1"]], "{b}": [["y2"]], "{a,b}": [["y1", "y2"]]}]})");
  const auto phi = io::mapping_from_json(j);
  CHECK(vertex_selection(phi).image.at("b") == "y2");
  auto bad = j;
  bad["tables"][0]["{a,c}"] = Json::array({Json::array({"y1"})});
  CHECK(schema_message([&] { io::mapping_from_json(bad); }).find("$.tables[0][\"{a,c}\"]") != std::string::npos);
  auto not_monotone = j;
  not_monotone["tables"][0]["{a,b}"] = Json::array({Json::array({"y2"})});
  CHECK(schema_message([&] { io::mapping_from_json(not_monotone); }).find("NotCarrierMonotone") != std::string::npos);
}
