#include <gtest/gtest.h>

#include "wpmep/instance.hpp"

namespace wpmep {
namespace {

std::string error_of(const std::string& text) {
  try {
    parse_instance(text, "in.json");
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(Instance, ParsesDefaultsAndOverrides) {
  auto inst = parse_instance(R"({"q": 3, "poset": {"elements": ["a", "b", "c"], "covers": [["a", "b"]]},
                                 "omega": {"b": "3/2"}, "dims": {"c": 2}, "name": "x"})");
  EXPECT_EQ(inst.q, 3);
  EXPECT_EQ(inst.poset.size(), 3);
  EXPECT_TRUE(inst.poset.less(0, 1));
  EXPECT_EQ(inst.omega[0], Rational(1));
  EXPECT_EQ(inst.omega[1], Rational(3, 2));
  EXPECT_EQ(inst.dims, (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(inst.metric().space.length(), 4);
}

TEST(Instance, ParseErrorsCarryLineAndColumn) {
  auto what = error_of("{\n  \"q\": 2,\n  \"poset\": [\n}");
  EXPECT_EQ(what.rfind("in.json:4:1: parse error", 0), 0u) << what;
}

TEST(Instance, ValidationErrorsCarryJsonPaths) {
  EXPECT_EQ(error_of(R"({"poset": {"elements": ["a"]}})"), "$: missing field \"q\"");
  EXPECT_EQ(error_of(R"({"q": 6, "poset": {"elements": ["a"]}})").rfind("$.q: ", 0), 0u);
  EXPECT_EQ(error_of(R"({"q": 2, "poset": {"elements": []}})"), "$.poset.elements: expected a nonempty array");
  EXPECT_EQ(error_of(R"({"q": 2, "poset": {"elements": ["a"], "covers": [["a", "z"]]}})"),
            "$.poset.covers[0][1]: unknown element \"z\"");
  EXPECT_NE(error_of(R"({"q": 2, "poset": {"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}})")
                .find("cycle"),
            std::string::npos);
  EXPECT_EQ(error_of(R"({"q": 2, "poset": {"elements": ["a"]}, "omega": {"a": "-1"}})"),
            "$.omega.a: weight must be positive");
  EXPECT_EQ(error_of(R"({"q": 2, "poset": {"elements": ["a"]}, "omega": {"a": 1}})"),
            "$.omega.a: weights are strings such as \"3/2\"");
  EXPECT_EQ(error_of(R"({"q": 2, "poset": {"elements": ["a"]}, "dims": {"a": 0}})"),
            "$.dims.a: dimension must be an integer in [1, 16]");
  EXPECT_EQ(error_of(R"({"q": 2, "poset": {"elements": ["a"]}, "extra": 1})"), "$.extra: unknown field");
}

TEST(Instance, CanonicalFormRoundTrips) {
  auto a = parse_instance(R"({"comment": "c", "dims": {"b": 2}, "poset": {"covers": [["a", "b"]],
                              "elements": ["a", "b"]}, "q": 2, "omega": {"a": "2/4"}})");
  auto text = to_json(a).dump();
  EXPECT_EQ(text, R"({"q":2,"poset":{"elements":["a","b"],"covers":[["a","b"]]},)"
                  R"("omega":{"a":"1/2","b":"1"},"dims":{"a":1,"b":2}})");
  EXPECT_EQ(to_json(parse_instance(text)).dump(), text);
}

}  // namespace
}  // namespace wpmep
