#include "bethegt/serialize.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

using namespace bethegt;
using io::json;

TEST(Serialize, RationalsAsStrings) {
  EXPECT_EQ(io::rational_json(Rational(-1, 2)), json("-1/2"));
  EXPECT_EQ(io::rational_json(Rational(4)), json("4"));
  EXPECT_EQ(io::rational_from_json(json("6/4")), Rational(3, 2));
  EXPECT_THROW(io::rational_from_json(json("1/0")), std::invalid_argument);
}

TEST(Serialize, CanonicalDump) {
  const json j = {{"b", 0.1}, {"a", {1, 2}}};
  const std::string text = io::canonical_dump(j);
  EXPECT_LT(text.find("\"a\""), text.find("\"b\""));
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
  EXPECT_EQ(json::parse(text)["a"][1], 2);
  EXPECT_EQ(io::canonical_dump(j), io::canonical_dump(json::parse(io::canonical_dump(j))));
}

TEST(Serialize, LieElementRoundTrip) {
  auto x = lie::LieElement::generator(2, -1, 3) + Rational(5, 2) * lie::LieElement::generator(3, 3, 3);
  EXPECT_EQ(io::lie_from_json(io::to_json(x)), x);
}

TEST(Serialize, PolynomialRoundTrip) {
  const auto p = poly::pfaffian_invariant(2, 2) + Rational(1, 3) * poly::trace_power(2, 1, 2);
  EXPECT_EQ(io::poly_from_json(io::to_json(p)), p);
}

TEST(Serialize, PatternRoundTrip) {
  for (const auto& p : gt::enumerate_patterns(gt::parse_weight("-1/2,-1/2,-3/2")))
    EXPECT_EQ(io::pattern_from_json(io::to_json(p)), p);
  const json w = io::to_json(gt::parse_weight("1/2,-1/2"));
  EXPECT_TRUE(w["half"].get<bool>());
}

TEST(Serialize, FlowTable) {
  const auto lambda = gt::parse_weight("0,-2");
  const auto mu = gt::parse_weight("0");
  const std::vector<double> u{0.3};
  const auto f = yang::flow(lambda, mu, u, yang::FlowSchedule{}, 1);
  ASSERT_TRUE(f.ok);
  const std::string csv = io::eigenvalue_csv(f);
  std::istringstream in(csv);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')), f.dimension);
  }
  EXPECT_EQ(rows, f.grid.size() + 1);
  const json j = io::to_json(f);
  EXPECT_EQ(j["labels"].size(), f.dimension);
}
