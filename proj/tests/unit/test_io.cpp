#include <gtest/gtest.h>

#include "kfold_io.hpp"

using namespace kfold;
using namespace kfold::io;

TEST(Io, GermRoundTrip) {
  const json doc = parse_json(R"({"k": 5, "f": [{"i": 1, "j": 1, "c": "1"}, {"i": 0, "j": 2, "c": "-3/4"}]})");
  const GermDoc g = germ_from_json(doc);
  EXPECT_EQ(g.k, 5);
  EXPECT_EQ(g.degree, 11);
  const GermDoc back = germ_from_json(germ_to_json(g));
  EXPECT_EQ(back.k, g.k);
  EXPECT_EQ(back.f, g.f);
}

TEST(Io, Errors) {
  try {
    parse_json("{\n  \"k\": 5,\n  oops\n}");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(germ_from_json(parse_json(R"({"k": 1, "f": []})")), InputError);
  EXPECT_THROW(germ_from_json(parse_json(R"({"k": 5, "degree": 3, "f": [{"i": 4, "j": 0, "c": 1}]})")), InputError);
  EXPECT_THROW(rational_from_json(json("1/0")), InputError);
}

TEST(Io, Formats) {
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.5e-7), "-2.5e-07");
  EXPECT_EQ(table_csv_header().rfind("family,label,k,", 0), 0u);
  EXPECT_EQ(curves_csv({}), "feature,color,curve_id,x,y\n");
  EXPECT_EQ(points_csv({}), "type,x,y\n");
}
