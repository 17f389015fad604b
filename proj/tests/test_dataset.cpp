#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "gabsn/dataset.hpp"

using namespace gabsn;

TEST(Dataset, SingleColumn) {
  const Dataset d = parse_dataset("1.0\n2.0\n", "t");
  EXPECT_EQ(d.values, (std::vector<double>{1.0, 2.0}));
}

TEST(Dataset, CommentsAndBlankLines) {
  const Dataset d = parse_dataset("# source: here\n\n3\n  4.5 \r\n# trailing\n", "t");
  EXPECT_EQ(d.values, (std::vector<double>{3.0, 4.5}));
  EXPECT_NE(d.source.find("source: here"), std::string::npos);
}

TEST(Dataset, CsvNamedColumn) {
  const Dataset d = parse_dataset("id,\"wcc\",sex\n1,7.5,f\n2,8.25,m\n", "t", "wcc");
  EXPECT_EQ(d.values, (std::vector<double>{7.5, 8.25}));
  EXPECT_THROW(parse_dataset("id,x\n1,2\n", "t", "nope"), DatasetError);
  EXPECT_THROW(parse_dataset("id,x\n1,2\n", "t"), DatasetError);
}

TEST(Dataset, ParseErrorsCarryLineNumbers) {
  try {
    parse_dataset("1\n2\nabc\n", "file.txt");
    FAIL();
  } catch (const DatasetError& e) {
    EXPECT_NE(std::string(e.what()).find("file.txt:3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_dataset("", "t"), DatasetError);
  EXPECT_THROW(parse_dataset("1\ninf\n", "t"), DatasetError);
}

TEST(Dataset, BuiltinWcc) {
  const Dataset d = load_dataset("ais_wcc202");
  ASSERT_EQ(d.values.size(), 202u);
  const double mean = std::accumulate(d.values.begin(), d.values.end(), 0.0) / 202.0;
  EXPECT_NEAR(mean, 7.10891, 1e-5);
  EXPECT_NE(d.source.find("sha256"), std::string::npos);
}

TEST(Dataset, MissingBuiltinGivesFetchInstructions) {
  if (std::filesystem::exists(data_dir() / "lakes69.txt")) GTEST_SKIP() << "lakes69 is bundled";
  try {
    load_dataset("lakes69");
    FAIL();
  } catch (const DatasetError& e) {
    EXPECT_NE(std::string(e.what()).find("alr4"), std::string::npos);
  }
}
