#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"
#include "tspcaf/error.hpp"
#include "tspcaf/exact.hpp"
#include "tspcaf/tsplib.hpp"

namespace tspcaf {
namespace {

using testing::berlin52;

ErrorCode code_of(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_tsplib(in);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

TEST(ParseTsplib, Berlin52) {
  const auto& file = berlin52();
  EXPECT_EQ(file.name, "berlin52");
  EXPECT_EQ(file.dimension, 52);
  ASSERT_EQ(file.coords.size(), 52u);
  EXPECT_EQ(file.coords[0].x, 565.0);
  EXPECT_EQ(file.coords[0].y, 575.0);
  EXPECT_EQ(file.ids.front(), 1);
  EXPECT_EQ(file.ids.back(), 52);
  EXPECT_TRUE(file.warnings.empty());
}

TEST(ParseTsplib, SyntheticThreeNodesHeaderVariants) {
  std::istringstream in(
      "NAME : tri\n"
      "TYPE: TSP   \n"
      "DIMENSION 3\n"
      "EDGE_WEIGHT_TYPE : EUC_2D\r\n"
      "NODE_COORD_SECTION\n"
      "7 0 0\n"
      "8   3.0\t0   \n"
      "9 0 4\n");  // no EOF line
  const auto file = parse_tsplib(in);
  EXPECT_EQ(file.name, "tri");
  EXPECT_EQ(file.dimension, 3);
  ASSERT_EQ(file.coords.size(), 3u);
  EXPECT_EQ(file.coords[1].x, 3.0);
  EXPECT_EQ(file.coords[2].y, 4.0);
  EXPECT_EQ(file.ids, (std::vector<long long>{7, 8, 9}));
}

TEST(ParseTsplib, UnknownKeysWarn) {
  std::istringstream in(
      "NAME: x\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nDISPLAY_DATA_TYPE: COORD_DISPLAY\n"
      "NODE_COORD_SECTION\n1 0 0\n2 1 0\n3 0 1\nEOF\n");
  const auto file = parse_tsplib(in);
  ASSERT_EQ(file.warnings.size(), 1u);
  EXPECT_NE(file.warnings[0].find("DISPLAY_DATA_TYPE"), std::string::npos);
}

TEST(ParseTsplib, Errors) {
  EXPECT_EQ(code_of("NAME: x\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nEOF\n"),
            ErrorCode::MissingSection);
  EXPECT_EQ(code_of("NAME: x\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: GEO\nNODE_COORD_SECTION\n"),
            ErrorCode::UnsupportedWeightType);
  EXPECT_EQ(code_of("DIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n"),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of("DIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 a 1\n"),
            ErrorCode::MalformedLine);
  EXPECT_EQ(code_of("DIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0 9\n"),
            ErrorCode::MalformedLine);
  EXPECT_EQ(code_of(""), ErrorCode::MissingSection);
}

TEST(EuclideanCost, Basics) {
  EXPECT_EQ(euclidean_cost({0, 0}, {3, 4}), 5.0);
  EXPECT_EQ(euclidean_cost({12.5, -3}, {12.5, -3}), 0.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e4, 1e4);
  for (int t = 0; t < 100; ++t) {
    const Point p{u(rng), u(rng)};
    const Point q{u(rng), u(rng)};
    EXPECT_EQ(euclidean_cost(p, q), euclidean_cost(q, p));
  }
}

TEST(EuclideanCost, RoundedVariant) {
  EXPECT_EQ(euclidean_cost_rounded({0, 0}, {1, 1}), 1.0);
  EXPECT_EQ(euclidean_cost_rounded({0, 0}, {1.5, 2}), 3.0);  // 2.5 rounds up
  const auto inst = take_prefix(berlin52(), 5, DistanceRounding::Nearest);
  EXPECT_EQ(inst.cost(0, 1), std::floor(inst.cost(0, 1)));
}

TEST(TakePrefix, SizesAndErrors) {
  EXPECT_EQ(take_prefix(berlin52(), 52).size(), 52);
  try {
    take_prefix(berlin52(), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NTooSmall);
  }
  try {
    take_prefix(berlin52(), 53);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NTooLarge);
  }
}

TEST(TakePrefix, FirstFiveMatchesBruteForceOptimum) {
  const auto inst = testing::berlin(5);
  EXPECT_EQ(inst.points()[4].x, 845.0);
  const auto best = testing::brute_force_optimum(inst, ArcSet::complete(5));
  ASSERT_TRUE(best);
  EXPECT_NEAR(*best, 2314.55, 0.01);
}

TEST(TsplibProperties, ReserializeIsBitExact) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int trial = 0; trial < 20; ++trial) {
    RawTsplibFile file;
    file.name = "rand";
    file.dimension = 30;
    for (int i = 0; i < file.dimension; ++i) {
      file.ids.push_back(100 + i);
      file.coords.push_back({u(rng), trial == 0 ? 0.1 + i : u(rng) * 1e-7});
    }
    std::stringstream buffer;
    write_tsplib(buffer, file);
    const auto back = parse_tsplib(buffer);
    ASSERT_EQ(back.coords.size(), file.coords.size());
    for (std::size_t i = 0; i < file.coords.size(); ++i) {
      EXPECT_EQ(back.coords[i].x, file.coords[i].x);
      EXPECT_EQ(back.coords[i].y, file.coords[i].y);
      EXPECT_EQ(back.ids[i], file.ids[i]);
    }
  }
}

TEST(TsplibProperties, CostMatrixIsMetric) {
  const auto inst = take_prefix(berlin52(), 52);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> v(0, 51);
  for (int i = 0; i < 52; ++i) {
    EXPECT_EQ(inst.cost(i, i), 0.0);
    for (int j = 0; j < 52; ++j) EXPECT_EQ(inst.cost(i, j), inst.cost(j, i));
  }
  for (int t = 0; t < 5000; ++t) {
    const int i = v(rng), j = v(rng), k = v(rng);
    EXPECT_LE(inst.cost(i, j), inst.cost(i, k) + inst.cost(k, j) + 1e-9);
  }
}

}  // namespace
}  // namespace tspcaf
