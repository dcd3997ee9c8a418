#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "rankscreen/core.hpp"

namespace rankscreen {
namespace {

std::vector<std::uint64_t> prefix(RandomStream s, std::size_t count) {
  std::vector<std::uint64_t> out(count);
  for (auto& v : out) v = s();
  return out;
}

TEST(DeriveStream, IdenticalArgumentsGiveIdenticalStreams) {
  const SeedSpec seed{42};
  EXPECT_EQ(prefix(derive_stream(seed, StreamPurpose::kTieBreak, 7, 3), 64),
            prefix(derive_stream(seed, StreamPurpose::kTieBreak, 7, 3), 64));
}

TEST(DeriveStream, DistinctFeaturesDiffer) {
  const SeedSpec seed{42};
  EXPECT_NE(prefix(derive_stream(seed, StreamPurpose::kTieBreak, 1, 0), 64),
            prefix(derive_stream(seed, StreamPurpose::kTieBreak, 2, 0), 64));
}

TEST(DeriveStream, DistinctSeedsPurposesAndRoundsDiffer) {
  const auto base = prefix(derive_stream(SeedSpec{0}, StreamPurpose::kTieBreak, 1, 0), 64);
  EXPECT_NE(base, prefix(derive_stream(SeedSpec{1}, StreamPurpose::kTieBreak, 1, 0), 64));
  EXPECT_NE(base, prefix(derive_stream(SeedSpec{0}, StreamPurpose::kShuffle, 1, 0), 64));
  EXPECT_NE(base, prefix(derive_stream(SeedSpec{0}, StreamPurpose::kTieBreak, 1, 1), 64));
  // Swapping index and round must not collide.
  EXPECT_NE(prefix(derive_stream(SeedSpec{0}, StreamPurpose::kTieBreak, 2, 5), 8),
            prefix(derive_stream(SeedSpec{0}, StreamPurpose::kTieBreak, 5, 2), 8));
}

TEST(RandomStream, UniformBelowStaysInRangeAndCoversIt) {
  RandomStream s = derive_stream(SeedSpec{9}, StreamPurpose::kShuffle, 0, 0);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = s.uniform_below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(RandomStream, Uniform01InUnitInterval) {
  RandomStream s(123);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.01);
}

TEST(DefaultModelSize, MatchesTableValues) {
  EXPECT_EQ(default_model_size(1500), 205u);
  EXPECT_EQ(2 * default_model_size(1500), 410u);
  EXPECT_EQ(3 * default_model_size(1500), 615u);
  EXPECT_EQ(default_model_size(3000), 374u);
  EXPECT_EQ(default_model_size(3), 2u);
}

TEST(DefaultModelSize, RejectsTinySamples) {
  EXPECT_THROW(default_model_size(2), std::invalid_argument);
  EXPECT_THROW(default_model_size(0), std::invalid_argument);
}

TEST(DefaultModelSize, NondecreasingOnGrid) {
  std::size_t prev = default_model_size(3);
  for (std::size_t n = 4; n < 20000; n += (n < 200 ? 1 : 37)) {
    const std::size_t cur = default_model_size(n);
    ASSERT_GE(cur, prev) << "n=" << n;
    ASSERT_LE(cur, n);
    prev = cur;
  }
}

TEST(DataMatrix, ColumnsComeBackInRowOrder) {
  const auto m = DataMatrix::from_columns({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 2u);
  const auto c1 = m.column(1);
  EXPECT_EQ(std::vector<double>(c1.begin(), c1.end()), (std::vector<double>{4, 5, 6}));
  EXPECT_DOUBLE_EQ(m(2, 0), 3.0);
  EXPECT_EQ(m.names(), (std::vector<std::string>{"x1", "x2"}));
  EXPECT_THROW(m.column(2), std::out_of_range);
}

TEST(DataMatrix, RejectsInvalidShapesAndValues) {
  EXPECT_THROW(DataMatrix::from_columns({{1.0}}), std::invalid_argument);
  EXPECT_THROW(DataMatrix::from_columns({{1, 2}, {1, 2, 3}}), std::invalid_argument);
  EXPECT_THROW(DataMatrix::from_columns({{1, std::nan("")}}), NonFiniteValueError);
  EXPECT_THROW(DataMatrix::from_columns({{1, std::numeric_limits<double>::infinity()}}), NonFiniteValueError);
  EXPECT_THROW(DataMatrix::from_columns({{1, 2}}, {"a", "b"}), std::invalid_argument);
}

TEST(ResponseVector, ConstantDetectionAndFiniteness) {
  EXPECT_TRUE(ResponseVector({5, 5, 5}).is_constant());
  EXPECT_FALSE(ResponseVector({5, 5, 4}).is_constant());
  EXPECT_THROW(ResponseVector({1, std::nan("")}), NonFiniteValueError);
  const auto m = DataMatrix::from_columns({{1, 2, 3}});
  EXPECT_THROW(check_compatible(m, ResponseVector({1, 2})), std::invalid_argument);
}

TEST(Configs, Validation) {
  EXPECT_NO_THROW((ScreenConfig{HardThreshold{3}, {}}.validate()));
  EXPECT_THROW((ScreenConfig{HardThreshold{0}, {}}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((ScreenConfig{SoftThreshold{0.1, 0.2}, {}}.validate()));
  EXPECT_THROW((ScreenConfig{SoftThreshold{0.0, 0.2}, {}}.validate()), std::invalid_argument);
  EXPECT_THROW((ScreenConfig{SoftThreshold{0.1, 0.25}, {}}.validate()), std::invalid_argument);
  EXPECT_THROW((ScreenConfig{SoftThreshold{0.1, 0.0}, {}}.validate()), std::invalid_argument);

  BanditConfig b;
  EXPECT_NO_THROW(b.validate());
  b.eta = 1.0;
  EXPECT_THROW(b.validate(), std::invalid_argument);
  b.eta = 1.1;
  b.alpha0 = -0.1;
  EXPECT_THROW(b.validate(), std::invalid_argument);
  b.alpha0 = 0.0;
  b.d = 0;
  EXPECT_THROW(b.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace rankscreen
