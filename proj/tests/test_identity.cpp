#include <gtest/gtest.h>

#include <json.hpp>

#include "flintlab/errors.hpp"
#include "flintlab/identity.hpp"

using namespace flintlab;

TEST(MultipleAngle, SingleAngle) {
  const ResidualReport r = verify_multiple_angle(7, MpReal::exact(0.3), 256);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.residual.abs_upper().log2(), -300.0);
  EXPECT_EQ(r.parameter("n"), "7");
}

TEST(MultipleAngle, SweepIsSeededAndPasses) {
  const auto a = verify_multiple_angle_sweep(1, 20, 5, 42, 192);
  const auto b = verify_multiple_angle_sweep(1, 20, 5, 42, 192);
  ASSERT_EQ(a.size(), 100u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(a[i].pass);
    EXPECT_EQ(a[i].parameter("theta"), b[i].parameter("theta"));
    EXPECT_EQ(a[i].seed, std::optional<std::uint64_t>(42));
    const double theta = std::stod(a[i].parameter("theta"));
    EXPECT_LT(std::abs(theta), 3.14159265358979);
  }
  const auto c = verify_multiple_angle_sweep(1, 20, 5, 43, 192);
  EXPECT_NE(a[0].parameter("theta"), c[0].parameter("theta"));
}

TEST(MultipleAngle, LargeN) {
  EXPECT_TRUE(verify_multiple_angle(300, MpReal::parse("1.234", 300), 192).pass);
}

TEST(Sinc, DecreasesTowardOne) {
  std::vector<MpReal> ms;
  for (int e = 1; e <= 8; ++e) ms.push_back(MpReal::parse("1e-" + std::to_string(e), 200));
  const auto points = verify_sinc_limit(ms, 128);
  ASSERT_EQ(points.size(), ms.size());
  MpReal one = MpReal::exact(std::int64_t{1});
  std::optional<MpReal> prev;
  for (const auto& p : points) {
    const MpReal d = sub(one, p.ratio, 256);
    EXPECT_GT(d.sign(), 0);
    EXPECT_LE(d.abs_upper(), p.distance_bound);
    // m^2/5 bound
    const MpReal fifth = div(mul(p.m, p.m, 256), MpReal::exact(std::int64_t{5}), 256);
    EXPECT_EQ(compare_certain(d, fifth), -1);
    if (prev) {
      EXPECT_EQ(compare_certain(d, *prev), -1);
    }
    prev = d;
  }
}

TEST(AngleDifference, PassesAndRejectsZero) {
  const ResidualReport r = verify_angle_difference(MpReal::exact(std::int64_t{355}), MpReal::parse("1e-6", 200), 160);
  EXPECT_TRUE(r.pass);
  EXPECT_THROW(verify_angle_difference(MpReal::exact(std::int64_t{0}), MpReal::parse("0.5", 64), 64), DomainError);
}

TEST(IterationRatio, ExactlyOne) {
  const ResidualReport r = verify_iteration_ratio(1000, 2, 128);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.parameter("g_ratio_max"), "0");
  EXPECT_EQ(r.residual.sign(), 0);
}

TEST(Report, JsonLine) {
  const ResidualReport r = verify_multiple_angle(5, MpReal::exact(1.0), 128);
  const auto j = nlohmann::json::parse(to_json_line(r));
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("parameters").at("n"), "5");
  EXPECT_TRUE(j.contains("residual"));
  EXPECT_TRUE(j.contains("tolerance"));
  EXPECT_EQ(to_json_line(r).find('\n'), std::string::npos);
}
