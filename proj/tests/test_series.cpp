#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "flintlab/errors.hpp"
#include "flintlab/series.hpp"
#include "mpfr_oracle.hpp"

using namespace flintlab;

TEST(SeriesSpec, Validation) {
  EXPECT_NO_THROW(SeriesSpec{}.validate());
  EXPECT_THROW((SeriesSpec{0, 0, 3.0, 128}.validate()), DomainError);
  EXPECT_THROW((SeriesSpec{0, 2, 0.0, 128}.validate()), DomainError);
  EXPECT_THROW((SeriesSpec{0, 2, 3.0, 4}.validate()), DomainError);
  EXPECT_DOUBLE_EQ((SeriesSpec{2, 2, 3.0, 128}.denominator_power()), 7.0);
}

TEST(Term, KnownValues) {
  const SeriesSpec spec;
  EXPECT_NEAR(term(1, spec).to_double(), 1.41228292743739, 1e-13);
  EXPECT_NEAR(term(355, spec).to_double(), 24.59818122, 1e-7);
  EXPECT_LE(term(355, spec).err().log2(), -128.0);
}

TEST(Term, IndependentOfS) {
  for (std::uint64_t n : {1, 2, 7, 355, 1000}) {
    for (std::uint32_t s = 1; s <= 3; ++s) {
      const MpReal a = term(n, SeriesSpec{0, 2, 3.0, 128});
      const MpReal b = term(n, SeriesSpec{s, 2, 3.0, 128});
      EXPECT_LT(midpoint_distance(a, b), a.err() + b.err());
    }
  }
}

TEST(Term, MatchesMpfrForGeneralExponents) {
  for (const SeriesSpec spec : {SeriesSpec{0, 1, 2.5, 100}, SeriesSpec{1, 3, 1.25, 100}, SeriesSpec{0, 2, 3.0, 100}}) {
    for (std::uint64_t n : {1, 2, 10, 355, 9999}) {
      oracle::Mpfr x(400), s(400), p(400), r(400);
      mpfr_set_ui(x.get(), n, MPFR_RNDN);
      mpfr_sin(s.get(), x.get(), MPFR_RNDN);
      mpfr_abs(s.get(), s.get(), MPFR_RNDN);
      mpfr_pow_ui(s.get(), s.get(), spec.u, MPFR_RNDN);
      mpfr_set_d(p.get(), spec.v, MPFR_RNDN);  // G(n) = n cancels n^(2s)
      mpfr_pow(p.get(), x.get(), p.get(), MPFR_RNDN);
      mpfr_mul(r.get(), s.get(), p.get(), MPFR_RNDN);
      mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
      ASSERT_TRUE(oracle::encloses(term(n, spec), r, Bound::pow2(-300))) << n;
    }
  }
}

TEST(PartialSum, TwoTerms) {
  EXPECT_NEAR(partial_sum(2, SeriesSpec{}).value().to_double(), 1.56346423207, 1e-11);
}

TEST(PartialSum, MatchesMpfrSum) {
  oracle::Mpfr total(600), x(600), s(600);
  mpfr_set_ui(total.get(), 0, MPFR_RNDN);
  for (unsigned n = 1; n <= 500; ++n) {
    mpfr_set_ui(x.get(), n, MPFR_RNDN);
    mpfr_sin(s.get(), x.get(), MPFR_RNDN);
    mpfr_sqr(s.get(), s.get(), MPFR_RNDN);
    mpfr_mul_ui(s.get(), s.get(), static_cast<unsigned long>(n) * n * n, MPFR_RNDN);
    mpfr_ui_div(s.get(), 1, s.get(), MPFR_RNDN);
    mpfr_add(total.get(), total.get(), s.get(), MPFR_RNDN);
  }
  const PartialSumResult r = partial_sum(500, SeriesSpec{});
  ASSERT_TRUE(oracle::encloses(r.value().widened(r.err()), total, Bound::pow2(-400)));
  EXPECT_LE(r.err().log2(), -110.0);
}

TEST(PartialSum, MonotoneInK) {
  const SeriesSpec spec{0, 1, 2.0, 96};
  std::optional<PartialSumResult> prev;
  for (std::uint64_t k = 50; k <= 500; k += 50) {
    const PartialSumResult cur = partial_sum(k, spec, prev);
    if (prev) {
      EXPECT_GT(compare_midpoints(cur.value(), prev->value()), 0);
    }
    prev = cur;
  }
}

TEST(PartialSum, ResumeIsBitIdentical) {
  const SeriesSpec spec;
  const PartialSumResult fresh = partial_sum(1000, spec);
  const PartialSumResult half = partial_sum(500, spec);
  const PartialSumResult resumed = partial_sum(1000, spec, half);
  EXPECT_EQ(fresh, resumed);
  const PartialSumResult odd = partial_sum(1000, spec, partial_sum(377, spec));
  EXPECT_EQ(fresh, odd);
}

TEST(PartialSum, ThreadsAndChunksAreBitIdentical) {
  const SeriesSpec spec{1, 2, 3.0, 128};
  const PartialSumResult single = partial_sum(3000, spec);
  EXPECT_EQ(single, partial_sum(3000, spec, std::nullopt, SumOptions{8, 4096}));
  EXPECT_EQ(single, partial_sum(3000, spec, std::nullopt, SumOptions{3, 97}));
}

TEST(PartialSum, CheckpointMismatch) {
  const PartialSumResult cp = partial_sum(100, SeriesSpec{});
  EXPECT_THROW(partial_sum(200, SeriesSpec{1, 2, 3.0, 128}, cp), CheckpointMismatchError);
  EXPECT_THROW(partial_sum(100, SeriesSpec{}, cp), CheckpointMismatchError);
  EXPECT_THROW(partial_sum(50, SeriesSpec{}, cp), CheckpointMismatchError);
}

TEST(Checkpoint, JsonRoundTrip) {
  const PartialSumResult r = partial_sum(777, SeriesSpec{2, 3, 2.5, 100});
  const std::string text = checkpoint_to_json(r);
  EXPECT_EQ(checkpoint_from_json(text), r);
  EXPECT_NE(text.find("\"version\":1"), std::string::npos);
}

TEST(Checkpoint, FileRoundTripAndResume) {
  const auto path = std::filesystem::temp_directory_path() / "flintlab_series_cp.json";
  save_checkpoint(path.string(), partial_sum(400, SeriesSpec{}));
  const PartialSumResult loaded = load_checkpoint(path.string());
  EXPECT_EQ(partial_sum(900, SeriesSpec{}, loaded), partial_sum(900, SeriesSpec{}));
  std::filesystem::remove(path);
}

TEST(Checkpoint, MalformedDocuments) {
  EXPECT_THROW(checkpoint_from_json("not json"), FormatError);
  EXPECT_THROW(checkpoint_from_json(R"({"version":2})"), FormatError);
  const std::string good = checkpoint_to_json(partial_sum(10, SeriesSpec{}));
  std::string bad = good;
  bad.replace(bad.find("\"value\":\"") + 9, 1, "x");
  EXPECT_THROW(checkpoint_from_json(bad), FormatError);
}

TEST(Equivalence, FamilyAgreesWithBaseSeries) {
  const auto rows = equivalence_experiment(300, 3, 128);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& row : rows) {
    EXPECT_LE(row.delta_vs_s0.abs_upper(), row.err + rows[0].err);
  }
}
