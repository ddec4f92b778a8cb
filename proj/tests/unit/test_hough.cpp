#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hubtrack/annotate.hpp"
#include "hubtrack/color.hpp"
#include "hubtrack/errors.hpp"
#include "hubtrack/hough.hpp"
#include "hubtrack/synth.hpp"
#include "oracles.hpp"

namespace hubtrack {
namespace {

GradientField empty_gradient(int w, int h) {
  return {Plane<double>(w, h), Plane<double>(w, h), Plane<double>(w, h), Plane<double>(w, h)};
}

CenterAccumulator make_acc(int w, int h) { return {1.0, Plane<std::int32_t>(w, h, 0)}; }

HoughParams strict_wheel() {
  HoughParams p;
  p.max_radius = 25;
  return p;
}

TEST(HoughParams, Validation) {
  HoughParams p;
  EXPECT_NO_THROW(p.validate());
  p.acc_threshold = 0;
  EXPECT_THROW(p.validate(), ParameterError);
  p = {};
  p.min_dist = 0.5;
  EXPECT_THROW(p.validate(), ParameterError);
  p = {};
  p.canny_high = 0.0;
  EXPECT_THROW(p.validate(), ParameterError);
  p = {};
  p.min_radius = 30;
  p.max_radius = 20;
  EXPECT_THROW(p.validate(), ParameterError);
  p.max_radius = 0;
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.effective_max_radius(30, 40), 50);
  p.dp = 0.1;
  EXPECT_EQ(p.effective_dp(), 1.0);
  p.min_radius = 0;
  EXPECT_EQ(p.effective_min_radius(), 1);
}

TEST(Accumulate, EmptyEdgeMap) {
  const auto r = accumulate_centers(EdgeMap(16, 12, 0), empty_gradient(16, 12), HoughParams{});
  EXPECT_TRUE(r.edge_pixels.empty());
  for (auto c : r.accumulator.counts.data()) EXPECT_EQ(c, 0);
  EXPECT_EQ(r.accumulator.width(), 16);
  EXPECT_EQ(r.accumulator.height(), 12);
}

TEST(Accumulate, SinglePixelWalksBothWays) {
  EdgeMap edges(20, 20, 0);
  edges(10, 10) = 1;
  GradientField g = empty_gradient(20, 20);
  g.gx(10, 10) = 1.0;
  g.magnitude(10, 10) = 1.0;
  HoughParams p;
  p.min_radius = 1;
  p.max_radius = 3;
  const auto r = accumulate_centers(edges, g, p);
  ASSERT_EQ(r.edge_pixels.size(), 1u);
  EXPECT_EQ(r.edge_pixels[0], (PixelPos{10, 10}));
  int total = 0;
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 20; ++x) {
      const int expected = (y == 10 && ((x >= 11 && x <= 13) || (x >= 7 && x <= 9))) ? 1 : 0;
      EXPECT_EQ(r.accumulator.counts(x, y), expected) << x << "," << y;
      total += r.accumulator.counts(x, y);
    }
  }
  EXPECT_EQ(total, 6);
}

TEST(Accumulate, DpShrinksAccumulator) {
  HoughParams p;
  p.dp = 2.0;
  const auto r = accumulate_centers(EdgeMap(15, 9, 0), empty_gradient(15, 9), p);
  EXPECT_EQ(r.accumulator.width(), 8);
  EXPECT_EQ(r.accumulator.height(), 5);
  EXPECT_DOUBLE_EQ(r.accumulator.to_image(0), 0.5);
}

TEST(Accumulate, RejectsSizeMismatch) {
  EXPECT_THROW(accumulate_centers(EdgeMap(5, 5, 0), empty_gradient(6, 5), HoughParams{}),
               SizeError);
}

TEST(Accumulate, DiskPeaksAtCenter) {
  const Image img = testing::render_disk(64, 64, 30, 33, 20, 220, 30);
  const GradientField g = sobel(img);
  HoughParams p;
  const auto r = accumulate_centers(canny(g, 50.0), g, p);
  int bx = 0, by = 0;
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      if (r.accumulator.counts(x, y) > r.accumulator.counts(bx, by)) {
        bx = x;
        by = y;
      }
    }
  }
  EXPECT_LE(std::abs(bx - 30), 1);
  EXPECT_LE(std::abs(by - 33), 1);
}

TEST(Accumulate, MatchesLineWalkOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(4, 64);
  std::uniform_real_distribution<double> comp(-300.0, 300.0);
  std::bernoulli_distribution on(0.08);
  const double dps[] = {0.5, 1.0, 1.5, 2.0, 3.0};
  for (int trial = 0; trial < 40; ++trial) {
    const int w = dim(rng), h = dim(rng);
    EdgeMap edges(w, h, 0);
    GradientField g = empty_gradient(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        edges(x, y) = on(rng);
        g.gx(x, y) = std::round(comp(rng));
        g.gy(x, y) = std::round(comp(rng));
        g.magnitude(x, y) = std::hypot(g.gx(x, y), g.gy(x, y));
      }
    }
    HoughParams p;
    p.dp = dps[trial % 5];
    p.min_radius = trial % 3 == 0 ? 0 : trial % 7;
    p.max_radius = trial % 4 == 0 ? 0 : p.min_radius + 1 + trial % 23;
    ASSERT_EQ(accumulate_centers(edges, g, p).accumulator.counts,
              testing::accumulate_oracle(edges, g, p))
        << "trial " << trial;
  }
}

TEST(SelectCandidates, EmptyAccumulator) {
  EXPECT_TRUE(select_candidates(make_acc(10, 10), HoughParams{}).empty());
}

TEST(SelectCandidates, SinglePeak) {
  CenterAccumulator acc = make_acc(10, 10);
  acc.counts(4, 6) = 50;
  const auto c = select_candidates(acc, HoughParams{});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], (CenterCandidate{4.0, 6.0, 50}));
}

TEST(SelectCandidates, SortedByVotes) {
  CenterAccumulator acc = make_acc(20, 20);
  acc.counts(3, 3) = 40;
  acc.counts(15, 12) = 60;
  HoughParams p;
  p.acc_threshold = 20;
  const auto c = select_candidates(acc, p);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].votes, 60);
  EXPECT_EQ(c[1].votes, 40);
  EXPECT_DOUBLE_EQ(c[1].cx, 3.0);
}

TEST(SelectCandidates, FlatPeakYieldsFirstCell) {
  CenterAccumulator acc = make_acc(10, 10);
  acc.counts(5, 4) = 40;
  acc.counts(6, 4) = 40;
  acc.counts(4, 5) = 40;
  acc.counts(5, 5) = 40;
  const auto c = select_candidates(acc, HoughParams{});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], (CenterCandidate{5.0, 4.0, 40}));
}

TEST(SelectCandidates, ShoulderIsNotAPeak) {
  CenterAccumulator acc = make_acc(10, 10);
  acc.counts(5, 5) = 40;
  acc.counts(6, 5) = 40;
  acc.counts(7, 5) = 41;
  const auto c = select_candidates(acc, HoughParams{});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].votes, 41);
}

TEST(SelectCandidates, BelowThresholdIgnored) {
  CenterAccumulator acc = make_acc(10, 10);
  acc.counts(5, 5) = 32;
  EXPECT_TRUE(select_candidates(acc, HoughParams{}).empty());
}

TEST(EstimateRadius, RenderedCircle) {
  const auto ring = midpoint_circle(40, 40, 20);
  HoughParams p;
  p.max_radius = 0;
  const auto r = estimate_radius(40, 40, ring, p, 60);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->radius, 20);
  EXPECT_EQ(r->support, static_cast<int>(ring.size()));
}

TEST(EstimateRadius, EmptyListHasNoRadius) {
  EXPECT_FALSE(estimate_radius(5, 5, {}, HoughParams{}, 50).has_value());
}

TEST(EstimateRadius, ThickRingWins) {
  std::vector<PixelPos> pts = midpoint_circle(60, 60, 10);
  const std::size_t thin = pts.size();
  for (int y = 0; y < 121; ++y) {
    for (int x = 0; x < 121; ++x) {
      const double d = std::hypot(x - 60.0, y - 60.0);
      if (d >= 39.5 && d < 40.5) pts.push_back({x, y});
    }
  }
  ASSERT_GT(pts.size() - thin, thin);
  HoughParams p;
  p.max_radius = 0;
  const auto r = estimate_radius(60, 60, pts, p, p.effective_max_radius(121, 121));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->radius, 40);
  EXPECT_EQ(r->support, static_cast<int>(pts.size() - thin));
}

TEST(EstimateRadius, TiePicksSmallerRadius) {
  std::vector<PixelPos> pts;
  for (int i = 0; i < 40; ++i) {
    pts.push_back({100 + 10, 100});
    pts.push_back({100 + 30, 100});
  }
  const auto r = estimate_radius(100, 100, pts, HoughParams{}, 50);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->radius, 10);
}

TEST(EstimateRadius, InsufficientSupport) {
  const auto ring = midpoint_circle(20, 20, 3);  // 16 pixels
  EXPECT_FALSE(estimate_radius(20, 20, ring, HoughParams{}, 10).has_value());
}

TEST(Detect, BlackImageHasNoHits) {
  EXPECT_TRUE(detect_circles(Image::gray8(64, 64), HoughParams{}).empty());
  EXPECT_THROW(detect_circles(Image::rgb8(8, 8), HoughParams{}), InvalidModelError);
  HoughParams bad;
  bad.acc_threshold = 0;
  EXPECT_THROW(detect_circles(Image::gray8(8, 8), bad), ParameterError);
}

TEST(Detect, WheelHubOnly) {
  const Image gray = to_grayscale(render_frame(SynthSpec{}, 0));
  const auto hits = detect_circles(gray, strict_wheel());
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_LE(std::abs(hits[0].cx - 128), 2);
  EXPECT_LE(std::abs(hits[0].cy - 128), 2);
  EXPECT_LE(std::abs(hits[0].radius - 17), 2);
}

TEST(Detect, UnboundedRadiusFindsTyre) {
  const Image gray = to_grayscale(render_frame(SynthSpec{}, 0));
  HoughParams p = strict_wheel();
  p.max_radius = 0;
  const auto hits = detect_circles(gray, p);
  bool tyre = false;
  for (const auto& h : hits) tyre = tyre || std::abs(h.radius - 107) <= 2;
  EXPECT_TRUE(tyre);
}

TEST(Detect, HitInvariants) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> pos(20, 108), rad(8, 30);
  for (int trial = 0; trial < 6; ++trial) {
    Image img = testing::render_disk(128, 128, pos(rng), pos(rng), rad(rng), 200, 50, 4.0, &rng);
    // a second disk to make suppression matter
    const Image other = testing::render_disk(128, 128, pos(rng), pos(rng), rad(rng), 180, 50);
    for (std::size_t i = 0; i < img.bytes().size(); ++i) {
      img.bytes()[i] = std::max(img.bytes()[i], other.bytes()[i]);
    }
    HoughParams p;
    p.min_dist = 10;
    p.acc_threshold = 15;
    p.min_radius = 5;
    p.max_radius = 40;
    const auto hits = detect_circles(img, p);
    for (std::size_t i = 0; i < hits.size(); ++i) {
      EXPECT_GE(hits[i].votes, p.acc_threshold);
      EXPECT_GE(hits[i].radius, 5);
      EXPECT_LE(hits[i].radius, 40);
      if (i > 0) {
        EXPECT_LE(hits[i].votes, hits[i - 1].votes);
      }
      for (std::size_t j = 0; j < i; ++j) {
        EXPECT_GE(std::hypot(hits[i].cx - hits[j].cx, hits[i].cy - hits[j].cy), p.min_dist);
      }
    }
    EXPECT_EQ(detect_circles(img, p), hits);
  }
}

TEST(Detect, LooserSettingsFindMoreOnTexturedWheel) {
  SynthSpec spec;
  spec.wheel.tread_count = 6;
  const Image gray = to_grayscale(render_frame(spec, 0));
  const auto strict = detect_circles(gray, strict_wheel());
  HoughParams mid = strict_wheel();
  mid.acc_threshold = 20;
  mid.min_dist = 12;
  const auto looser = detect_circles(gray, mid);
  EXPECT_EQ(strict.size(), 1u);
  EXPECT_GE(looser.size(), strict.size());
}

}  // namespace
}  // namespace hubtrack
