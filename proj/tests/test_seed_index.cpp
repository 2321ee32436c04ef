#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "mssd/point_grid.hpp"
#include "mssd/seed_index.hpp"
#include "testutil.hpp"

using namespace mssd;

namespace {

std::size_t linear_count(const std::vector<GeoPoint>& pts, const QueryCircle& c) {
    return static_cast<std::size_t>(std::count_if(
        pts.begin(), pts.end(), [&](const GeoPoint& p) { return contains(c, p); }));
}

}  // namespace

TEST_CASE("count_in_circle: center counts itself, density example") {
    // Four seed points inside a 2 km circle around the first one.
    std::vector<GeoPoint> pts{{56.0, 10.0}, {56.003, 10.0}, {56.0, 10.005}, {56.005, 10.005}};
    SeedSet seed(pts);
    CHECK(seed.count_in_circle(QueryCircle{{56.0, 10.0}, 2000.0}) == 4);
    // 2000 / 4 = 500: the density strategy's radius adjustment.

    SeedSet lone(std::vector<GeoPoint>{{56.0, 10.0}});
    CHECK(lone.count_in_circle(QueryCircle{{56.0, 10.0}, 2000.0}) == 1);
}

TEST_CASE("count_in_circle equals a linear scan on random inputs") {
    std::mt19937_64 rng(101);
    const auto pts = testutil::clustered_points(rng, 3000, 12, 55.0, 9.0, 1.2, 0.02);
    SeedSet seed(pts);
    const std::vector<GeoPoint> distinct = seed.points();

    for (int i = 0; i < 500; ++i) {
        const QueryCircle c{testutil::random_point(rng, 54.8, 56.4, 8.8, 10.4),
                            testutil::uniform(rng, 50.0, 80'000.0)};
        CHECK(seed.count_in_circle(c) == linear_count(distinct, c));
    }
}

TEST_CASE("nearest_distinct: pair, singleton, quadratic oracle") {
    const GeoPoint a{56.0, 10.0};
    const GeoPoint b{56.0, 10.019667};  // roughly 1200 m east at this latitude
    SeedSet pair(std::vector<GeoPoint>{a, b});
    const auto nn = pair.nearest_distinct(a);
    REQUIRE(nn.has_value());
    CHECK(nn->point == b);
    CHECK(nn->distance_m == doctest::Approx(haversine(a, b)));

    SeedSet lone(std::vector<GeoPoint>{a});
    CHECK_FALSE(lone.nearest_distinct(a).has_value());

    std::mt19937_64 rng(103);
    auto pts = testutil::clustered_points(rng, 1000, 8, 55.0, 9.0, 1.0, 0.03);
    SeedSet seed(pts);
    const auto& distinct = seed.points();
    for (const GeoPoint& p : distinct) {
        double best = -1.0;
        for (const GeoPoint& q : distinct) {
            if (q == p) continue;
            const double d = haversine(p, q);
            if (best < 0.0 || d < best) best = d;
        }
        const auto got = seed.nearest_distinct(p);
        REQUIRE(got.has_value());
        CHECK(got->distance_m == doctest::Approx(best));
        CHECK(got->distance_m > 0.0);
        CHECK_FALSE(got->point == p);
    }
}

TEST_CASE("results are independent of insertion order and duplicates collapse") {
    std::mt19937_64 rng(107);
    auto pts = testutil::clustered_points(rng, 400, 5, 55.0, 9.0, 0.8, 0.02);
    pts.insert(pts.end(), pts.begin(), pts.begin() + 50);  // exact duplicates

    SeedSet forward(pts);
    std::reverse(pts.begin(), pts.end());
    SeedSet backward(pts);
    std::shuffle(pts.begin(), pts.end(), rng);
    SeedSet shuffled(pts);

    CHECK(forward.size() == backward.size());
    CHECK(forward.points() == backward.points());
    CHECK(forward.points() == shuffled.points());

    for (int i = 0; i < 200; ++i) {
        const QueryCircle c{testutil::random_point(rng, 54.9, 56.0, 8.9, 10.0),
                            testutil::uniform(rng, 100.0, 40'000.0)};
        CHECK(forward.count_in_circle(c) == backward.count_in_circle(c));
    }
}

TEST_CASE("point grid nearest handles far-away queries") {
    std::vector<GeoPoint> pts{{56.0, 10.0}, {56.1, 10.1}};
    PointGrid grid(pts);
    const auto nn = grid.nearest(GeoPoint{57.5, 11.5}, false);
    REQUIRE(nn.has_value());
    CHECK(nn->index == 1);

    PointGrid empty;
    CHECK_FALSE(empty.nearest(GeoPoint{0, 0}, false).has_value());
}
