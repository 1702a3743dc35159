#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "podreliab/geometry.hpp"
#include "podreliab/projection.hpp"
#include "podreliab/svg.hpp"
#include "podreliab/text.hpp"

using namespace podreliab;

TEST(Text, FixedRoundsHalfAwayAndDropsNegativeZero) {
    EXPECT_EQ(format_fixed(25.046, 2), "25.05");
    EXPECT_EQ(format_fixed(-0.001, 2), "0.00");
    EXPECT_EQ(format_fixed(8.16496580927726, 2), "8.16");
}

TEST(Text, TrimmedFormat) {
    EXPECT_EQ(format_trimmed(3.190, 3), "3.19");
    EXPECT_EQ(format_trimmed(2.0, 3), "2");
    EXPECT_EQ(format_trimmed(2.4517, 3), "2.452");
}

TEST(Text, ShortestDoubleRoundTrips) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng);
        auto back = parse_double(format_double(v));
        ASSERT_TRUE(back);
        EXPECT_EQ(*back, v);
    }
    EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Text, ParseRejectsJunk) {
    EXPECT_FALSE(parse_double(""));
    EXPECT_FALSE(parse_double("1.5x"));
    EXPECT_FALSE(parse_double("abc"));
    EXPECT_EQ(*parse_double(" +2.5 "), 2.5);
    EXPECT_EQ(*parse_int("-42"), -42);
    EXPECT_FALSE(parse_int("4.2"));
}

TEST(Text, CsvSplitHonoursQuotes) {
    auto f = split_csv_line(R"(a,"b,c","say ""hi""",)");
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[1], "b,c");
    EXPECT_EQ(f[2], "say \"hi\"");
    EXPECT_EQ(f[3], "");
    EXPECT_EQ(csv_escape("plain"), "plain");
    EXPECT_EQ(split_csv_line(csv_escape("x,\"y\""))[0], "x,\"y\"");
}

TEST(Geometry, BearingIsCompassConvention) {
    EXPECT_DOUBLE_EQ(bearing_deg({0, 1}), 0.0);
    EXPECT_DOUBLE_EQ(bearing_deg({1, 0}), 90.0);
    EXPECT_DOUBLE_EQ(bearing_deg({0, -1}), 180.0);
    EXPECT_DOUBLE_EQ(bearing_deg({-1, 0}), 270.0);
    EXPECT_DOUBLE_EQ(bearing_difference_deg(350, 10), 20.0);
    EXPECT_DOUBLE_EQ(bearing_difference_deg(90, 270), 180.0);
}

TEST(Projection, CentralMeridianMapsToFalseEasting) {
    const auto tm = TransverseMercator::utm(32);
    const Vec2 p = tm.forward(0.0, 9.0);
    EXPECT_NEAR(p.x, 500000.0, 1e-6);
    EXPECT_NEAR(p.y, 0.0, 1e-6);
}

namespace {

// Krüger series in the third flattening, an independent formulation.
Vec2 kruger_utm(double lat_deg, double lon_deg, double lon0_deg) {
    const double a = 6378137.0, f = 1.0 / 298.257223563, k0 = 0.9996;
    const double n = f / (2.0 - f);
    const double A = a / (1.0 + n) * (1.0 + n * n / 4.0 + n * n * n * n / 64.0);
    const double al[3] = {n / 2.0 - 2.0 * n * n / 3.0 + 5.0 * n * n * n / 16.0,
                          13.0 * n * n / 48.0 - 3.0 * n * n * n / 5.0, 61.0 * n * n * n / 240.0};
    const double e = std::sqrt(f * (2.0 - f));
    const double phi = lat_deg * M_PI / 180.0, dl = (lon_deg - lon0_deg) * M_PI / 180.0;
    const double t = std::sinh(std::atanh(std::sin(phi)) - e * std::atanh(e * std::sin(phi)));
    const double xi = std::atan2(t, std::cos(dl));
    const double eta = std::atanh(std::sin(dl) / std::sqrt(1.0 + t * t));
    double x = eta, y = xi;
    for (int j = 1; j <= 3; ++j) {
        x += al[j - 1] * std::cos(2 * j * xi) * std::sinh(2 * j * eta);
        y += al[j - 1] * std::sin(2 * j * xi) * std::cosh(2 * j * eta);
    }
    return {500000.0 + k0 * A * x, k0 * A * y};
}

}  // namespace

TEST(Projection, AgreesWithKrugerSeries) {
    const auto tm = TransverseMercator::utm(32);
    for (double lat : {47.5, 50.94, 51.8}) {
        for (double lon : {6.0, 6.96, 8.4, 11.5}) {
            const Vec2 p = tm.forward(lat, lon);
            const Vec2 q = kruger_utm(lat, lon, 9.0);
            EXPECT_NEAR(p.x, q.x, 1e-3) << lat << " " << lon;
            EXPECT_NEAR(p.y, q.y, 1e-3) << lat << " " << lon;
        }
    }
}

TEST(Svg, EscapesAndTicks) {
    EXPECT_EQ(xml_escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
    auto t = nice_ticks(0.0, 5.0);
    ASSERT_FALSE(t.empty());
    EXPECT_LE(t.front(), 0.0 + 1e-12);
    EXPECT_GE(t.back(), 5.0 - 1e-12);
}

TEST(Svg, PolylineCarriesExactData) {
    SvgPlot plot("t", "x", "y", {0, 1}, {0, 1});
    plot.polyline({0.1, 0.30000000000000004}, {0.5, 1.0 / 3.0}, "#000", "", {{"series", "s"}});
    const std::string s = plot.str();
    EXPECT_NE(s.find("data-x=\"0.1 0.30000000000000004\""), std::string::npos) << s;
    EXPECT_NE(s.find("0.3333333333333333"), std::string::npos);
    EXPECT_NE(s.find("data-series=\"s\""), std::string::npos);
}
