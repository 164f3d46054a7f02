#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "itm/scan.hpp"

using namespace itm;

namespace {

const ItmConfig kDefaults{};

bool same_sample(const ScanSample& a, const ScanSample& b) {
    if (a.failed != b.failed || a.h_star != b.h_star) return false;
    if (a.failed) return std::isnan(a.gamma) && std::isnan(b.gamma);
    return a.gamma == b.gamma && a.lambda == b.lambda;
}

bool same_report(const ScanReport& a, const ScanReport& b) {
    if (a.verdict != b.verdict || a.samples.size() != b.samples.size() || a.brackets.size() != b.brackets.size())
        return false;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        if (!same_sample(a.samples[i], b.samples[i])) return false;
    for (std::size_t i = 0; i < a.brackets.size(); ++i)
        if (a.brackets[i].lo != b.brackets[i].lo || a.brackets[i].hi != b.brackets[i].hi) return false;
    return true;
}

ScanSample ok(double h, double g) { return {h, g, 1.0, false}; }
ScanSample bad(double h) { return {h, NAN, NAN, true}; }

}  // namespace

TEST_CASE("scan grid") {
    const ScanGrid lin{0.5, 20.0, 40, Spacing::linear};
    const auto p = lin.points();
    REQUIRE(p.size() == 40);
    CHECK(p.front() == 0.5);
    CHECK(p.back() == 20.0);
    CHECK(p[1] == doctest::Approx(1.0));
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] > p[i - 1]);

    const auto q = ScanGrid{0.1, 10.0, 3, Spacing::logarithmic}.points();
    CHECK(q[1] == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(ScanGrid({0.0, 1.0, 5}).validate(), InvalidArgument);
    CHECK_THROWS_AS(ScanGrid({2.0, 1.0, 5}).validate(), InvalidArgument);
    CHECK_THROWS_AS(ScanGrid({1.0, 2.0, 1}).validate(), InvalidArgument);
}

TEST_CASE("summarize: brackets and verdicts") {
    CHECK(summarize({ok(1, 0.5), ok(2, 0.2)}).verdict == Verdict::no_zero);
    CHECK(summarize({ok(1, 0.5), ok(2, 0.2)}).brackets.empty());

    const ScanReport one = summarize({ok(1, 0.5), ok(2, 0.2), ok(3, -0.1), ok(4, -0.3)});
    CHECK(one.verdict == Verdict::unique_zero);
    REQUIRE(one.brackets.size() == 1);
    CHECK(one.brackets[0].lo == 2.0);
    CHECK(one.brackets[0].hi == 3.0);

    CHECK(summarize({ok(0, 0.7), ok(1, 0.5), ok(2, -0.2), ok(3, 0.1), ok(4, 0.3)}).verdict == Verdict::multiple_zeros);

    SUBCASE("failures before the bracket do not spoil uniqueness") {
        const ScanReport r = summarize({bad(1), bad(2), ok(3, 0.4), ok(4, -0.2), ok(5, -0.3)});
        CHECK(r.verdict == Verdict::unique_zero);
    }
    SUBCASE("failure inside a bracket") {
        const ScanReport r = summarize({ok(1, 0.4), ok(2, 0.3), bad(3), ok(4, -0.2), ok(5, -0.3)});
        REQUIRE(r.brackets.size() == 1);
        CHECK(r.brackets[0].lo == 2.0);
        CHECK(r.brackets[0].hi == 4.0);
        CHECK(r.verdict == Verdict::inconclusive);
    }
    SUBCASE("bracket touching the grid edge") {
        CHECK(summarize({ok(1, 0.4), ok(2, -0.3), ok(3, -0.5)}).verdict == Verdict::inconclusive);
    }
    SUBCASE("no sign change but failures") {
        CHECK(summarize({ok(1, 0.4), bad(2), ok(3, 0.5)}).verdict == Verdict::inconclusive);
    }
    SUBCASE("every sample failed") { CHECK_THROWS_AS(summarize({bad(1), bad(2)}), ScanFailure); }
    SUBCASE("order independence") {
        std::vector<ScanSample> s{bad(1), ok(2, 0.4), ok(3, 0.1), ok(4, -0.2), ok(5, -0.3), ok(6, -0.4)};
        const ScanReport ref = summarize(s);
        std::mt19937 rng(9);
        for (int k = 0; k < 10; ++k) {
            std::shuffle(s.begin(), s.end(), rng);
            CHECK(same_report(summarize(s), ref));
        }
    }
}

TEST_CASE("scan with negative starred curvature has one zero") {
    const ScanReport r = scan(ScanGrid{}, SecondDerivativeSign::minus, kDefaults);
    CHECK(r.verdict == Verdict::unique_zero);
    REQUIRE(r.brackets.size() == 1);
    CHECK(r.brackets[0].lo <= 2.954391);
    CHECK(r.brackets[0].hi >= 2.954391);
    CHECK(r.brackets[0].lo >= 2.5);
    CHECK(r.brackets[0].hi <= 3.5);

    SUBCASE("small h* blow up and are recorded as failures") {
        CHECK(r.samples.front().failed);
        CHECK_FALSE(r.samples.back().failed);
    }
    SUBCASE("the zero is well conditioned") {
        const auto it = std::find_if(r.samples.begin(), r.samples.end(),
                                     [&](const ScanSample& s) { return s.h_star == r.brackets[0].lo; });
        REQUIRE(it != r.samples.end());
        const ScanSample& lo = *it;
        const ScanSample& hi = *(it + 1);
        CHECK(std::abs((hi.gamma - lo.gamma) / (hi.h_star - lo.h_star)) > 0.5);
    }
    SUBCASE("secant seeded at the bracket converges inside it") {
        ItmConfig c;
        c.h0 = r.brackets[0].lo;
        c.h1 = r.brackets[0].hi;
        const ItmResult s = solve_sakiadis(c);
        REQUIRE(s.converged);
        CHECK(s.final_h_star >= r.brackets[0].lo);
        CHECK(s.final_h_star <= r.brackets[0].hi);
    }
}

TEST_CASE("scan with positive starred curvature has no zero") {
    const ScanReport r = scan(ScanGrid{}, SecondDerivativeSign::plus, kDefaults);
    CHECK(r.brackets.empty());
    CHECK(r.verdict == Verdict::no_zero);
    for (const ScanSample& s : r.samples) CHECK(s.gamma < 0.0);
}

TEST_CASE("scan edge grids") {
    SUBCASE("two points, same sign") {
        const ScanReport r = scan(ScanGrid{3.5, 4.0, 2}, SecondDerivativeSign::minus, kDefaults);
        CHECK(r.samples.size() == 2);
        CHECK(r.brackets.empty());
        CHECK(r.verdict == Verdict::no_zero);
    }
    SUBCASE("window beside the root") {
        CHECK(scan(ScanGrid{5.0, 6.0, 40}, SecondDerivativeSign::minus, kDefaults).verdict == Verdict::no_zero);
    }
    SUBCASE("only failing samples") {
        CHECK_THROWS_AS(scan(ScanGrid{0.5, 1.5, 3}, SecondDerivativeSign::minus, kDefaults), ScanFailure);
    }
}

TEST_CASE("OpenMP scan matches the serial reference") {
    const ScanGrid grid{0.5, 20.0, 40, Spacing::linear};
    for (auto sign : {SecondDerivativeSign::minus, SecondDerivativeSign::plus}) {
        const ScanReport ref = scan_serial(grid, sign, kDefaults);
        for (int threads : {1, 2, 4, 0}) {
            CAPTURE(threads);
            CHECK(same_report(scan_parallel(grid, sign, kDefaults, threads), ref));
        }
    }
}

TEST_CASE("scan CSV export") {
    SUBCASE("header and rows") {
        ScanReport r;
        r.samples = {ok(1.5, -0.25), bad(2.0)};
        r.samples[0].lambda = 1.25;
        CHECK(export_scan(r) == "h_star,gamma,lambda,failed\n1.5,-0.25,1.25,0\n2,nan,nan,1\n");
    }
    SUBCASE("round trip of a real scan") {
        const ScanReport r = scan(ScanGrid{}, SecondDerivativeSign::minus, kDefaults);
        const auto parsed = parse_scan_csv(export_scan(r) + "# verdict line\n");
        REQUIRE(parsed.size() == r.samples.size());
        for (std::size_t i = 0; i < parsed.size(); ++i) {
            CHECK(parsed[i].failed == r.samples[i].failed);
            CHECK(std::abs(parsed[i].h_star - r.samples[i].h_star) <= 5e-12 * r.samples[i].h_star);
            if (r.samples[i].failed) continue;
            // 12 significant digits: at most half a unit in the twelfth digit.
            CHECK(std::abs(parsed[i].gamma - r.samples[i].gamma) <= 5e-12 * std::abs(r.samples[i].gamma));
            CHECK(std::abs(parsed[i].lambda - r.samples[i].lambda) <= 5e-12 * std::abs(r.samples[i].lambda));
        }
    }
    SUBCASE("linear interpolant of the exported data crosses zero once in [2.5, 3.5]") {
        const auto parsed = parse_scan_csv(export_scan(scan(ScanGrid{}, SecondDerivativeSign::minus, kDefaults)));
        int crossings = 0;
        double where = 0.0;
        const ScanSample* prev = nullptr;
        for (const ScanSample& s : parsed) {
            if (s.failed) continue;
            if (prev && (prev->gamma > 0.0) != (s.gamma > 0.0)) {
                ++crossings;
                where = prev->h_star - prev->gamma * (s.h_star - prev->h_star) / (s.gamma - prev->gamma);
            }
            prev = &s;
        }
        CHECK(crossings == 1);
        CHECK(where > 2.5);
        CHECK(where < 3.5);
    }
    SUBCASE("malformed input") {
        CHECK_THROWS_AS(parse_scan_csv("a,b\n"), InvalidArgument);
        CHECK_THROWS_AS(parse_scan_csv("h_star,gamma,lambda,failed\n1,2\n"), InvalidArgument);
        CHECK_THROWS_AS(parse_scan_csv(""), InvalidArgument);
    }
}
