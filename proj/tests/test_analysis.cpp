#include <cmath>

#include "doctest.h"
#include "h2opa/analysis.hpp"
#include "h2opa/errors.hpp"
#include "h2opa/opa.hpp"

using namespace h2opa;

namespace {

double rel_gap(double got, double want) {
    return std::fabs(got - want) / std::fmax(1.0, std::fabs(want));
}

const double kSqrt6 = std::sqrt(6.0);

} // namespace

TEST_CASE("the three reference points all put a zero inside the bidisk") {
    const CriterionReport r1 = check_criterion({2.5, kSqrt6});
    CHECK(r1.has_root);
    CHECK(r1.lhs > r1.rhs);
    CHECK(rel_gap(r1.lhs, 84.419722912199868) < 1e-12);
    CHECK(rel_gap(r1.rhs, 82.402605469859233) < 1e-12);
    CHECK(rel_gap(r1.quotient, 0.97610608785770921) < 1e-12);

    const CriterionReport r2 = check_criterion({2.0, 2.1});
    CHECK(r2.has_root);
    CHECK(rel_gap(r2.quotient, 0.98687683284457478) < 1e-12);

    const CriterionReport r3 = check_criterion({3.0, 3.0});
    CHECK(r3.has_root);
    CHECK(rel_gap(r3.quotient, 0.97986577181208054) < 1e-12);
}

TEST_CASE("quotient equals the modulus of the diagonal zero of the approximant") {
    for (const FunctionParams p :
         {FunctionParams{2.5, kSqrt6}, FunctionParams{2.0, 2.1},
          FunctionParams{3.0, 3.0}, FunctionParams{1.0, 4.0}}) {
        const auto [p0, p1] = opa_degree1(p);
        const double from_poly = std::fabs(p0) / (2.0 * std::fabs(p1));
        CHECK(std::fabs(quotient(p) - from_poly) < 1e-10);
    }
}

TEST_CASE("far outside the critical region the quotient is large") {
    const double q = quotient({0.1, 10.0});
    CHECK(q > 1.0);
    CHECK(q > 49.0);
    CHECK(q < 51.0);
    CHECK(!check_criterion({0.1, 10.0}).has_root);
}

TEST_CASE("constant f has no degree-1 zero and an infinite quotient") {
    const CriterionReport rep = check_criterion({0.0, 3.0});
    CHECK(std::isinf(rep.quotient));
    CHECK(!rep.has_root);
}

TEST_CASE("scan grids are endpoint-inclusive and deterministic") {
    const Range ar{2.4, 3.0, 4};
    const Range rr{2.4, 2.7, 3};
    const ScanResult s = scan_region(ar, rr);
    REQUIRE(s.alphas.size() == 4);
    REQUIRE(s.rs.size() == 3);
    CHECK(s.alphas.front() == 2.4);
    CHECK(s.alphas.back() == 3.0);
    CHECK(s.alphas[1] == doctest::Approx(2.6).epsilon(1e-15));
    CHECK(s.rs[1] == doctest::Approx(2.55).epsilon(1e-15));
    REQUIRE(s.quotients.size() == 4);
    REQUIRE(s.quotients[0].size() == 3);

    const ScanResult again = scan_region(ar, rr);
    for (std::size_t i = 0; i < s.quotients.size(); ++i)
        for (std::size_t j = 0; j < s.quotients[i].size(); ++j) {
            CHECK(s.quotients[i][j] == again.quotients[i][j]);
            CHECK(s.verdicts[i][j] == again.verdicts[i][j]);
            CHECK(s.verdicts[i][j] == (s.quotients[i][j] < 1.0));
        }
}

TEST_CASE("small windows around each reference point report a zero") {
    const ScanResult s1 = scan_region({2.5, 2.6, 2}, {kSqrt6, 2.5, 2});
    CHECK(s1.verdicts[0][0]);  // cell (2.5, sqrt 6)
    CHECK(s1.quotients[0][0] < 1.0);

    const ScanResult s2 = scan_region({2.0, 2.2, 2}, {2.1, 2.2, 2});
    CHECK(s2.verdicts[0][0]);  // cell (2.0, 2.1)

    const ScanResult s3 = scan_region({2.9, 3.0, 2}, {2.9, 3.0, 2});
    CHECK(s3.verdicts[1][1]);  // cell (3.0, 3.0)
}

TEST_CASE("a failing cell is recorded as NaN without aborting the scan") {
    // r = 2.0004 makes the series argument 4/r^2 exceed the divergence guard
    const ScanResult s = scan_region({1.0, 1.5, 2}, {2.0004, 2.5, 2});
    for (int i = 0; i < 2; ++i) {
        CHECK(std::isnan(s.quotients[i][0]));
        CHECK(!s.verdicts[i][0]);
        CHECK(std::isfinite(s.quotients[i][1]));
    }
}

TEST_CASE("scan range validation") {
    CHECK_THROWS_AS(scan_region({2.4, 3.0, 1}, {2.4, 2.7, 3}),
                    InvalidParameters);
    CHECK_THROWS_AS(scan_region({2.4, 3.0, 3}, {2.0, 2.7, 3}),
                    InvalidParameters);
    CHECK_THROWS_AS(scan_region({-0.5, 3.0, 3}, {2.4, 2.7, 3}),
                    InvalidParameters);
    CHECK_THROWS_AS(scan_region({3.0, 2.4, 3}, {2.4, 2.7, 3}),
                    InvalidParameters);
}

TEST_CASE("simplex descent finds the quotient minimum") {
    const MinimizeResult res = minimize_quotient(2.5, 2.5);
    CHECK(res.converged);
    CHECK(std::fabs(res.quotient_star - 0.975766335259681) < 1e-9);
    CHECK(std::fabs(res.alpha_star - 2.551918826591946) < 1e-4);
    CHECK(std::fabs(res.r_star - 2.533672086469380) < 1e-4);
    CHECK(res.iterations > 0);
}

TEST_CASE("different starts land on the same minimizer") {
    const MinimizeResult a = minimize_quotient(2.5, 2.5);
    const MinimizeResult b = minimize_quotient(2.6, 2.6);
    CHECK(std::fabs(a.alpha_star - b.alpha_star) < 1e-4);
    CHECK(std::fabs(a.r_star - b.r_star) < 1e-4);
    CHECK(std::fabs(a.quotient_star - b.quotient_star) < 1e-10);
}

TEST_CASE("descent from a distant start still improves the objective") {
    const MinimizeResult res = minimize_quotient(5.0, 10.0);
    CHECK(res.converged);
    CHECK(res.quotient_star < quotient({5.0, 10.0}));
}

TEST_CASE("minimizer input validation") {
    CHECK_THROWS_AS(minimize_quotient(0.0, 3.0), InvalidParameters);
    CHECK_THROWS_AS(minimize_quotient(2.5, 2.0), InvalidParameters);
    CHECK_THROWS_AS(minimize_quotient(2.5, 2.5, 0.0), InvalidParameters);
}
