#include "microsim/error.hpp"
#include "microsim/money.hpp"

#include <doctest.h>

using namespace microsim;

TEST_CASE("div_round rounds halves away from zero") {
    CHECK(div_round(7, 2) == 4);
    CHECK(div_round(-7, 2) == -4);
    CHECK(div_round(5, 3) == 2);
    CHECK(div_round(4, 3) == 1);
    CHECK(div_round(-4, 3) == -1);
    CHECK(div_round(-5, 3) == -2);
    CHECK(div_round(0, 9) == 0);
    CHECK(div_round(36001, 3) == 12000);
}

TEST_CASE("round_mkd rounds halves away from zero") {
    CHECK(round_mkd(2.5) == 3);
    CHECK(round_mkd(-2.5) == -3);
    CHECK(round_mkd(2.4999) == 2);
    CHECK(annual_total(MonthlyAmounts{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}) == 78);
}

TEST_CASE("survey weights parse to exact hundredths") {
    CHECK(SurveyWeight::parse("123").hundredths() == 12300);
    CHECK(SurveyWeight::parse("123.4").hundredths() == 12340);
    CHECK(SurveyWeight::parse("0.07").hundredths() == 7);
    CHECK(SurveyWeight::parse("45.50").to_string() == "45.50");
    CHECK(SurveyWeight::from_hundredths(5).to_string() == "0.05");
    for (const char *bad : {"", "-1", "+1", "1.", ".5", "1.234", "1e3", "abc", "1.a"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(SurveyWeight::parse(bad), ValidationError);
    }
}

TEST_CASE("ratio comparison is exact beyond double precision") {
    CHECK(Ratio{1, 3} == Ratio{2, 6});
    CHECK(Ratio{1, 3} < Ratio{1, 2});
    const std::int64_t big = (std::int64_t{1} << 60) + 1;
    CHECK(Ratio{big, big - 1} < Ratio{big - 1, big - 2});
    CHECK(Ratio{big, big - 1}.to_double() == Ratio{big - 1, big - 2}.to_double());
    CHECK(Ratio{big, 1} > Ratio{big - 1, 1});
    CHECK(Ratio{3 * 7, 5 * 2}.to_double() == doctest::Approx(2.1));
}

TEST_CASE("fixed point conversion rejects excess digits") {
    CHECK(to_fixed_point(0.5, 2, "x") == 50);
    CHECK(to_fixed_point(0.3, 2, "x") == 30);
    CHECK(to_fixed_point(1.25, 2, "x") == 125);
    CHECK_THROWS_AS(to_fixed_point(0.125, 2, "x"), ValidationError);
}
