#include <doctest.h>

#include <iomanip>
#include <random>
#include <sstream>

#include "dodeca/exact.hpp"
#include "oracle.hpp"

using dodeca::RingValue;

namespace {

RingValue random_value(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> coef(-1000, 1000);
    std::uniform_int_distribution<std::int64_t> exp(0, 6);
    return RingValue::normalize(coef(rng), coef(rng), exp(rng));
}

} // namespace

TEST_CASE("normal form keeps one coefficient odd") {
    const RingValue v = RingValue::normalize(4, 8, 2);
    CHECK(v.a() == 1);
    CHECK(v.b() == 2);
    CHECK(v.e() == 0);
    CHECK(RingValue::normalize(6, 2, 1) == RingValue::normalize(3, 1, 0));
    CHECK(RingValue::normalize(0, 0, 5).e() == 0);
}

TEST_CASE("lambda times its inverse is one") {
    CHECK(RingValue::lambda() * RingValue::lambda_inverse() == RingValue(1));
    CHECK(RingValue::sqrt3() * RingValue::sqrt3() == RingValue(3));
    CHECK(RingValue::lambda() * RingValue::lambda() == RingValue::normalize(4, 2, 0));
}

TEST_CASE("field operations agree with high-precision evaluation") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const RingValue x = random_value(rng), y = random_value(rng);
        const oracle::Real tol = 1e-30;
        CHECK(abs(oracle::real(x + y) - (oracle::real(x) + oracle::real(y))) < tol);
        CHECK(abs(oracle::real(x - y) - (oracle::real(x) - oracle::real(y))) < tol);
        CHECK(abs(oracle::real(x * y) - oracle::real(x) * oracle::real(y)) < 1e-25);
    }
}

TEST_CASE("exact ordering matches real ordering") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 5000; ++i) {
        const RingValue x = random_value(rng), y = random_value(rng);
        const oracle::Real rx = oracle::real(x), ry = oracle::real(y);
        CHECK((x < y) == (rx < ry));
        CHECK((x == y) == (rx == ry));
        CHECK(x.sign() == (rx > 0 ? 1 : rx < 0 ? -1 : 0));
    }
}

TEST_CASE("ordering separates values closer than double precision") {
    // 1351^2 - 3 * 780^2 = 1, so 1351 - 780 sqrt 3 is about 3.7e-4 and its
    // powers shrink quickly.
    const RingValue tiny = dodeca::power(RingValue::normalize(1351, -780, 0), 4);
    CHECK(tiny.sign() == 1);
    CHECK(tiny < RingValue::normalize(1, 0, 40));
}

TEST_CASE("to_decimal rounds the exact value") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const RingValue x = random_value(rng);
        std::ostringstream os;
        os << std::fixed << std::setprecision(10) << oracle::real(x);
        std::string expect = os.str();
        if (expect == "-0.0000000000") expect = "0.0000000000";
        CHECK(x.to_decimal(10) == expect);
    }
    CHECK(RingValue::lambda().to_decimal(12) == "2.732050807569");
    CHECK(RingValue::normalize(-1, 0, 1).to_decimal(3) == "-0.500");
}

TEST_CASE("inflate with a negative exponent deflates") {
    const RingValue x = RingValue::normalize(3, -5, 2);
    for (int n = 0; n <= 6; ++n) CHECK(dodeca::inflate(dodeca::inflate(x, n), -n) == x);
    CHECK(dodeca::inflate(RingValue(1), 2) == RingValue::normalize(4, 2, 0));
}

TEST_CASE("coefficient overflow is reported") {
    const RingValue big = RingValue::normalize(std::int64_t{1} << 40, 1, 0);
    CHECK_THROWS_AS(big * big, dodeca::OverflowError);
}
