#include "dodeca/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace dodeca {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin = std::numeric_limits<std::int64_t>::min();

[[noreturn]] void overflow(const char* op) {
    throw OverflowError(std::string("RingValue overflow in ") + op);
}

i128 checked_add(i128 x, i128 y, const char* op) {
    i128 r;
    if (__builtin_add_overflow(x, y, &r)) overflow(op);
    return r;
}

i128 checked_mul(i128 x, i128 y, const char* op) {
    i128 r;
    if (__builtin_mul_overflow(x, y, &r)) overflow(op);
    return r;
}

i128 checked_shl(i128 x, std::int64_t n, const char* op) {
    if (x == 0) return 0;
    if (n >= 120) overflow(op);
    return checked_mul(x, static_cast<i128>(1) << n, op);
}

RingValue from_wide(i128 a, i128 b, std::int64_t e, const char* op) {
    if (a == 0 && b == 0) return RingValue{};
    while (e > 0 && (a & 1) == 0 && (b & 1) == 0) {
        a /= 2;
        b /= 2;
        --e;
    }
    if (a > kMax || a < kMin || b > kMax || b < kMin) overflow(op);
    // Already normal, so normalize() only repacks.
    return RingValue::normalize(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), e);
}

u128 square_abs(std::int64_t v) {
    const u128 m = v < 0 ? static_cast<u128>(-static_cast<i128>(v)) : static_cast<u128>(v);
    return m * m;
}

} // namespace

RingValue RingValue::normalize(std::int64_t a, std::int64_t b, std::int64_t e) {
    if (e < 0) throw std::invalid_argument("RingValue exponent must be non-negative");
    RingValue v;
    if (a == 0 && b == 0) return v;
    while (e > 0 && (a % 2) == 0 && (b % 2) == 0) {
        a /= 2;
        b /= 2;
        --e;
    }
    v.a_ = a;
    v.b_ = b;
    v.e_ = e;
    return v;
}

int RingValue::sign() const {
    const int sa = (a_ > 0) - (a_ < 0);
    const int sb = (b_ > 0) - (b_ < 0);
    if (sa == sb) return sa;
    if (sa == 0) return sb;
    if (sb == 0) return sa;
    // Opposite signs: compare a^2 with 3 b^2 exactly.
    const u128 a2 = square_abs(a_);
    const u128 b2 = square_abs(b_);
    const u128 three_b2 = b2 * 3; // b2 <= 2^126, so 3*b2 < 2^128
    if (a2 > three_b2) return sa;
    return sb; // a^2 == 3 b^2 is impossible for b != 0
}

double RingValue::to_double() const {
    const double v = static_cast<double>(a_) + static_cast<double>(b_) * std::sqrt(3.0);
    return std::ldexp(v, -static_cast<int>(e_));
}

std::string RingValue::to_decimal(int digits) const {
    using boost::multiprecision::cpp_int;
    if (digits < 1) throw std::invalid_argument("to_decimal needs at least one digit");
    const bool negative = sign() < 0;
    const cpp_int a = negative ? -cpp_int(a_) : cpp_int(a_);
    const cpp_int b = negative ? -cpp_int(b_) : cpp_int(b_);
    cpp_int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    // round(|v| * 10^d) = floor((2 a 10^d + 2^e + 2 b 10^d sqrt3) / 2^(e+1))
    const cpp_int c = 2 * b * scale;
    cpp_int floor_c_sqrt3;
    if (c >= 0) {
        floor_c_sqrt3 = boost::multiprecision::sqrt(cpp_int(3 * c * c));
    } else {
        const cpp_int r = boost::multiprecision::sqrt(cpp_int(3 * c * c));
        floor_c_sqrt3 = -(r + 1); // c*sqrt3 is irrational for c != 0
    }
    const cpp_int denom = cpp_int(1) << (e_ + 1);
    const cpp_int numer = 2 * a * scale + (cpp_int(1) << e_) + floor_c_sqrt3;
    cpp_int q = numer / denom;
    if (numer < 0 && q * denom != numer) q -= 1; // floor division
    std::string s = q.str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    const bool all_zero = s.find_first_not_of("0.") == std::string::npos;
    if (negative && !all_zero) s.insert(0, "-");
    return s;
}

std::string RingValue::to_triple() const {
    return std::to_string(a_) + " " + std::to_string(b_) + " " + std::to_string(e_);
}

RingValue RingValue::operator-() const {
    if (a_ == std::numeric_limits<std::int64_t>::min() || b_ == std::numeric_limits<std::int64_t>::min())
        overflow("neg");
    RingValue v = *this;
    v.a_ = -a_;
    v.b_ = -b_;
    return v;
}

RingValue operator+(const RingValue& x, const RingValue& y) {
    const std::int64_t e = std::max(x.e_, y.e_);
    const i128 xa = checked_shl(x.a_, e - x.e_, "add");
    const i128 xb = checked_shl(x.b_, e - x.e_, "add");
    const i128 ya = checked_shl(y.a_, e - y.e_, "add");
    const i128 yb = checked_shl(y.b_, e - y.e_, "add");
    return from_wide(checked_add(xa, ya, "add"), checked_add(xb, yb, "add"), e, "add");
}

RingValue operator-(const RingValue& x, const RingValue& y) { return x + (-y); }

RingValue operator*(const RingValue& x, const RingValue& y) {
    const i128 ac = checked_mul(x.a_, y.a_, "mul");
    const i128 bd3 = checked_mul(checked_mul(x.b_, y.b_, "mul"), 3, "mul");
    const i128 ad = checked_mul(x.a_, y.b_, "mul");
    const i128 bc = checked_mul(x.b_, y.a_, "mul");
    const std::int64_t e = x.e_ + y.e_;
    return from_wide(checked_add(ac, bd3, "mul"), checked_add(ad, bc, "mul"), e, "mul");
}

RingValue RingValue::halved(int n) const {
    if (n < 0) throw std::invalid_argument("halved: negative count");
    if (is_zero()) return {};
    return normalize(a_, b_, e_ + n);
}

std::strong_ordering operator<=>(const RingValue& x, const RingValue& y) {
    // Fast path when the difference fits; otherwise compare with big integers.
    int s;
    try {
        s = (x - y).sign();
    } catch (const OverflowError&) {
        using boost::multiprecision::cpp_int;
        const std::int64_t e = std::max(x.e(), y.e());
        const cpp_int a = (cpp_int(x.a()) << (e - x.e())) - (cpp_int(y.a()) << (e - y.e()));
        const cpp_int b = (cpp_int(x.b()) << (e - x.e())) - (cpp_int(y.b()) << (e - y.e()));
        const int sa = a.sign(), sb = b.sign();
        if (sa == sb || sb == 0) s = sa;
        else if (sa == 0) s = sb;
        else s = a * a > 3 * b * b ? sa : sb;
    }
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

RingValue add(const RingValue& x, const RingValue& y) { return x + y; }
RingValue sub(const RingValue& x, const RingValue& y) { return x - y; }
RingValue neg(const RingValue& x) { return -x; }
RingValue mul(const RingValue& x, const RingValue& y) { return x * y; }

RingValue inflate(const RingValue& x, int n) {
    RingValue r = x;
    const RingValue f = n >= 0 ? RingValue::lambda() : RingValue::lambda_inverse();
    for (int i = 0; i < std::abs(n); ++i) r = r * f;
    return r;
}

RingValue power(const RingValue& x, int n) {
    if (n < 0) throw std::invalid_argument("power: negative exponent");
    RingValue r = 1;
    for (int i = 0; i < n; ++i) r = r * x;
    return r;
}

int sign(const RingValue& x) { return x.sign(); }
std::string to_decimal(const RingValue& x, int digits) { return x.to_decimal(digits); }

} // namespace dodeca
