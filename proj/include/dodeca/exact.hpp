#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace dodeca {

/// Raised when an exact operation would leave the 64-bit coefficient range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Exact element (a + b*sqrt(3)) / 2^e of the dyadic ring Z[1/2, sqrt(3)].
///
/// Values are always kept in normal form: e == 0, or at least one of a, b odd.
/// Two values are equal iff their (a, b, e) triples are identical.
class RingValue {
public:
    constexpr RingValue() = default;
    RingValue(std::int64_t a) : a_(a) {} // NOLINT: implicit from integers is convenient

    static RingValue normalize(std::int64_t a, std::int64_t b, std::int64_t e);
    static RingValue sqrt3() { return normalize(0, 1, 0); }
    /// The inflation factor 1 + sqrt(3).
    static RingValue lambda() { return normalize(1, 1, 0); }
    /// (sqrt(3) - 1) / 2, the inverse of lambda.
    static RingValue lambda_inverse() { return normalize(-1, 1, 1); }
    static RingValue half() { return normalize(1, 0, 1); }

    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }
    std::int64_t e() const { return e_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    int sign() const;
    double to_double() const;
    /// Correctly rounded fixed-point rendering with `digits` fractional digits.
    std::string to_decimal(int digits) const;
    /// "a b e" triple of the normal form.
    std::string to_triple() const;

    RingValue operator-() const;
    friend RingValue operator+(const RingValue& x, const RingValue& y);
    friend RingValue operator-(const RingValue& x, const RingValue& y);
    friend RingValue operator*(const RingValue& x, const RingValue& y);
    RingValue& operator+=(const RingValue& y) { return *this = *this + y; }
    RingValue& operator-=(const RingValue& y) { return *this = *this - y; }
    RingValue& operator*=(const RingValue& y) { return *this = *this * y; }

    /// Division by 2^n.
    RingValue halved(int n = 1) const;

    friend bool operator==(const RingValue&, const RingValue&) = default;
    /// Real-value ordering (exact).
    friend std::strong_ordering operator<=>(const RingValue& x, const RingValue& y);

private:
    std::int64_t a_ = 0;
    std::int64_t b_ = 0;
    std::int64_t e_ = 0;
};

RingValue add(const RingValue& x, const RingValue& y);
RingValue sub(const RingValue& x, const RingValue& y);
RingValue neg(const RingValue& x);
RingValue mul(const RingValue& x, const RingValue& y);
/// x * (1 + sqrt(3))^n; negative n deflates.
RingValue inflate(const RingValue& x, int n);
/// Multiplies by an arbitrary ring element raised to a non-negative power.
RingValue power(const RingValue& x, int n);
int sign(const RingValue& x);
std::string to_decimal(const RingValue& x, int digits);

/// Lexicographic order on the normal-form triple; a total order used for
/// canonical sorting (not the order of real values).
inline bool triple_less(const RingValue& x, const RingValue& y) {
    if (x.e() != y.e()) return x.e() < y.e();
    if (x.a() != y.a()) return x.a() < y.a();
    return x.b() < y.b();
}

struct RingValueHash {
    std::size_t operator()(const RingValue& v) const noexcept {
        std::size_t h = std::hash<std::int64_t>{}(v.a());
        h ^= std::hash<std::int64_t>{}(v.b()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<std::int64_t>{}(v.e()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

} // namespace dodeca
