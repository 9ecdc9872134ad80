#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace grainmix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an exact computation leaves the 64-bit range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/*
 * Exact rational number backed by 64-bit integers.
 *
 * The value is always kept in lowest terms with a strictly positive
 * denominator, so structural equality is value equality. Intermediate
 * products are formed in 128 bits; a result that does not fit back into
 * 64 bits raises OverflowError instead of wrapping.
 */
class Rational {
public:
    constexpr Rational() noexcept = default;
    constexpr Rational(std::int64_t n) noexcept : num_(n) {}  // NOLINT: implicit from integers
    Rational(std::int64_t n, std::int64_t d);

    [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }

    [[nodiscard]] constexpr bool is_zero() const noexcept { return num_ == 0; }
    [[nodiscard]] constexpr bool is_integer() const noexcept { return den_ == 1; }
    [[nodiscard]] constexpr int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

    [[nodiscard]] Rational abs() const;
    [[nodiscard]] Rational reciprocal() const;
    /// Smallest integer not less than the value.
    [[nodiscard]] std::int64_t ceil() const noexcept;
    [[nodiscard]] std::int64_t floor() const noexcept;
    [[nodiscard]] double to_double() const noexcept;

    /// "num/den"; integers are still written with an explicit "/1".
    [[nodiscard]] std::string str() const;
    /// Accepts "n" or "n/d" with an optional leading sign on n.
    static Rational parse(std::string_view text);

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    static Rational from_wide(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/*
 * Rational extended with +inf and -inf. Costs are either finite or +inf;
 * a profit picks up -inf as soon as any contributing cost is infinite.
 * inf - inf has no meaning and throws.
 */
class Extended {
public:
    enum class Kind : std::uint8_t { neg_inf, finite, pos_inf };

    constexpr Extended() noexcept = default;
    Extended(Rational v) noexcept : value_(v) {}  // NOLINT: implicit from finite values
    Extended(std::int64_t v) noexcept : value_(v) {}  // NOLINT

    static Extended infinity() noexcept { return Extended(Kind::pos_inf); }
    static Extended neg_infinity() noexcept { return Extended(Kind::neg_inf); }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] bool is_finite() const noexcept { return kind_ == Kind::finite; }
    [[nodiscard]] bool is_pos_inf() const noexcept { return kind_ == Kind::pos_inf; }
    [[nodiscard]] bool is_neg_inf() const noexcept { return kind_ == Kind::neg_inf; }
    /// Throws when infinite.
    [[nodiscard]] const Rational& value() const;

    /// "inf", "-inf" or the rational string.
    [[nodiscard]] std::string str() const;
    static Extended parse(std::string_view text);

    friend Extended operator+(const Extended& a, const Extended& b);
    friend Extended operator-(const Extended& a, const Extended& b);
    Extended operator-() const;

    friend bool operator==(const Extended&, const Extended&) = default;
    friend std::strong_ordering operator<=>(const Extended& a, const Extended& b);

private:
    explicit Extended(Kind k) noexcept : kind_(k) {}

    Kind kind_ = Kind::finite;
    Rational value_;
};

using ExtendedCost = Extended;

std::ostream& operator<<(std::ostream& os, const Extended& e);

}  // namespace grainmix
