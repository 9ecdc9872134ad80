#include "grainmix/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

namespace grainmix {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(i128 v)
{
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view text, std::string_view whole)
{
    std::int64_t out = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec == std::errc::result_out_of_range)
        throw Error("rational component out of range in \"" + std::string(whole) + "\"");
    if (ec != std::errc() || ptr != last || first == last)
        throw Error("malformed rational \"" + std::string(whole) + "\"");
    return out;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d)
{
    if (d == 0) throw Error("zero denominator");
    *this = from_wide(n, d);
}

Rational Rational::from_wide(i128 n, i128 d)
{
    if (d == 0) throw Error("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (!fits64(n) || !fits64(d)) throw OverflowError("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

Rational Rational::abs() const
{
    return num_ < 0 ? -*this : *this;
}

Rational Rational::reciprocal() const
{
    if (num_ == 0) throw Error("reciprocal of zero");
    return from_wide(den_, num_);
}

std::int64_t Rational::floor() const noexcept
{
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t Rational::ceil() const noexcept
{
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

double Rational::to_double() const noexcept
{
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const
{
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, text));
    std::int64_t n = parse_int(text.substr(0, slash), text);
    std::string_view dpart = text.substr(slash + 1);
    if (!dpart.empty() && (dpart.front() == '-' || dpart.front() == '+'))
        throw Error("malformed rational \"" + std::string(text) + "\"");
    std::int64_t d = parse_int(dpart, text);
    if (d == 0) throw Error("zero denominator in \"" + std::string(text) + "\"");
    return Rational(n, d);
}

Rational& Rational::operator+=(const Rational& o)
{
    *this = from_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                      static_cast<i128>(den_) * o.den_);
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    *this = from_wide(static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_,
                      static_cast<i128>(den_) * o.den_);
    return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
    *this = from_wide(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.num_ == 0) throw Error("division by zero");
    *this = from_wide(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
    return *this;
}

Rational Rational::operator-() const
{
    return from_wide(-static_cast<i128>(num_), den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    i128 lhs = static_cast<i128>(a.num_) * b.den_;
    i128 rhs = static_cast<i128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    if (r.is_integer()) return os << r.num();
    return os << r.num() << '/' << r.den();
}

const Rational& Extended::value() const
{
    if (kind_ != Kind::finite) throw Error("value() on infinite quantity");
    return value_;
}

std::string Extended::str() const
{
    switch (kind_) {
    case Kind::pos_inf: return "inf";
    case Kind::neg_inf: return "-inf";
    case Kind::finite: break;
    }
    return value_.str();
}

Extended Extended::parse(std::string_view text)
{
    if (text == "inf" || text == "+inf") return infinity();
    if (text == "-inf") return neg_infinity();
    return Extended(Rational::parse(text));
}

Extended operator+(const Extended& a, const Extended& b)
{
    if (a.is_finite() && b.is_finite()) return Extended(a.value_ + b.value_);
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
        throw Error("inf - inf is undefined");
    if (a.is_pos_inf() || b.is_pos_inf()) return Extended::infinity();
    return Extended::neg_infinity();
}

Extended operator-(const Extended& a, const Extended& b)
{
    return a + (-b);
}

Extended Extended::operator-() const
{
    switch (kind_) {
    case Kind::pos_inf: return neg_infinity();
    case Kind::neg_inf: return infinity();
    case Kind::finite: break;
    }
    return Extended(-value_);
}

std::strong_ordering operator<=>(const Extended& a, const Extended& b)
{
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.is_finite()) return a.value_ <=> b.value_;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Extended& e)
{
    if (e.is_finite()) return os << e.value();
    return os << e.str();
}

}  // namespace grainmix
