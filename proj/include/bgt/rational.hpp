#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bgt {

// Exact rational number in lowest terms with a positive denominator.
//
// Values whose numerator and denominator fit in int64 are kept inline and
// all arithmetic on them runs through 128-bit intermediates; anything larger
// is promoted to a GMP rational and demoted again once it fits.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d);
    explicit Rational(const mpq_class& q);

    Rational(const Rational& o);
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o);
    Rational& operator=(Rational&&) noexcept = default;
    ~Rational() = default;

    // Accepts "p", "p/q", "-p/q" with arbitrarily long digit strings.
    static Rational parse(std::string_view text);
    static Rational pow2(std::int64_t e);
    // n / d for 128-bit integers; throws std::domain_error when d == 0.
    static Rational from_i128(__int128 n, __int128 d);

    std::string str() const;
    double to_double() const;
    mpq_class to_mpq() const;

    int sign() const;
    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_integer() const;
    bool is_small() const { return !big_; }
    std::int64_t small_num() const { return num_; }
    std::int64_t small_den() const { return den_; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    void assign_i128(__int128 n, __int128 d);
    void assign_reduced(__int128 n, __int128 d);
    void add_small(std::int64_t c, std::int64_t d, int sign);
    void mul_small(std::int64_t c, std::int64_t d);
    void assign_mpq(mpq_class q);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Largest integer <= r / smallest integer >= r. Throws std::overflow_error
// when the result does not fit in int64.
std::int64_t floor_int(const Rational& r);
std::int64_t ceil_int(const Rational& r);

// The unique e with 2^e <= r < 2^(e+1). Throws std::domain_error for r <= 0.
std::int64_t floor_log2(const Rational& r);

}  // namespace bgt
