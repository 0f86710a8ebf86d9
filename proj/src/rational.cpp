#include "bgt/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace bgt {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kI64Max = std::numeric_limits<std::int64_t>::max();
constexpr i128 kI64Min = std::numeric_limits<std::int64_t>::min();

int ctz128(u128 x) {
    auto lo = static_cast<std::uint64_t>(x);
    if (lo != 0) return __builtin_ctzll(lo);
    return 64 + __builtin_ctzll(static_cast<std::uint64_t>(x >> 64));
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int shift = __builtin_ctzll(a | b);
    a >>= __builtin_ctzll(a);
    do {
        b >>= __builtin_ctzll(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

u128 gcd128(u128 a, u128 b) {
    if ((a >> 64) == 0 && (b >> 64) == 0) return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    if (a == 0) return b;
    if (b == 0) return a;
    int shift = ctz128(a | b);
    a >>= ctz128(a);
    do {
        b >>= ctz128(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

std::uint64_t magnitude(std::int64_t v) { return v < 0 ? -static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v); }

mpz_class mpz_from_u128(u128 v) {
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
    return (hi << 64) + lo;
}

mpz_class mpz_from_i128(i128 v) {
    if (v < 0) return -mpz_from_u128(-static_cast<u128>(v));
    return mpz_from_u128(static_cast<u128>(v));
}

int bit_length(std::uint64_t v) { return v == 0 ? 0 : 64 - __builtin_clzll(v); }

}  // namespace

Rational::Rational(std::int64_t n) : num_(n), den_(1) {}

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    assign_i128(n, d);
}

Rational::Rational(const mpq_class& q) { assign_mpq(q); }

Rational Rational::from_i128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    Rational r;
    r.assign_i128(n, d);
    return r;
}

Rational::Rational(const Rational& o)
    : num_(o.num_), den_(o.den_), big_(o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& o) {
    if (this != &o) {
        num_ = o.num_;
        den_ = o.den_;
        big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
}

void Rational::assign_i128(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 un = n < 0 ? -static_cast<u128>(n) : static_cast<u128>(n);
    u128 g = gcd128(un, static_cast<u128>(d));
    if (g > 1) {
        if ((un >> 64) == 0 && (static_cast<u128>(d) >> 64) == 0) {
            auto g64 = static_cast<std::uint64_t>(g);
            auto q = static_cast<std::uint64_t>(un) / g64;
            n = n < 0 ? -static_cast<i128>(q) : static_cast<i128>(q);
            d = static_cast<i128>(static_cast<std::uint64_t>(d) / g64);
        } else {
            n /= static_cast<i128>(g);
            d /= static_cast<i128>(g);
        }
    }
    assign_reduced(n, d);
}

// n / d already in lowest terms with d > 0.
void Rational::assign_reduced(i128 n, i128 d) {
    if (n >= kI64Min && n <= kI64Max && d <= kI64Max) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
        big_.reset();
        return;
    }
    mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
    big_ = std::make_unique<mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
}

void Rational::assign_mpq(mpq_class q) {
    q.canonicalize();
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
        num_ = n.get_si();
        den_ = d.get_si();
        big_.reset();
        return;
    }
    big_ = std::make_unique<mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto bad = [&] { return std::invalid_argument("Rational: cannot parse '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto valid_int = [](std::string_view t, bool allow_sign) {
        if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view sv(s);
    std::string_view num = slash == std::string::npos ? sv : sv.substr(0, slash);
    std::string_view den = slash == std::string::npos ? std::string_view("1") : sv.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) throw bad();
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    mpz_class zn(n, 10);
    mpz_class zd(std::string(den), 10);
    if (zd == 0) throw std::domain_error("Rational: zero denominator in '" + s + "'");
    Rational r;
    r.assign_mpq(mpq_class(zn, zd));
    return r;
}

Rational Rational::pow2(std::int64_t e) {
    if (e >= 0 && e <= 62) return Rational(std::int64_t{1} << e);
    if (e < 0 && e >= -62) return Rational(1, std::int64_t{1} << (-e));
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    Rational r;
    r.assign_mpq(e < 0 ? mpq_class(mpz_class(1), p) : mpq_class(p));
    return r;
}

std::string Rational::str() const {
    if (big_) {
        if (big_->get_den() == 1) return big_->get_num().get_str();
        return big_->get_num().get_str() + "/" + big_->get_den().get_str();
    }
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

Rational Rational::operator-() const {
    if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational r;
    r.assign_mpq(-to_mpq());
    return r;
}

// a/b + sign * c/d with both operands small, by gcd of the denominators.
void Rational::add_small(std::int64_t c, std::int64_t d, int sign) {
    i128 a = num_, b = den_;
    i128 cc = sign < 0 ? -static_cast<i128>(c) : static_cast<i128>(c);
    if (b == d) {
        i128 t = a + cc;
        if (b == 1) {
            assign_reduced(t, 1);
            return;
        }
        assign_i128(t, b);
        return;
    }
    std::uint64_t g = gcd64(static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(d));
    if (g == 1) {
        assign_reduced(a * d + cc * b, b * d);
        return;
    }
    auto bg = static_cast<std::int64_t>(static_cast<std::uint64_t>(b) / g);
    auto dg = static_cast<std::int64_t>(static_cast<std::uint64_t>(d) / g);
    i128 t = a * dg + cc * bg;  // |t| < 2^127
    u128 ut = t < 0 ? -static_cast<u128>(t) : static_cast<u128>(t);
    std::uint64_t r = (ut >> 64) == 0 ? static_cast<std::uint64_t>(ut) % g : static_cast<std::uint64_t>(ut % g);
    std::uint64_t g2 = gcd64(r, g);
    if (g2 != 1) {
        if ((ut >> 64) == 0) {
            auto q = static_cast<std::uint64_t>(ut) / g2;
            t = t < 0 ? -static_cast<i128>(q) : static_cast<i128>(q);
        } else {
            t /= static_cast<i128>(g2);
        }
    }
    assign_reduced(t, static_cast<i128>(bg) * static_cast<std::int64_t>(static_cast<std::uint64_t>(d) / g2));
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        add_small(o.num_, o.den_, 1);
        return *this;
    }
    assign_mpq(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    if (!big_ && !o.big_) {
        add_small(o.num_, o.den_, -1);
        return *this;
    }
    assign_mpq(to_mpq() - o.to_mpq());
    return *this;
}

// (a/b) * (c/d) with cross reduction; the product is then already in lowest terms.
void Rational::mul_small(std::int64_t c, std::int64_t d) {
    std::uint64_t g1 = gcd64(magnitude(num_), static_cast<std::uint64_t>(d));
    std::uint64_t g2 = gcd64(magnitude(c), static_cast<std::uint64_t>(den_));
    if (num_ == 0 || c == 0) {
        assign_reduced(0, 1);
        return;
    }
    // g1 divides num_ and g2 divides c exactly, so the signed quotients are exact.
    std::int64_t a = g1 == 1 ? num_ : num_ / static_cast<std::int64_t>(g1);
    std::int64_t cc = g2 == 1 ? c : c / static_cast<std::int64_t>(g2);
    auto b = static_cast<std::int64_t>(static_cast<std::uint64_t>(den_) / g2);
    auto dd = static_cast<std::int64_t>(static_cast<std::uint64_t>(d) / g1);
    assign_reduced(static_cast<i128>(a) * cc, static_cast<i128>(b) * dd);
}

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        mul_small(o.num_, o.den_);
        return *this;
    }
    assign_mpq(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    if (!big_ && !o.big_ && o.num_ != std::numeric_limits<std::int64_t>::min()) {
        std::int64_t c = o.den_, d = o.num_;
        if (d < 0) {
            c = -c;
            d = -d;
        }
        mul_small(c, d);
        return *this;
    }
    assign_mpq(to_mpq() / o.to_mpq());
    return *this;
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // a demoted value never equals a promoted one
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::int64_t floor_int(const Rational& r) {
    if (r.is_small()) {
        std::int64_t n = r.small_num();
        std::int64_t d = r.small_den();
        std::int64_t q = n / d;
        if ((n % d != 0) && (n < 0)) --q;
        return q;
    }
    mpq_class q = r.to_mpq();
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!f.fits_slong_p()) throw std::overflow_error("floor_int: result exceeds int64");
    return f.get_si();
}

std::int64_t ceil_int(const Rational& r) {
    if (r.is_small()) {
        std::int64_t n = r.small_num();
        std::int64_t d = r.small_den();
        std::int64_t q = n / d;
        if ((n % d != 0) && (n > 0)) ++q;
        return q;
    }
    mpq_class q = r.to_mpq();
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!c.fits_slong_p()) throw std::overflow_error("ceil_int: result exceeds int64");
    return c.get_si();
}

std::int64_t floor_log2(const Rational& r) {
    if (r.sign() <= 0) throw std::domain_error("floor_log2: argument must be positive");
    if (r.is_small()) {
        auto n = static_cast<std::uint64_t>(r.small_num());
        auto d = static_cast<std::uint64_t>(r.small_den());
        std::int64_t e = bit_length(n) - bit_length(d);
        // 2^e <= n/d  <=>  n >= d * 2^e
        bool below = e >= 0 ? static_cast<u128>(n) < (static_cast<u128>(d) << e)
                            : (static_cast<u128>(n) << (-e)) < static_cast<u128>(d);
        return below ? e - 1 : e;
    }
    mpq_class q = r.to_mpq();
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    auto e = static_cast<std::int64_t>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
             static_cast<std::int64_t>(mpz_sizeinbase(d.get_mpz_t(), 2));
    bool below = e >= 0 ? n < (d << static_cast<unsigned long>(e))
                        : (n << static_cast<unsigned long>(-e)) < d;
    return below ? e - 1 : e;
}

}  // namespace bgt
