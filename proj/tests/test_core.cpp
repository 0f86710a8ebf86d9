#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>
#include <vector>

#include "bgt/instance.hpp"
#include "bgt/rational.hpp"

using bgt::Instance;
using bgt::Rational;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

std::vector<Rational> rates(std::initializer_list<const char*> xs) {
    std::vector<Rational> out;
    for (const char* s : xs) out.push_back(R(s));
    return out;
}

}  // namespace

TEST_CASE("rational normalizes and prints") {
    CHECK(Rational(6, 4).str() == "3/2");
    CHECK(Rational(-6, -4).str() == "3/2");
    CHECK(Rational(3, -9).str() == "-1/3");
    CHECK(Rational(0, 5).str() == "0");
    CHECK(R("10/5").str() == "2");
    CHECK(R("-7/21") == Rational(-1, 3));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS(R("1/0"));
    CHECK_THROWS(R("abc"));
    CHECK_THROWS(R(""));
}

TEST_CASE("rational arithmetic survives int64 overflow") {
    Rational big = Rational::pow2(62);
    Rational sq = big * big;
    CHECK(sq == Rational::pow2(124));
    CHECK(!sq.is_small());
    CHECK((sq / big) == big);
    CHECK((sq / big).is_small());
    Rational tiny = Rational::pow2(-70);
    CHECK((tiny * Rational::pow2(70)) == Rational(1));
    CHECK((Rational(1) - tiny) < Rational(1));
    CHECK((Rational(1) - tiny) + tiny == Rational(1));

    Rational a(INT64_MAX, 3), b(INT64_MAX - 1, 7);
    mpq_class ea = a.to_mpq() + b.to_mpq();
    CHECK((a + b).to_mpq() == ea);
    CHECK((a * b).to_mpq() == a.to_mpq() * b.to_mpq());
    CHECK((a - b).to_mpq() == a.to_mpq() - b.to_mpq());
}

TEST_CASE("rational random ops agree with gmp") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> num(-(1LL << 40), 1LL << 40);
    std::uniform_int_distribution<std::int64_t> den(1, 1LL << 40);
    Rational acc(0);
    mpq_class macc(0);
    for (int it = 0; it < 20000; ++it) {
        Rational x(num(rng), den(rng));
        mpq_class mx = x.to_mpq();
        switch (it % 4) {
            case 0: acc += x; macc += mx; break;
            case 1: acc -= x; macc -= mx; break;
            case 2: acc *= x; macc *= mx; break;
            default:
                if (!x.is_zero()) { acc /= x; macc /= mx; }
        }
        REQUIRE(acc.to_mpq() == macc);
        if (it % 50 == 49) { acc = Rational(it); macc = it; }
        CHECK(((acc < x) == (macc < mx)));
    }
}

TEST_CASE("floor and ceil") {
    CHECK(bgt::floor_int(Rational(7, 2)) == 3);
    CHECK(bgt::ceil_int(Rational(7, 2)) == 4);
    CHECK(bgt::floor_int(Rational(-7, 2)) == -4);
    CHECK(bgt::ceil_int(Rational(-7, 2)) == -3);
    CHECK(bgt::ceil_int(Rational(4)) == 4);
    CHECK_THROWS_AS(bgt::floor_int(Rational::pow2(80)), std::overflow_error);
}

TEST_CASE("floor_log2 examples") {
    CHECK(bgt::floor_log2(R("3/10")) == -2);
    CHECK(bgt::floor_log2(R("1/2")) == -1);
    CHECK(bgt::floor_log2(R("5/8")) == -1);
    CHECK(bgt::floor_log2(R("1")) == 0);
    CHECK(bgt::floor_log2(R("7")) == 2);
    CHECK(bgt::floor_log2(Rational(1) - Rational::pow2(-10)) == -1);
    CHECK_THROWS_AS(bgt::floor_log2(Rational(0)), std::domain_error);
    CHECK_THROWS_AS(bgt::floor_log2(Rational(-1, 2)), std::domain_error);
}

TEST_CASE("floor_log2 bracket property") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> num(1, 1LL << 50);
    std::uniform_int_distribution<int> shift(-90, 90);
    for (int it = 0; it < 20000; ++it) {
        Rational r = Rational(num(rng), num(rng)) * Rational::pow2(shift(rng));
        std::int64_t e = bgt::floor_log2(r);
        REQUIRE(Rational::pow2(e) <= r);
        REQUIRE(r < Rational::pow2(e + 1));
    }
}

TEST_CASE("canonicalize examples") {
    auto a = Instance::canonicalize(rates({"1/8", "1/2", "1/8"}));
    CHECK(a.rates() == rates({"1/2", "1/8", "1/8"}));
    CHECK(a.original_indices() == std::vector<std::size_t>{2, 1, 3});
    CHECK(!a.sums_to_one());
    CHECK(a.total_rate() == R("3/4"));
    CHECK(a.input_order_rates() == rates({"1/8", "1/2", "1/8"}));

    auto b = Instance::canonicalize(rates({"1"}));
    CHECK(b.sums_to_one());
    CHECK(b.size() == 1);

    CHECK_THROWS_AS(Instance::canonicalize(rates({"1/2", "3/4"})), std::invalid_argument);
    CHECK_THROWS_AS(Instance::canonicalize(rates({})), std::invalid_argument);
    CHECK_THROWS_AS(Instance::canonicalize(rates({"0", "1/2"})), std::invalid_argument);
    CHECK_THROWS_AS(Instance::canonicalize(rates({"-1/4"})), std::invalid_argument);
}

TEST_CASE("canonicalize is idempotent") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 200; ++it) {
        std::size_t n = 1 + rng() % 30;
        std::vector<Rational> raw;
        for (std::size_t i = 0; i < n; ++i) raw.emplace_back(1 + static_cast<std::int64_t>(rng() % 5), 40 * static_cast<std::int64_t>(n));
        auto once = Instance::canonicalize(raw);
        auto twice = Instance::canonicalize(once.rates());
        REQUIRE(once.rates() == twice.rates());
        for (std::size_t i = 1; i < n; ++i) REQUIRE(once.rate(i) >= once.rate(i + 1));
        for (std::size_t i = 1; i <= n; ++i) REQUIRE(raw[once.original_index(i) - 1] == once.rate(i));
        // Stability: equal rates keep input order.
        for (std::size_t i = 1; i < n; ++i)
            if (once.rate(i) == once.rate(i + 1)) REQUIRE(once.original_index(i) < once.original_index(i + 1));
    }
}

TEST_CASE("height law") {
    CHECK(bgt::height(R("1/2"), bgt::kNeverCut, 0) == R("1/2"));
    CHECK(bgt::height(R("1/8"), 3, 7) == R("1/2"));
    CHECK(bgt::height(R("1/3"), 5, 5) == Rational(0));
    CHECK_THROWS(bgt::height(R("1/3"), 5, 4));

    std::mt19937_64 rng(5);
    for (int it = 0; it < 1000; ++it) {
        Rational h(1 + static_cast<std::int64_t>(rng() % 100), 101);
        std::int64_t last = static_cast<std::int64_t>(rng() % 50) - 1;
        std::int64_t d = last + static_cast<std::int64_t>(rng() % 50);
        std::int64_t k = static_cast<std::int64_t>(rng() % 50);
        REQUIRE(bgt::height(h, last, d + k) - bgt::height(h, last, d) == Rational(k) * h);
    }
}

TEST_CASE("trim decision formatting") {
    CHECK(bgt::to_string(bgt::TrimDecision::trim(3)) == "trim 3");
    CHECK(bgt::to_string(bgt::TrimDecision::nothing()) == "nothing");
    CHECK(!bgt::TrimDecision::nothing().is_trim());
}
