#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "bgt/rf_oracle.hpp"

using bgt::Instance;
using bgt::Point;
using bgt::Rational;
using bgt::RFOracle;
using bgt::TrimDecision;

namespace {

Instance inst(std::vector<Rational> r) { return Instance::canonicalize(r); }

Instance random_instance(std::mt19937_64& rng, std::size_t n, bool sum_one) {
    std::vector<std::int64_t> w(n);
    std::int64_t total = 0;
    for (auto& x : w) total += (x = 1 + static_cast<std::int64_t>(rng() % 1000));
    std::int64_t den = sum_one ? total : total + 1 + static_cast<std::int64_t>(rng() % 500);
    std::vector<Rational> r;
    for (auto x : w) r.emplace_back(x, den);
    return Instance::canonicalize(r);
}

// Daily simulation of Reduce-Fastest(x) on exact heights.
struct Naive {
    const Instance& in;
    Rational x;
    std::vector<Rational> h;
    std::vector<std::int64_t> last_cut;
    std::int64_t day = 0;

    Naive(const Instance& i, Rational x0) : in(i), x(std::move(x0)), h(i.size()), last_cut(i.size(), bgt::kNeverCut) {}

    TrimDecision step() {
        for (std::size_t i = 0; i < h.size(); ++i) h[i] += in.rate(i + 1);
        TrimDecision d = bgt::naive_reduce_fastest_step(h, x);
        if (d.is_trim()) {
            h[d.index - 1] = Rational(0);
            last_cut[d.index - 1] = day;
        }
        ++day;
        return d;
    }
};

}  // namespace

TEST_CASE("build examples") {
    RFOracle a(inst({Rational(1)}), Rational(1));
    CHECK(a.current().points() == std::vector<Point>{{0, 1}});
    CHECK(a.next().empty());
    CHECK(a.delta() == 0);

    RFOracle b(inst({Rational(1, 2), Rational(1, 2)}), Rational(2));
    CHECK(b.current().points() == std::vector<Point>{{3, 1}, {3, 2}});

    RFOracle c(inst({Rational(1, 2), Rational(1, 4), Rational(1, 4)}), Rational(1));
    CHECK(c.current().points() == std::vector<Point>{{1, 1}, {3, 2}, {3, 3}});

    CHECK_THROWS_AS(RFOracle(inst({Rational(1)}), Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(RFOracle(inst({Rational(1)}), Rational(-1, 2)), std::invalid_argument);
}

TEST_CASE("naive step examples") {
    std::vector<Rational> a{Rational(1, 2), Rational(3, 2)};
    CHECK(bgt::naive_reduce_fastest_step(a, Rational(1)) == TrimDecision::trim(2));
    std::vector<Rational> b{Rational(0), Rational(0)};
    CHECK(bgt::naive_reduce_fastest_step(b, Rational(1)) == TrimDecision::nothing());
    std::vector<Rational> c{Rational(2), Rational(2)};
    CHECK(bgt::naive_reduce_fastest_step(c, Rational(1)) == TrimDecision::trim(1));
}

TEST_CASE("query examples") {
    RFOracle a(inst({Rational(1)}), Rational(1));
    for (int d = 0; d < 5; ++d) CHECK(a.query() == TrimDecision::trim(1));

    Instance two = inst({Rational(1, 2), Rational(1, 2)});
    RFOracle b(two, Rational(1));
    Naive nb(two, Rational(1));
    std::vector<TrimDecision> got, want;
    for (int d = 0; d < 8; ++d) {
        got.push_back(b.query());
        want.push_back(nb.step());
    }
    CHECK(got == want);
    CHECK(got[0] == TrimDecision::nothing());
    CHECK(got[1] == TrimDecision::trim(1));
    CHECK(got[2] == TrimDecision::trim(2));
}

TEST_CASE("rf_bound") {
    CHECK(bgt::rf_bound(Rational(2)) == Rational(19, 6));
    CHECK(bgt::rf_bound(Rational(3, 2)) == Rational(21, 8));
    Rational opt = bgt::rf_bound(Rational(1809, 1250));
    CHECK(opt < Rational(2621, 1000));
    CHECK(std::abs(bgt::rf_bound(1 + 1 / std::sqrt(5.0)) - (3 + std::sqrt(5.0)) / 2) < 1e-12);
    CHECK(std::abs(bgt::rf_bound(1.5) - 21.0 / 8) < 1e-12);
    CHECK_THROWS(bgt::rf_bound(Rational(1)));
    CHECK_THROWS(bgt::rf_bound(0.5));
}

TEST_CASE("equivalence with the naive scheduler and tree invariants") {
    std::mt19937_64 rng(3);
    const std::vector<Rational> xs{Rational(1), Rational(2), Rational(1809, 1250), Rational(3, 7), Rational(5, 2),
                                   Rational(1, 1000)};
    for (int it = 0; it < 60; ++it) {
        std::size_t n = 1 + rng() % 40;
        Instance in = random_instance(rng, n, it % 3 != 0);
        Rational x = xs[rng() % xs.size()];
        RFOracle o(in, x);
        Naive ref(in, x);
        std::int64_t horizon = 40 * static_cast<std::int64_t>(n) + 200;
        for (std::int64_t d = 0; d < horizon; ++d) {
            // Start of day d: t1 holds max(0, next threshold day - interval start).
            std::int64_t start = d - o.delta();
            REQUIRE(o.current().size() == n);
            auto pts = o.current().points();
            for (std::size_t i = 1; i <= n; ++i) {
                std::int64_t want = std::max<std::int64_t>(0, ref.last_cut[i - 1] + o.wait_days(i) - start);
                REQUIRE(pts[i - 1] == Point{want, static_cast<std::int64_t>(i)});
                REQUIRE(want <= o.coordinate_cap());
            }
            bool wraps = o.delta() == static_cast<std::int64_t>(n) - 1;
            REQUIRE(o.query() == ref.step());
            if (!wraps) {
                // Bamboos 1..delta are already re-based to the next interval.
                for (std::int64_t i = 1; i <= o.delta(); ++i) {
                    auto sz = static_cast<std::size_t>(i);
                    std::int64_t want = std::max<std::int64_t>(
                        0, ref.last_cut[sz - 1] + o.wait_days(sz) - start - static_cast<std::int64_t>(n));
                    REQUIRE(o.next().get_x(i) == want);
                }
            } else {
                REQUIRE(o.delta() == 0);
            }
        }
    }
}

TEST_CASE("long horizon equivalence") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 4; ++it) {
        std::size_t n = 50 + rng() % 150;
        Instance in = random_instance(rng, n, true);
        Rational x = it % 2 ? Rational(2) : Rational(1809, 1250);
        RFOracle o(in, x);
        Naive ref(in, x);
        for (int d = 0; d < 20000; ++d) REQUIRE(o.query() == ref.step());
    }
}

TEST_CASE("work per query is logarithmic") {
    std::mt19937_64 rng(19);
    double prev = 0;
    for (std::size_t n : {1u << 8, 1u << 11, 1u << 14}) {
        RFOracle o(random_instance(rng, n, true), Rational(2));
        for (std::size_t d = 0; d < 2 * n; ++d) o.query();
        o.reset_work();
        const std::size_t q = 4 * n;
        for (std::size_t d = 0; d < q; ++d) o.query();
        double per = static_cast<double>(o.work()) / static_cast<double>(q);
        double lg = std::log2(static_cast<double>(n));
        CHECK(per <= 12 * lg);
        if (prev > 0) CHECK(per / prev <= 1.8);
        prev = per;
    }
}
