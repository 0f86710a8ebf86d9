#include "bgt/bench.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bgt/envelope.hpp"
#include "bgt/generators.hpp"
#include "bgt/m2_oracle.hpp"
#include "bgt/pst.hpp"
#include "bgt/rf_oracle.hpp"
#include "bgt/rm_oracle.hpp"

namespace bgt {

namespace {

struct Sample {
    std::uint64_t ops;
    std::uint64_t work;
};

Sample bench_pst(std::size_t n, std::mt19937_64& rng) {
    PrioritySearchTree t(n);
    auto rx = [&] { return static_cast<std::int64_t>(rng() % n); };
    for (std::size_t y = 1; y <= n; ++y) t.insert({rx(), static_cast<std::int64_t>(y)});
    t.reset_work();
    const std::uint64_t rounds = 20000;
    for (std::uint64_t k = 0; k < rounds; ++k) {
        std::int64_t y = 1 + static_cast<std::int64_t>(rng() % n);
        t.erase({*t.get_x(y), y});
        t.insert({rx(), y});
        (void)t.min_y_in_x_range(rx());
    }
    return {3 * rounds, t.work()};
}

Sample bench_envelope(std::size_t n, std::mt19937_64& rng) {
    UpperEnvelope u;
    auto slope = [&] { return Rational(1 + static_cast<std::int64_t>(rng() % 1000000), 1000000); };
    auto icpt = [&] { return Rational(static_cast<std::int64_t>(rng() % 2000000) - 1000000, 100000); };
    for (std::size_t i = 1; i <= n; ++i) u.insert(Line{static_cast<std::int64_t>(i), slope(), icpt()});
    u.reset_work();
    const std::uint64_t rounds = 4000;
    for (std::uint64_t k = 0; k < rounds; ++k) {
        auto name = 1 + static_cast<std::int64_t>(rng() % n);
        u.erase(name);
        u.insert(Line{name, slope(), icpt()});
        (void)u.upper(static_cast<std::int64_t>(rng() % 100));
    }
    return {3 * rounds, u.work()};
}

template <class Oracle>
Sample bench_queries(Oracle& o, std::size_t warmup, std::size_t queries) {
    for (std::size_t d = 0; d < warmup; ++d) (void)o.query();
    o.reset_work();
    for (std::size_t d = 0; d < queries; ++d) (void)o.query();
    return {queries, o.work()};
}

double ratio_limit(std::string_view s) {
    if (s == "pst" || s == "rf") return 1.5;
    if (s == "m2-build") return 5.0;
    return 2.0;
}

}  // namespace

std::vector<std::string> bench_structures() { return {"pst", "envelope", "rf", "rm", "m2", "m2-build"}; }

std::vector<std::size_t> bench_default_sizes(std::string_view s) {
    if (s == "envelope") return {1u << 8, 1u << 10, 1u << 12};
    if (s == "rm") return {1u << 7, 1u << 9, 1u << 11};
    if (s == "m2-build") return {1u << 12, 1u << 14, 1u << 16};
    if (s == "pst" || s == "rf" || s == "m2") return {1u << 10, 1u << 12, 1u << 14};
    throw std::invalid_argument("unknown bench structure '" + std::string(s) + "'");
}

std::vector<BenchRow> bench(std::string_view structure, std::span<const std::size_t> sizes, std::uint64_t seed) {
    (void)bench_default_sizes(structure);
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (sizes[k] < 2) throw std::invalid_argument("bench: sizes must be at least 2");
        if (k && sizes[k] <= sizes[k - 1]) throw std::invalid_argument("bench: sizes must be strictly increasing");
    }
    std::vector<BenchRow> rows;
    for (std::size_t n : sizes) {
        std::mt19937_64 rng(seed ^ (n * 0x9E3779B97F4A7C15ULL));
        Sample s{};
        if (structure == "pst") {
            s = bench_pst(n, rng);
        } else if (structure == "envelope") {
            s = bench_envelope(n, rng);
        } else if (structure == "rf") {
            RFOracle o(generate({"uniform-normalized", {}}, n, rng()), Rational(2));
            s = bench_queries(o, 2 * n, std::max<std::size_t>(4 * n, 20000));
        } else if (structure == "rm") {
            RMOracle o(generate({"uniform-normalized", {}}, n, rng()));
            s = bench_queries(o, 2 * n, 2 * n);
        } else if (structure == "m2") {
            MakespanTwoOracle o(generate({"dyadic-random", {}}, n, rng()));
            s = bench_queries(o, 0, std::max<std::size_t>(4 * n, 20000));
        } else {
            auto rates = round_rates(generate({"dyadic-random", {}}, n, rng()));
            OracleTree t = OracleTree::build(rates);
            s = {1, t.build_work()};
        }
        BenchRow row;
        row.structure = std::string(structure);
        row.n = n;
        row.ops = s.ops;
        row.work = s.work;
        row.work_per_op = static_cast<double>(s.work) / static_cast<double>(s.ops);
        if (structure == "m2") {
            // Mean descent cost against the height bound floor(log2 n) + 1.
            row.limit = 3.0 * static_cast<double>(std::bit_width(n));
            row.pass = row.work_per_op <= row.limit;
        } else {
            row.limit = ratio_limit(structure);
            if (!rows.empty()) {
                row.ratio = row.work_per_op / rows.back().work_per_op;
                row.pass = row.ratio <= row.limit;
            }
        }
        if (structure == "m2" && !rows.empty()) row.ratio = row.work_per_op / rows.back().work_per_op;
        rows.push_back(row);
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "structure,n,ops,work,work_per_op,ratio,limit,pass\n";
    for (const BenchRow& r : rows) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.4f", r.work_per_op);
        os << r.structure << ',' << r.n << ',' << r.ops << ',' << r.work << ',' << buf << ',';
        std::snprintf(buf, sizeof buf, "%.4f", r.ratio);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.2f", r.limit);
        os << buf << ',' << (r.pass ? "yes" : "no") << '\n';
    }
    return os.str();
}

}  // namespace bgt
