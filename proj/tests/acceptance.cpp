// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Usage: acceptance [--only N[,M...]]

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bgt/bench.hpp"
#include "bgt/envelope.hpp"
#include "bgt/generators.hpp"
#include "bgt/m2_oracle.hpp"
#include "bgt/pst.hpp"
#include "bgt/rf_oracle.hpp"
#include "bgt/rm_oracle.hpp"
#include "bgt/sim.hpp"

using namespace bgt;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

Instance random_sum_one(std::size_t n, std::uint64_t seed) {
    return generate({seed % 2 ? "uniform-normalized" : "dyadic-random", {}}, n, seed);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// 1. Reduce-Max makespan <= 9 on 50 instances per size, horizon 10^6. The
// naive tallest-first scan runs every instance; the envelope oracle (another
// valid tie rule) runs a subset.
Outcome criterion1() {
    const std::int64_t horizon = 1'000'000;
    bool ok = true;
    std::ostringstream os;
    Rational worst(0);
    for (std::size_t n : {10u, 100u, 1000u}) {
        Rational mx(0);
        double mean = 0;
        int count = 0;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            Instance in = random_sum_one(n, 1000 * n + seed);
            auto r = verify(in, parse_strategy("naive-reduce-max"), horizon);
            ok = ok && r.bound->applicable && r.bound->holds;
            if (r.observed_makespan > mx) mx = r.observed_makespan;
            mean += r.observed_makespan.to_double();
            ++count;
        }
        std::uint64_t oracle_runs = n == 10 ? 5 : n == 100 ? 2 : 1;
        for (std::uint64_t seed = 1; seed <= oracle_runs; ++seed) {
            Instance in = random_sum_one(n, 1000 * n + seed);
            auto r = verify(in, parse_strategy("reduce-max"), horizon);
            ok = ok && r.bound->applicable && r.bound->holds;
            if (r.observed_makespan > mx) mx = r.observed_makespan;
        }
        if (mx > worst) worst = mx;
        os << "n=" << n << ": max " << fmt(mx.to_double()) << " mean " << fmt(mean / count) << "; ";
    }
    os << "worst observed " << worst.str() << " <= 9";
    return {ok, os.str()};
}

// 2. Reduce-Fastest(2) <= 19/6 and Reduce-Fastest(1809/1250) <= rf_bound(1809/1250) < 2.621.
Outcome criterion2() {
    const std::int64_t horizon = 1'000'000;
    Rational xs = default_rf_threshold();
    Rational b = rf_bound(xs);
    bool ok = b < Rational(2621, 1000) && rf_bound(Rational(2)) == Rational(19, 6);
    Rational worst2(0), worst_opt(0);
    for (std::size_t n : {10u, 100u, 1000u}) {
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            Instance in = random_sum_one(n, 2000 * n + seed);
            auto r2 = verify(in, parse_strategy("reduce-fastest", Rational(2)), horizon);
            auto ro = verify(in, parse_strategy("reduce-fastest", xs), horizon);
            ok = ok && r2.bound->holds && r2.bound->bound == Rational(19, 6) && ro.bound->holds &&
                 ro.bound->bound == b && r2.bound->applicable && ro.bound->applicable;
            if (r2.observed_makespan > worst2) worst2 = r2.observed_makespan;
            if (ro.observed_makespan > worst_opt) worst_opt = ro.observed_makespan;
        }
    }
    return {ok, "150 instances; x=2: worst " + fmt(worst2.to_double()) + " <= 19/6; x=1809/1250: worst " +
                    fmt(worst_opt.to_double()) + " <= rf_bound = " + fmt(b.to_double()) + " < 2.621"};
}

// 3. Makespan-2 oracle: <= 2 on original rates, <= 1 on transformed rates.
Outcome criterion3() {
    bool ok = true;
    int runs = 0;
    Rational worst(0), worst_t(0);
    std::int64_t longest = 0;
    std::vector<Instance> cases;
    for (std::size_t n : {1u, 2u, 3u, 10u, 100u, 1000u})
        for (std::uint64_t seed = 1; seed <= 5; ++seed) cases.push_back(random_sum_one(n, 3000 * n + seed));
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        // Sums below 1 are boosted.
        auto raw = uniform_normalized(200, seed);
        for (auto& r : raw) r = r * Rational(9, 10);
        cases.push_back(Instance::canonicalize(raw));
    }
    cases.push_back(Instance::canonicalize(figure4()));
    cases.push_back(Instance::canonicalize(two_bamboo(Rational::pow2(-10))));
    cases.push_back(Instance::canonicalize(regular(12)));
    for (const Instance& in : cases) {
        Strategy s = parse_strategy("makespan2");
        std::int64_t h = default_horizon(s, in);
        std::int64_t e = -floor_log2(in.rate(in.size()));
        std::int64_t need = e + 2 >= 24 ? 10'000'000 : std::min<std::int64_t>(std::int64_t{1} << (e + 2), 10'000'000);
        ok = ok && h >= need;
        auto r = verify(in, s, h);
        ok = ok && r.bound->holds && r.observed_makespan <= Rational(2) && r.transformed_bound->holds &&
             *r.transformed_makespan <= Rational(1);
        if (r.observed_makespan > worst) worst = r.observed_makespan;
        if (*r.transformed_makespan > worst_t) worst_t = *r.transformed_makespan;
        longest = std::max(longest, h);
        ++runs;
    }
    return {ok, std::to_string(runs) + " instances, horizons up to " + std::to_string(longest) +
                    "; worst original " + worst.str() + " <= 2, worst transformed " + worst_t.str() + " <= 1"};
}

// 4. Regular oracle: exact maximum gaps over one full period.
Outcome criterion4() {
    bool ok = true;
    for (std::size_t k = 2; k <= 16; ++k) {
        RegularOracle o(k);
        const std::uint64_t period = std::uint64_t{1} << (k - 1);
        std::vector<std::vector<std::uint64_t>> days(k + 1);
        for (std::uint64_t d = 0; d < period; ++d) days[o.query()].push_back(d);
        for (std::size_t j = 1; j <= k; ++j) {
            const auto& v = days[j];
            std::uint64_t want = j < k ? (std::uint64_t{1} << j) : period;
            if (v.empty() || v.size() != period / want) {
                ok = false;
                continue;
            }
            std::uint64_t gap = v.front() + period - v.back();  // wrap into the next period
            for (std::size_t t = 1; t < v.size(); ++t) gap = std::max(gap, v[t] - v[t - 1]);
            ok = ok && gap == want;
        }
    }
    return {ok, "k = 2..16, every child's maximum gap is exactly 2^j (2^(k-1) for j = k)"};
}

// 5. Oracle/naive equivalence on 100 random (instance, x) pairs, horizon 10^5.
Outcome criterion5() {
    std::mt19937_64 rng(5);
    const std::vector<Rational> xs{Rational(1), Rational(2), default_rf_threshold(), Rational(3, 2), Rational(1, 2),
                                   Rational(5, 2), Rational(7, 5)};
    bool ok = true;
    int pairs = 0;
    std::string first_fail;
    for (int it = 0; it < 100; ++it) {
        std::size_t n = 1 + rng() % 200;
        std::uint64_t seed = rng();
        Instance in = it % 4 == 3 ? Instance::canonicalize([&] {
            // Sum below 1.
            auto r = uniform_normalized(n, seed);
            for (auto& v : r) v = v * Rational(3, 4);
            return r;
        }())
                                  : random_sum_one(n, seed);
        Rational x = xs[rng() % xs.size()];
        auto e = equivalence_check(in, 100'000, x);
        if (!e.ok() && first_fail.empty())
            first_fail = "; first failure n=" + std::to_string(n) + " x=" + x.str() + " rf day " +
                         std::to_string(e.rf_divergence_day) + " rm day " + std::to_string(e.rm_divergence_day);
        ok = ok && e.ok();
        ++pairs;
    }
    return {ok, std::to_string(pairs) +
                    " pairs, n <= 200, horizon 10^5: Reduce-Fastest traces identical, Reduce-Max always trims a "
                    "tallest bamboo" + first_fail};
}

// 6. Differential tests of the two structures against linear scans.
Outcome criterion6() {
    bool ok = true;
    std::uint64_t pst_ops = 0, env_ops = 0;
    {
        std::mt19937_64 rng(61);
        const std::size_t cap = 1000;
        PrioritySearchTree t(cap);
        std::map<std::int64_t, std::int64_t> ref;  // y -> x
        for (int it = 0; it < 150000; ++it, ++pst_ops) {
            std::int64_t y = 1 + static_cast<std::int64_t>(rng() % cap);
            std::int64_t x = static_cast<std::int64_t>(rng() % 3000);
            switch (rng() % 4) {
                case 0:
                    if (!ref.count(y)) {
                        t.insert({x, y});
                        ref[y] = x;
                    }
                    break;
                case 1:
                    if (ref.count(y)) {
                        t.erase({ref[y], y});
                        ref.erase(y);
                    }
                    break;
                case 2: {
                    std::optional<std::int64_t> want;
                    for (auto [yy, xx] : ref)
                        if (xx <= x) {
                            want = yy;
                            break;
                        }
                    ok = ok && t.min_y_in_x_range(x) == want;
                    break;
                }
                default: {
                    auto it2 = ref.find(y);
                    ok = ok && t.get_x(y) == (it2 == ref.end() ? std::nullopt : std::optional<std::int64_t>(it2->second));
                }
            }
            ok = ok && t.size() == ref.size();
        }
    }
    {
        std::mt19937_64 rng(62);
        for (int config = 0; config < 3; ++config) {
            const int names = config == 0 ? 8 : config == 1 ? 60 : 300;
            const int coef = config == 0 ? 3 : config == 1 ? 30 : 100000;
            UpperEnvelope u;
            std::map<std::int64_t, Line> ref;
            auto c = [&](bool pos) {
                std::int64_t v = static_cast<std::int64_t>(rng() % (2 * coef + 1)) - coef;
                if (pos) v = 1 + static_cast<std::int64_t>(rng() % coef);
                return Rational(v, 1 + static_cast<std::int64_t>(rng() % 4));
            };
            for (int it = 0; it < 40000; ++it, ++env_ops) {
                std::int64_t name = 1 + static_cast<std::int64_t>(rng() % names);
                switch (rng() % 4) {
                    case 0:
                        if (!ref.count(name)) {
                            Line l{name, c(true), c(false)};
                            u.insert(l);
                            ref[name] = l;
                        }
                        break;
                    case 1:
                        ok = ok && u.erase_if_present(name) == (ref.erase(name) == 1);
                        break;
                    default: {
                        if (ref.empty()) break;
                        Rational d(static_cast<std::int64_t>(rng() % (8 * coef + 1)) - 4 * coef,
                                   1 + static_cast<std::int64_t>(rng() % 3));
                        Rational best;
                        bool first = true;
                        for (const auto& [nm, l] : ref) {
                            Rational v = l.at(d);
                            if (first || v > best) best = v;
                            first = false;
                        }
                        const Line& got = u.upper(d);
                        ok = ok && ref.count(got.name) && ref.at(got.name) == got && got.at(d) == best;
                    }
                }
                ok = ok && u.size() == ref.size();
            }
        }
    }
    return {ok, std::to_string(pst_ops) + " priority search tree ops and " + std::to_string(env_ops) +
                    " envelope ops agree with linear scans"};
}

// 7. Tree construction: phases, structure, quasi-linear build work.
Outcome criterion7() {
    bool ok = true;
    int trees = 0;
    double worst_ratio = 0;
    std::size_t max_phases = 0;
    std::vector<std::size_t> sizes{16, 64, 256, 1024, 4096, 16384, 65536};
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        double prev = 0;
        for (std::size_t n : sizes) {
            auto rates = round_rates(generate({"dyadic-random", {}}, n, seed * 7919 + n));
            OracleTree t = OracleTree::build(boost_rates(rates));
            std::size_t lg = static_cast<std::size_t>(std::bit_width(n)) - 1;
            ok = ok && t.check().empty() && t.phases() <= lg + 1 && t.height() <= lg + 1;
            max_phases = std::max(max_phases, t.phases());
            double w = static_cast<double>(t.build_work());
            if (prev > 0) worst_ratio = std::max(worst_ratio, w / prev);
            prev = w;
            ++trees;
        }
        auto rates = round_rates(generate({"dyadic-random", {}}, 100000, seed));
        OracleTree t = OracleTree::build(boost_rates(rates));
        ok = ok && t.check().empty() && t.phases() <= 17;
        ++trees;
    }
    // Boosted trees from non-dyadic instances as well.
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        MakespanTwoOracle o(generate({"uniform-normalized", {}}, 100000, seed));
        ok = ok && o.tree().check().empty() && o.tree().phases() <= 17;
        ++trees;
    }
    ok = ok && worst_ratio <= 5.0;
    return {ok, std::to_string(trees) + " trees up to n = 10^5: valid, phases <= floor(log2 n) + 1 (max seen " +
                    std::to_string(max_phases) + "), worst work(4n)/work(n) " + fmt(worst_ratio) + " <= 5"};
}

class Sequence final : public Scheduler {
public:
    explicit Sequence(std::vector<std::size_t> s) : s_(std::move(s)) {}
    TrimDecision decide(const GardenState&) override {
        std::size_t i = s_[pos_++ % s_.size()];
        return i ? TrimDecision::trim(i) : TrimDecision::nothing();
    }

private:
    std::vector<std::size_t> s_;
    std::size_t pos_ = 0;
};

// 8. Lower bounds: observed >= 1 eventually; two-bamboo near-2 behavior.
Outcome criterion8() {
    bool ok = true;
    std::vector<Instance> cases;
    for (std::size_t n : {1u, 2u, 5u, 30u, 200u})
        for (std::uint64_t seed = 1; seed <= 4; ++seed) cases.push_back(random_sum_one(n, 8000 * n + seed));
    cases.push_back(Instance::canonicalize(figure4()));
    cases.push_back(Instance::canonicalize(regular(8)));
    cases.push_back(Instance::canonicalize(two_bamboo(Rational::pow2(-10))));
    std::vector<Strategy> strategies{parse_strategy("reduce-max"), parse_strategy("naive-reduce-max"),
                                     parse_strategy("reduce-fastest"), parse_strategy("reduce-fastest", Rational(2)),
                                     parse_strategy("reduce-fastest", Rational(1)), parse_strategy("makespan2"),
                                     parse_strategy("naive-reduce-fastest", Rational(3, 2))};
    int runs = 0, doublings = 0;
    for (const Instance& in : cases) {
        for (const Strategy& s : strategies) {
            std::int64_t h = 10 * static_cast<std::int64_t>(in.size());
            SimulationReport r = simulate(s, in, SimulateOptions{h, false, {}});
            while (r.observed_makespan < Rational(1) && h < (std::int64_t{1} << 24)) {
                h *= 2;
                ++doublings;
                r = simulate(s, in, SimulateOptions{h, false, {}});
            }
            ok = ok && r.observed_makespan >= Rational(1);
            ++runs;
        }
    }

    // Two bamboos (1 - 2^-10, 2^-10): every schedule over {idle, b1, b2}^8
    // (repeated) that cuts b2 lets b1 reach 2 - 2^-9.
    Rational eps = Rational::pow2(-10);
    Instance tb = Instance::canonicalize(two_bamboo(eps));
    Rational target = Rational(2) - Rational(2) * eps;
    int schedules = 0;
    for (int code = 0; code < 6561; ++code) {
        std::vector<std::size_t> seq;
        int c = code;
        for (int k = 0; k < 8; ++k, c /= 3) seq.push_back(static_cast<std::size_t>(c % 3));
        if (std::find(seq.begin(), seq.end(), 2) == seq.end()) continue;
        Sequence s(seq);
        SimulationReport r = simulate(s, tb, SimulateOptions{16, false, {}});
        ok = ok && r.per_bamboo[0].max_height >= target;
        ++schedules;
    }
    for (const Strategy& s : strategies) {
        SimulationReport r = simulate(s, tb, SimulateOptions{4096, false, {}});
        if (r.per_bamboo[1].cuts > 0) ok = ok && r.per_bamboo[0].max_height >= target;
    }
    SimulationReport m2 = verify(tb, parse_strategy("makespan2"), 4096);
    ok = ok && m2.observed_makespan == target;
    return {ok, std::to_string(runs) + " (instance, strategy) runs reach makespan >= 1 (" + std::to_string(doublings) +
                    " horizon doublings); " + std::to_string(schedules) +
                    " schedules cutting b2 reach 2 - 2^-9; makespan2 observes exactly " + m2.observed_makespan.str()};
}

// 9. Instrumented work scaling.
Outcome criterion9() {
    bool ok = true;
    std::ostringstream os;
    for (const std::string s : {"pst", "envelope", "m2", "rf", "rm", "m2-build"}) {
        auto sizes = bench_default_sizes(s);
        auto rows = bench(s, sizes, 9);
        double worst = 0;
        for (const auto& r : rows) {
            ok = ok && r.pass;
            worst = std::max(worst, s == "m2" ? r.work_per_op / static_cast<double>(std::bit_width(r.n)) : r.ratio);
        }
        os << s << (s == "m2" ? " work/(log n + 1) " : " ratio ") << fmt(worst) << " (limit "
           << fmt(s == "m2" ? 3.0 : rows.back().limit) << "); ";
    }
    return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int a = 1; a < argc; ++a) {
        if (std::strcmp(argv[a], "--only") == 0 && a + 1 < argc) {
            std::stringstream ss(argv[++a]);
            std::string item;
            while (std::getline(ss, item, ',')) only.insert(std::stoi(item));
        } else {
            std::fprintf(stderr, "usage: acceptance [--only N[,M...]]\n");
            return 2;
        }
    }
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Reduce-Max makespan <= 9", criterion1},
        {"Reduce-Fastest makespan <= 19/6 and <= rf_bound(1809/1250) < 2.62 + 1e-3", criterion2},
        {"makespan-2 oracle <= 2 (original) and <= 1 (transformed)", criterion3},
        {"regular oracle exact gaps", criterion4},
        {"oracle / naive equivalence", criterion5},
        {"priority search tree and envelope differential tests", criterion6},
        {"tree construction phases, structure, build work", criterion7},
        {"lower-bound sanity", criterion8},
        {"complexity instrumentation", criterion9},
    };
    bool all = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        int id = static_cast<int>(k) + 1;
        if (!only.empty() && !only.count(id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %d: %s -- %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
