#include "bgt/sim.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bgt/m2_oracle.hpp"
#include "bgt/rf_oracle.hpp"
#include "bgt/rm_oracle.hpp"

namespace bgt {

std::string Strategy::id() const {
    switch (kind) {
        case StrategyKind::ReduceMax: return "reduce-max";
        case StrategyKind::ReduceFastest: return "reduce-fastest";
        case StrategyKind::MakespanTwo: return "makespan2";
        case StrategyKind::NaiveReduceMax: return "naive-reduce-max";
        case StrategyKind::NaiveReduceFastest: return "naive-reduce-fastest";
    }
    return "?";
}

bool Strategy::uses_threshold() const {
    return kind == StrategyKind::ReduceFastest || kind == StrategyKind::NaiveReduceFastest;
}

Rational default_rf_threshold() { return Rational(1809, 1250); }

Strategy parse_strategy(std::string_view id, std::optional<Rational> x) {
    Strategy s;
    if (id == "reduce-max") {
        s.kind = StrategyKind::ReduceMax;
    } else if (id == "reduce-fastest") {
        s.kind = StrategyKind::ReduceFastest;
    } else if (id == "makespan2") {
        s.kind = StrategyKind::MakespanTwo;
    } else if (id == "naive-reduce-max") {
        s.kind = StrategyKind::NaiveReduceMax;
    } else if (id == "naive-reduce-fastest") {
        s.kind = StrategyKind::NaiveReduceFastest;
    } else {
        throw std::invalid_argument("unknown strategy '" + std::string(id) + "'");
    }
    if (s.uses_threshold()) {
        s.x = x ? *x : default_rf_threshold();
        if (s.x.sign() <= 0) throw std::invalid_argument("threshold x must be positive, got " + s.x.str());
    }
    return s;
}

std::optional<Rational> theoretical_bound(const Strategy& s) {
    switch (s.kind) {
        case StrategyKind::ReduceMax:
        case StrategyKind::NaiveReduceMax: return Rational(9);
        case StrategyKind::ReduceFastest:
        case StrategyKind::NaiveReduceFastest:
            if (s.x > Rational(1)) return rf_bound(s.x);
            return std::nullopt;
        case StrategyKind::MakespanTwo: return Rational(2);
    }
    return std::nullopt;
}

namespace {

constexpr std::int64_t kScaleLimit = std::int64_t{1} << 62;

}  // namespace

GardenState::GardenState(const Instance& instance)
    : instance_(&instance), last_cut_(instance.size(), kNeverCut) {
    __int128 l = 1;
    for (const Rational& h : instance.rates()) {
        if (!h.is_small()) {
            l = 0;
            break;
        }
        std::int64_t d = h.small_den();
        __int128 g = std::gcd(static_cast<std::int64_t>(l), d);
        l = l / g * d;
        if (l >= kScaleLimit) {
            l = 0;
            break;
        }
    }
    scale_ = static_cast<std::int64_t>(l);
    if (scale_ != 0) {
        scaled_rate_.reserve(size());
        for (const Rational& h : instance.rates()) scaled_rate_.push_back(h.small_num() * (scale_ / h.small_den()));
    }
}

Rational GardenState::height(std::size_t i) const { return bgt::height(instance_->rate(i), last_cut(i), day_); }

__int128 GardenState::scaled_height(std::size_t i) const {
    if (scale_ == 0) throw std::logic_error("garden: heights are not integer-scaled");
    return static_cast<__int128>(day_ - last_cut_.at(i - 1)) * scaled_rate_[i - 1];
}

std::size_t GardenState::tallest() const {
    const std::size_t n = size();
    std::size_t best = 1;
    if (scale_ != 0) {
        __int128 bv = static_cast<__int128>(day_ - last_cut_[0]) * scaled_rate_[0];
        for (std::size_t i = 1; i < n; ++i) {
            __int128 v = static_cast<__int128>(day_ - last_cut_[i]) * scaled_rate_[i];
            if (v > bv) {
                bv = v;
                best = i + 1;
            }
        }
        return best;
    }
    Rational bv = height(1);
    for (std::size_t i = 2; i <= n; ++i) {
        Rational v = height(i);
        if (v > bv) {
            bv = std::move(v);
            best = i;
        }
    }
    return best;
}

Rational GardenState::max_height() const { return height(tallest()); }

std::size_t GardenState::first_at_least(const Rational& x) const {
    const std::size_t n = size();
    if (scale_ != 0) {
        if (!cached_x_ || *cached_x_ != x) {
            cached_x_ = x;
            // Integer heights: v >= x * L  <=>  v >= ceil(x * L).
            Rational t = x * Rational(scale_);
            cached_fits_ = t <= Rational(kScaleLimit);
            cached_threshold_ = cached_fits_ ? ceil_int(t) : 0;
        }
        if (cached_fits_) {
            for (std::size_t i = 0; i < n; ++i)
                if (static_cast<__int128>(day_ - last_cut_[i]) * scaled_rate_[i] >= cached_threshold_) return i + 1;
            return 0;
        }
    }
    for (std::size_t i = 1; i <= n; ++i)
        if (height(i) >= x) return i;
    return 0;
}

void GardenState::cut(std::size_t i) {
    if (i < 1 || i > size())
        throw std::out_of_range("garden: bamboo " + std::to_string(i) + " outside 1.." + std::to_string(size()));
    last_cut_[i - 1] = day_;
}

namespace {

template <class Oracle>
class OracleScheduler final : public Scheduler {
public:
    template <class... Args>
    explicit OracleScheduler(Args&&... args) : oracle_(std::forward<Args>(args)...) {}
    TrimDecision decide(const GardenState&) override { return oracle_.query(); }
    std::uint64_t work() const override { return oracle_.work(); }

private:
    Oracle oracle_;
};

class NaiveReduceMax final : public Scheduler {
public:
    TrimDecision decide(const GardenState& g) override { return TrimDecision::trim(g.tallest()); }
};

class NaiveReduceFastest final : public Scheduler {
public:
    explicit NaiveReduceFastest(Rational x) : x_(std::move(x)) {}
    TrimDecision decide(const GardenState& g) override {
        std::size_t i = g.first_at_least(x_);
        return i ? TrimDecision::trim(i) : TrimDecision::nothing();
    }

private:
    Rational x_;
};

}  // namespace

std::unique_ptr<Scheduler> make_scheduler(const Strategy& s, const Instance& instance) {
    switch (s.kind) {
        case StrategyKind::ReduceMax: return std::make_unique<OracleScheduler<RMOracle>>(instance);
        case StrategyKind::ReduceFastest: return std::make_unique<OracleScheduler<RFOracle>>(instance, s.x);
        case StrategyKind::MakespanTwo: return std::make_unique<OracleScheduler<MakespanTwoOracle>>(instance);
        case StrategyKind::NaiveReduceMax: return std::make_unique<NaiveReduceMax>();
        case StrategyKind::NaiveReduceFastest: return std::make_unique<NaiveReduceFastest>(s.x);
    }
    throw std::invalid_argument("unknown strategy");
}

SimulationReport simulate(Scheduler& scheduler, const Instance& growth, const SimulateOptions& options) {
    if (options.horizon < 1) throw std::invalid_argument("simulate: horizon must be at least 1");
    const std::size_t n = growth.size();
    const std::int64_t horizon = options.horizon;
    GardenState g(growth);

    // Per bamboo: longest stretch so far (heights grow linearly, so that is
    // also the tallest), the day it first ended, and the cut statistics.
    std::vector<std::int64_t> max_len(n, 0), max_len_day(n, -1), max_gap(n, 0), cuts(n, 0);

    constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> violate_after;  // smallest stretch length exceeding the bound
    std::int64_t viol_day = -1;
    std::size_t viol_bamboo = 0;
    if (options.check_bound) {
        violate_after.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational q = *options.check_bound / growth.rate(i + 1);
            violate_after[i] = q < Rational(kNever) ? floor_int(q) + 1 : kNever;
        }
    }
    auto close_stretch = [&](std::size_t i, std::int64_t end_day, bool is_cut) {
        std::int64_t last = g.last_cut(i + 1);
        std::int64_t len = end_day - last;
        if (len > max_len[i]) {
            max_len[i] = len;
            max_len_day[i] = end_day;
        }
        if (is_cut) {
            ++cuts[i];
            max_gap[i] = std::max(max_gap[i], len);
        }
        if (!violate_after.empty() && violate_after[i] <= len) {
            std::int64_t d = last + violate_after[i];
            if (viol_day < 0 || d < viol_day || (d == viol_day && i + 1 < viol_bamboo)) {
                viol_day = d;
                viol_bamboo = i + 1;
            }
        }
    };

    SimulationReport r;
    r.horizon = horizon;
    r.n = n;
    r.sum_is_one = growth.sums_to_one();
    if (options.trace) r.trace.reserve(static_cast<std::size_t>(horizon));
    Rational running(0);

    for (std::int64_t d = 0; d < horizon; ++d) {
        TrimDecision t = scheduler.decide(g);
        if (t.is_trim() && (t.index < 1 || t.index > n))
            throw std::out_of_range("simulate: scheduler chose bamboo " + std::to_string(t.index) + " on day " +
                                    std::to_string(d) + ", outside 1.." + std::to_string(n));
        if (options.trace) {
            Rational mx = g.max_height();
            if (mx > running) running = mx;
            r.trace.push_back(TraceRow{d, t, t.is_trim() ? g.height(t.index) : Rational(0), running});
        }
        if (t.is_trim()) {
            close_stretch(t.index - 1, d, true);
            g.cut(t.index);
        } else {
            ++r.idle_days;
        }
        g.next_day();
    }
    for (std::size_t i = 0; i < n; ++i) close_stretch(i, horizon - 1, false);

    r.per_bamboo.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        BambooStats& b = r.per_bamboo[i];
        b.max_height = growth.rate(i + 1) * Rational(max_len[i]);
        b.max_cut_gap = max_gap[i];
        b.cuts = cuts[i];
        if (b.max_height > r.observed_makespan ||
            (b.max_height == r.observed_makespan && max_len_day[i] < r.makespan_day)) {
            r.observed_makespan = b.max_height;
            r.makespan_day = max_len_day[i];
            r.makespan_bamboo = i + 1;
        }
    }
    if (options.check_bound) {
        BoundCheck bc;
        bc.bound = *options.check_bound;
        bc.holds = viol_day < 0;
        bc.first_violation_day = viol_day;
        bc.violating_bamboo = viol_bamboo;
        if (viol_bamboo) bc.violating_height = growth.rate(viol_bamboo) * Rational(violate_after[viol_bamboo - 1]);
        r.bound = bc;
    }
    r.scheduler_work = scheduler.work();
    return r;
}

SimulationReport simulate(const Strategy& s, const Instance& instance, const SimulateOptions& options) {
    auto sched = make_scheduler(s, instance);
    SimulationReport r = simulate(*sched, instance, options);
    r.strategy = s.id();
    if (s.uses_threshold()) r.x = s.x;
    return r;
}

SimulationReport verify(const Instance& instance, const Strategy& s, std::int64_t horizon, bool trace) {
    std::optional<Rational> bound = theoretical_bound(s);
    SimulationReport r = simulate(s, instance, SimulateOptions{horizon, trace, bound});
    if (r.bound) {
        // Reduce-Max and Reduce-Fastest are only guaranteed on sum-one
        // instances; the makespan-2 argument only needs sum <= 1.
        r.bound->applicable = s.kind == StrategyKind::MakespanTwo || instance.sums_to_one();
        if (!r.bound->applicable) r.bound->holds = true;
    }
    if (s.kind == StrategyKind::MakespanTwo) {
        std::vector<Rational> boosted;
        for (const DyadicRate& e : boost_rates(round_rates(instance))) boosted.push_back(e.value());
        Instance transformed = Instance::canonicalize(boosted);
        auto sched = make_scheduler(s, instance);
        SimulationReport t = simulate(*sched, transformed, SimulateOptions{horizon, false, Rational(1)});
        r.transformed_makespan = t.observed_makespan;
        r.transformed_bound = t.bound;
    }
    return r;
}

std::int64_t default_horizon(const Strategy& s, const Instance& instance) {
    const std::int64_t n = static_cast<std::int64_t>(instance.size());
    if (s.kind == StrategyKind::MakespanTwo) {
        std::int64_t e = -floor_log2(instance.rate(instance.size()));
        return e + 2 >= 24 ? 10'000'000 : std::min<std::int64_t>(10'000'000, std::int64_t{1} << (e + 2));
    }
    return std::max<std::int64_t>(10'000, 20 * n);
}

namespace {

bool is_tallest(const GardenState& g, std::size_t i) {
    std::size_t t = g.tallest();
    if (g.integer_heights()) return g.scaled_height(i) == g.scaled_height(t);
    return g.height(i) == g.height(t);
}

}  // namespace

EquivalenceReport equivalence_check(const Instance& instance, std::int64_t horizon, const Rational& x) {
    if (horizon < 1) throw std::invalid_argument("equivalence_check: horizon must be at least 1");
    EquivalenceReport rep;
    rep.horizon = horizon;
    rep.x = x;

    RFOracle rf(instance, x);
    NaiveReduceFastest naive(x);
    GardenState grf(instance);
    for (std::int64_t d = 0; d < horizon; ++d) {
        TrimDecision a = rf.query();
        TrimDecision b = naive.decide(grf);
        if (a != b) {
            rep.rf_equal = false;
            rep.rf_divergence_day = d;
            rep.rf_oracle_decision = a;
            rep.rf_naive_decision = b;
            break;
        }
        if (b.is_trim()) grf.cut(b.index);
        grf.next_day();
    }

    RMOracle rm(instance);
    GardenState grm(instance);
    for (std::int64_t d = 0; d < horizon; ++d) {
        TrimDecision t = rm.query();
        if (!t.is_trim() || t.index > instance.size() || !is_tallest(grm, t.index)) {
            rep.rm_equal = false;
            rep.rm_divergence_day = d;
            rep.rm_trimmed_height = t.is_trim() && t.index <= instance.size() ? grm.height(t.index) : Rational(0);
            rep.rm_max_height = grm.max_height();
            break;
        }
        grm.cut(t.index);
        grm.next_day();
    }
    return rep;
}

}  // namespace bgt
