#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bgt/instance.hpp"
#include "bgt/rational.hpp"

namespace bgt {

enum class StrategyKind { ReduceMax, ReduceFastest, MakespanTwo, NaiveReduceMax, NaiveReduceFastest };

struct Strategy {
    StrategyKind kind = StrategyKind::ReduceMax;
    Rational x;  // threshold, used by the Reduce-Fastest variants only

    // "reduce-max", "reduce-fastest", "makespan2", "naive-reduce-max", "naive-reduce-fastest".
    std::string id() const;
    bool uses_threshold() const;
};

// Rational stand-in for the optimal irrational threshold 1 + 1/sqrt(5).
Rational default_rf_threshold();

// Throws std::invalid_argument for an unknown id or a non-positive x.
// A Reduce-Fastest strategy without x gets default_rf_threshold().
Strategy parse_strategy(std::string_view id, std::optional<Rational> x = std::nullopt);

// Makespan guarantee for sum-one instances: 9, rf_bound(x) when x > 1, 2.
std::optional<Rational> theoretical_bound(const Strategy& s);

// Heights of a garden at the end of day(), before that day's cut.
//
// When every rate's denominator divides a common int64 denominator L, heights
// are also available as exact integers (height * L) in 128 bits; the scans
// below use them and fall back to Rational arithmetic otherwise.
class GardenState {
public:
    explicit GardenState(const Instance& instance);

    const Instance& instance() const { return *instance_; }
    std::size_t size() const { return last_cut_.size(); }
    std::int64_t day() const { return day_; }
    std::int64_t last_cut(std::size_t i) const { return last_cut_.at(i - 1); }
    Rational height(std::size_t i) const;

    bool integer_heights() const { return scale_ != 0; }
    std::int64_t scale() const { return scale_; }
    __int128 scaled_height(std::size_t i) const;

    // Tallest bamboo, ties to the smallest index.
    std::size_t tallest() const;
    Rational max_height() const;
    // Smallest index whose height is at least x, or 0.
    std::size_t first_at_least(const Rational& x) const;

    // Cut bamboo i today. Throws std::out_of_range for i outside 1..n.
    void cut(std::size_t i);
    void next_day() { ++day_; }

private:
    const Instance* instance_;
    std::vector<std::int64_t> last_cut_;
    std::int64_t day_ = 0;
    std::int64_t scale_ = 0;
    std::vector<std::int64_t> scaled_rate_;
    mutable std::optional<Rational> cached_x_;
    mutable bool cached_fits_ = false;
    mutable __int128 cached_threshold_ = 0;
};

// Produces one trim decision per day. Oracles ignore the state; naive
// strategies read heights from it.
class Scheduler {
public:
    virtual ~Scheduler() = default;
    virtual TrimDecision decide(const GardenState& state) = 0;
    virtual std::uint64_t work() const { return 0; }
};

std::unique_ptr<Scheduler> make_scheduler(const Strategy& s, const Instance& instance);

struct TraceRow {
    std::int64_t day = 0;
    TrimDecision decision;
    Rational height_before_cut;  // zero on idle days
    Rational running_makespan;
};

struct BambooStats {
    Rational max_height;
    std::int64_t max_cut_gap = 0;  // longest growth stretch ended by a cut, in days
    std::int64_t cuts = 0;
};

struct BoundCheck {
    Rational bound;
    // False when the instance does not sum to 1; no bound is claimed then.
    bool applicable = true;
    bool holds = true;
    std::int64_t first_violation_day = -1;
    std::size_t violating_bamboo = 0;
    Rational violating_height;
};

struct SimulationReport {
    std::string strategy;
    std::optional<Rational> x;
    std::int64_t horizon = 0;
    std::size_t n = 0;
    bool sum_is_one = false;
    Rational observed_makespan;
    std::int64_t makespan_day = -1;  // first day the maximum was observed
    std::size_t makespan_bamboo = 0;
    std::int64_t idle_days = 0;
    std::vector<BambooStats> per_bamboo;
    std::vector<TraceRow> trace;
    std::optional<BoundCheck> bound;
    // Observed makespan against the boosted power-of-1/2 rates (makespan2 only).
    std::optional<Rational> transformed_makespan;
    std::optional<BoundCheck> transformed_bound;
    std::uint64_t scheduler_work = 0;
};

struct SimulateOptions {
    std::int64_t horizon = 10000;
    bool trace = false;
    // Also locate the first day a height exceeds this value.
    std::optional<Rational> check_bound;
};

// Runs `scheduler` for horizon days on a garden growing at `growth` rates.
// The observed makespan is tracked per growth stretch: a bamboo's height is
// largest on the day it is cut, or on the last day for the final stretch.
// Throws std::out_of_range when the scheduler names a bamboo outside 1..n.
SimulationReport simulate(Scheduler& scheduler, const Instance& growth, const SimulateOptions& options);
SimulationReport simulate(const Strategy& s, const Instance& instance, const SimulateOptions& options);

// simulate() plus the strategy's bound. For makespan2 the schedule is also
// replayed against the transformed rates and checked against 1.
SimulationReport verify(const Instance& instance, const Strategy& s, std::int64_t horizon, bool trace = false);

// Default horizons: max(10^4, 20n); for makespan2 4 / h'_n capped at 10^7.
std::int64_t default_horizon(const Strategy& s, const Instance& instance);

struct EquivalenceReport {
    std::int64_t horizon = 0;
    Rational x;
    bool rf_equal = true;
    std::int64_t rf_divergence_day = -1;
    TrimDecision rf_oracle_decision;
    TrimDecision rf_naive_decision;
    bool rm_equal = true;
    std::int64_t rm_divergence_day = -1;
    Rational rm_trimmed_height;
    Rational rm_max_height;

    bool ok() const { return rf_equal && rm_equal; }
};

// (a) Reduce-Fastest(x) oracle trace equals the naive trace index by index;
// (b) every bamboo the Reduce-Max oracle trims is a tallest one that day.
EquivalenceReport equivalence_check(const Instance& instance, std::int64_t horizon, const Rational& x);

}  // namespace bgt
