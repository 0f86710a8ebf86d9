#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "bgt/instance.hpp"
#include "bgt/pst.hpp"
#include "bgt/rational.hpp"

namespace bgt {

// Trimming oracle for Reduce-Fastest(x).
//
// Days are split into intervals of n days. The tree `current` holds, for every
// bamboo i, the point (delta_i, i) where delta_i is the day (relative to the
// current interval's start, clamped at 0) on which bamboo i is next at least
// x tall; `next` holds the same information relative to the next interval for
// bamboos 1..delta+1. The trees are swapped when the interval ends, so every
// coordinate stays within n + ceil(x / h_n).
class RFOracle {
public:
    // Throws std::invalid_argument when x <= 0.
    RFOracle(Instance instance, Rational x);

    TrimDecision query();

    const Instance& instance() const { return instance_; }
    const Rational& threshold() const { return x_; }
    std::int64_t delta() const { return delta_; }
    const PrioritySearchTree& current() const { return *t1_; }
    const PrioritySearchTree& next() const { return *t2_; }
    // ceil(x / h_i) for canonical bamboo i.
    std::int64_t wait_days(std::size_t i) const { return wait_.at(i - 1); }
    std::int64_t coordinate_cap() const { return cap_; }

    std::uint64_t work() const { return t1_->work() + t2_->work(); }
    void reset_work();

private:
    static void update(PrioritySearchTree& t, std::int64_t delta_i, std::int64_t i);

    Instance instance_;
    Rational x_;
    std::int64_t n_;
    std::int64_t cap_;
    std::vector<std::int64_t> wait_;
    std::int64_t delta_ = 0;
    std::unique_ptr<PrioritySearchTree> t1_;
    std::unique_ptr<PrioritySearchTree> t2_;
};

// Naive Reduce-Fastest(x): the smallest index whose height is at least x.
TrimDecision naive_reduce_fastest_step(std::span<const Rational> heights, const Rational& x);

// max{x + x^2/(4(x-1)), 1/2 + x + x^2/(4(x-1/2))}; throws for x <= 1.
Rational rf_bound(const Rational& x);
double rf_bound(double x);

}  // namespace bgt
