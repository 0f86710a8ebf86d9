#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bgt/envelope.hpp"
#include "bgt/instance.hpp"

namespace bgt {

// Trimming oracle for Reduce-Max.
//
// Bamboo i is the line d -> h_i d + c_i whose value at the day offset within
// the current interval is its current height. `current` answers today's
// query; `next` accumulates the lines re-based to the following interval and
// replaces `current` when the interval ends. During the first interval line
// delta+1 is inserted lazily on day delta.
//
// Stored lines are multiplied by line_scale(), the least common denominator
// of the rates when that keeps every coefficient a small integer (so the
// envelope runs on its integer fast path), and 1 otherwise.
class RMOracle {
public:
    explicit RMOracle(Instance instance);

    // Always trims.
    TrimDecision query();

    const Instance& instance() const { return instance_; }
    std::int64_t delta() const { return delta_; }
    bool in_first_interval() const { return first_interval_; }
    const UpperEnvelope& current() const { return u1_; }
    const UpperEnvelope& next() const { return u2_; }
    const Rational& line_scale() const { return scale_; }

    // Number of intercepts written so far with |c_i| > 9 + n h_i.
    std::uint64_t intercept_bound_violations() const { return violations_; }

    std::uint64_t work() const { return u1_.work() + u2_.work(); }
    void reset_work();

private:
    void update(UpperEnvelope& u, std::int64_t i, Rational c);

    Instance instance_;
    std::int64_t n_;
    Rational scale_;
    std::vector<Rational> slope_;  // h_i * scale
    std::int64_t delta_ = 0;
    bool first_interval_ = true;
    UpperEnvelope u1_;
    UpperEnvelope u2_;
    std::uint64_t violations_ = 0;
};

// Naive Reduce-Max: the tallest bamboo, ties to the smallest index.
TrimDecision naive_reduce_max_step(std::span<const Rational> heights);

}  // namespace bgt
