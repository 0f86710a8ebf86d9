#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bgt/rational.hpp"

namespace bgt {

// A canonicalized garden: rates sorted nonincreasing (stable w.r.t. the
// caller's order), every rate positive, total rate at most 1.
//
// Bamboo indices are 1-based everywhere in the public API, matching the
// "b_1 ... b_n" numbering; position 1 is the fastest bamboo.
class Instance {
public:
    static Instance canonicalize(std::span<const Rational> raw_rates);

    std::size_t size() const { return rates_.size(); }
    const Rational& rate(std::size_t i) const { return rates_.at(i - 1); }
    const std::vector<Rational>& rates() const { return rates_; }

    // Position (1-based) in the caller's input list of canonical bamboo i.
    std::size_t original_index(std::size_t i) const { return original_.at(i - 1); }
    const std::vector<std::size_t>& original_indices() const { return original_; }

    const Rational& total_rate() const { return total_; }
    bool sums_to_one() const { return sums_to_one_; }

    // Rates in the caller's original order.
    std::vector<Rational> input_order_rates() const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    std::vector<Rational> rates_;
    std::vector<std::size_t> original_;
    Rational total_;
    bool sums_to_one_ = false;
};

// Per-day oracle answer: trim canonical bamboo `index` (1..n), or do nothing.
struct TrimDecision {
    static constexpr std::size_t kNone = 0;

    std::size_t index = kNone;

    static TrimDecision trim(std::size_t i) { return TrimDecision{i}; }
    static TrimDecision nothing() { return TrimDecision{}; }

    bool is_trim() const { return index != kNone; }
    friend bool operator==(TrimDecision, TrimDecision) = default;
};

std::string to_string(TrimDecision d);

// Day on which a never-cut bamboo was "last cut"; days are 0-based.
inline constexpr std::int64_t kNeverCut = -1;

// Height at the end of `day`, before any trim on that day, of a bamboo with
// the given rate last cut at the end of `last_cut_day`: (day - last) * rate.
Rational height(const Rational& rate, std::int64_t last_cut_day, std::int64_t day);

}  // namespace bgt
