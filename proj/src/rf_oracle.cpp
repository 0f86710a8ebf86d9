#include "bgt/rf_oracle.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace bgt {

RFOracle::RFOracle(Instance instance, Rational x)
    : instance_(std::move(instance)), x_(std::move(x)), n_(static_cast<std::int64_t>(instance_.size())) {
    if (x_.sign() <= 0) throw std::invalid_argument("rf_oracle: threshold x must be positive, got " + x_.str());
    wait_.reserve(instance_.size());
    for (const Rational& h : instance_.rates()) wait_.push_back(ceil_int(x_ / h));
    cap_ = n_ + wait_.back();  // the slowest bamboo waits longest

    auto n = static_cast<std::size_t>(n_);
    t1_ = std::make_unique<PrioritySearchTree>(n, cap_);
    t2_ = std::make_unique<PrioritySearchTree>(n, cap_);
    for (std::int64_t i = 1; i <= n_; ++i) t1_->insert(Point{wait_[i - 1] - 1, i});
}

void RFOracle::reset_work() {
    t1_->reset_work();
    t2_->reset_work();
}

void RFOracle::update(PrioritySearchTree& t, std::int64_t delta_i, std::int64_t i) {
    if (auto old = t.get_x(i)) t.erase(Point{*old, i});
    t.insert(Point{std::max<std::int64_t>(0, delta_i), i});
}

TrimDecision RFOracle::query() {
    // Fastest bamboo that reached height x by day delta.
    auto i = t1_->min_y_in_x_range(delta_);
    if (i) {
        std::int64_t w = wait_[*i - 1];
        update(*t1_, delta_ + w, *i);
        update(*t2_, delta_ + w - n_, *i);
    }

    // Bamboo delta+1 is now current in the next interval's tree.
    std::int64_t b = delta_ + 1;
    update(*t2_, *t1_->get_x(b) - n_, b);

    delta_ = (delta_ + 1) % n_;
    if (delta_ == 0) std::swap(t1_, t2_);

    return i ? TrimDecision::trim(static_cast<std::size_t>(*i)) : TrimDecision::nothing();
}

TrimDecision naive_reduce_fastest_step(std::span<const Rational> heights, const Rational& x) {
    for (std::size_t i = 0; i < heights.size(); ++i)
        if (heights[i] >= x) return TrimDecision::trim(i + 1);
    return TrimDecision::nothing();
}

Rational rf_bound(const Rational& x) {
    if (x <= Rational(1)) throw std::domain_error("rf_bound: requires x > 1, got " + x.str());
    Rational half(1, 2);
    Rational a = x + x * x / (Rational(4) * (x - Rational(1)));
    Rational b = half + x + x * x / (Rational(4) * (x - half));
    return std::max(a, b);
}

double rf_bound(double x) {
    if (!(x > 1.0)) throw std::domain_error("rf_bound: requires x > 1");
    double a = x + x * x / (4.0 * (x - 1.0));
    double b = 0.5 + x + x * x / (4.0 * (x - 0.5));
    return std::max(a, b);
}

}  // namespace bgt
