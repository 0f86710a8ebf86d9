#include "bgt/rm_oracle.hpp"

#include <stdexcept>
#include <utility>

namespace bgt {

namespace {

// Least common denominator of the rates if scaled intercepts up to
// 9 + (n + 10) h_1 stay below 2^61; otherwise 1.
Rational choose_scale(const Instance& inst) {
    mpz_class l = 1;
    for (const Rational& h : inst.rates()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), h.to_mpq().get_den_mpz_t());
    mpz_class top = mpz_class(inst.rate(1).to_mpq() * l) * (static_cast<unsigned long>(inst.size()) + 10) + 9 * l;
    if (mpz_sizeinbase(top.get_mpz_t(), 2) >= 61) return Rational(1);
    return Rational(mpq_class(l));
}

}  // namespace

RMOracle::RMOracle(Instance instance)
    : instance_(std::move(instance)), n_(static_cast<std::int64_t>(instance_.size())), scale_(choose_scale(instance_)) {
    slope_.reserve(instance_.size());
    for (const Rational& h : instance_.rates()) slope_.push_back(h * scale_);
}

void RMOracle::reset_work() {
    u1_.reset_work();
    u2_.reset_work();
}

void RMOracle::update(UpperEnvelope& u, std::int64_t i, Rational c) {
    const Rational& h = slope_[static_cast<std::size_t>(i - 1)];
    Rational magnitude = c.sign() < 0 ? -c : c;
    if (magnitude > Rational(9) * scale_ + Rational(n_) * h) ++violations_;
    u.erase_if_present(i);
    u.insert(Line{i, h, std::move(c)});
}

TrimDecision RMOracle::query() {
    std::int64_t b = delta_ + 1;
    const Rational& hb = slope_[static_cast<std::size_t>(b - 1)];
    if (!u1_.lookup(b)) u1_.insert(Line{b, hb, hb});

    // Tallest bamboo today.
    std::int64_t i = u1_.upper(delta_).name;
    const Rational& hi = slope_[static_cast<std::size_t>(i - 1)];
    update(u1_, i, -(Rational(delta_) * hi));
    update(u2_, i, Rational(n_ - delta_) * hi);

    // Re-base bamboo delta+1 onto the next interval.
    Rational cb = u1_.lookup(b)->intercept;
    update(u2_, b, Rational(n_) * hb + cb);

    delta_ = (delta_ + 1) % n_;
    if (delta_ == 0) {
        std::swap(u1_, u2_);
        first_interval_ = false;
    }
    return TrimDecision::trim(static_cast<std::size_t>(i));
}

TrimDecision naive_reduce_max_step(std::span<const Rational> heights) {
    if (heights.empty()) throw std::invalid_argument("naive_reduce_max_step: empty garden");
    std::size_t best = 0;
    for (std::size_t i = 1; i < heights.size(); ++i)
        if (heights[i] > heights[best]) best = i;
    return TrimDecision::trim(best + 1);
}

}  // namespace bgt
