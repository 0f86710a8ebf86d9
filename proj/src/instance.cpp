#include "bgt/instance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bgt {

Instance Instance::canonicalize(std::span<const Rational> raw_rates) {
    if (raw_rates.empty()) throw std::invalid_argument("instance: no bamboos");
    Rational total;
    for (std::size_t i = 0; i < raw_rates.size(); ++i) {
        if (raw_rates[i].sign() <= 0)
            throw std::invalid_argument("instance: rate " + std::to_string(i + 1) + " is not positive (" +
                                        raw_rates[i].str() + ")");
        total += raw_rates[i];
    }
    if (total > Rational(1)) throw std::invalid_argument("instance: rates sum to " + total.str() + " > 1");

    std::vector<std::size_t> order(raw_rates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return raw_rates[a] > raw_rates[b]; });

    Instance inst;
    inst.rates_.reserve(order.size());
    inst.original_.reserve(order.size());
    for (std::size_t pos : order) {
        inst.rates_.push_back(raw_rates[pos]);
        inst.original_.push_back(pos + 1);
    }
    inst.total_ = std::move(total);
    inst.sums_to_one_ = inst.total_ == Rational(1);
    return inst;
}

std::vector<Rational> Instance::input_order_rates() const {
    std::vector<Rational> out(rates_.size());
    for (std::size_t i = 0; i < rates_.size(); ++i) out[original_[i] - 1] = rates_[i];
    return out;
}

std::string to_string(TrimDecision d) {
    return d.is_trim() ? "trim " + std::to_string(d.index) : "nothing";
}

Rational height(const Rational& rate, std::int64_t last_cut_day, std::int64_t day) {
    if (day < last_cut_day)
        throw std::invalid_argument("height: day " + std::to_string(day) + " precedes last cut day " +
                                    std::to_string(last_cut_day));
    return rate * Rational(day - last_cut_day);
}

}  // namespace bgt
