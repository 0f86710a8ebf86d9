#include "bgt/m2_oracle.hpp"

#include <algorithm>
#include <bit>
#include <list>
#include <stdexcept>
#include <utility>

namespace bgt {

std::vector<DyadicRate> round_rates(std::span<const Rational> rates) {
    std::vector<DyadicRate> out;
    out.reserve(rates.size());
    for (const Rational& h : rates) {
        if (h.sign() <= 0 || h > Rational(1))
            throw std::domain_error("round_rates: rate " + h.str() + " is outside (0, 1]");
        out.push_back(DyadicRate{-floor_log2(h)});
    }
    return out;
}

std::vector<DyadicRate> round_rates(const Instance& instance) { return round_rates(instance.rates()); }

std::vector<DyadicRate> boost_rates(std::span<const DyadicRate> rounded) {
    std::vector<DyadicRate> out(rounded.begin(), rounded.end());
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].exponent < out[i - 1].exponent)
            throw std::invalid_argument("boost_rates: rates must be nonincreasing");
    Rational total(0);
    for (const DyadicRate& r : out) total += r.value();
    if (total > Rational(1)) throw std::invalid_argument("boost_rates: rates sum to " + total.str() + " > 1");

    for (DyadicRate& r : out) {
        Rational old = r.value();
        Rational slack = Rational(1) - (total - old);
        r.exponent = -floor_log2(slack);
        total += r.value() - old;
    }
    // Each boosted rate stays at most its predecessor, so the order survives;
    // the stable sort only guards that claim.
    std::stable_sort(out.begin(), out.end(),
                     [](DyadicRate a, DyadicRate b) { return a.exponent < b.exponent; });
    if (total != Rational(1)) throw std::logic_error("boost_rates: boosted total is " + total.str());
    return out;
}

RegularOracle::RegularOracle(std::size_t k) : k_(k), bits_(k > 1 ? (k - 2) / 64 + 1 : 0, 0) {}

std::size_t RegularOracle::query() {
    if (k_ <= 1) {
        ++work_;
        return 1;
    }
    const std::size_t nbits = k_ - 1;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        ++work_;
        std::size_t width = std::min<std::size_t>(64, nbits - 64 * w);
        std::uint64_t valid = width == 64 ? ~0ULL : ((1ULL << width) - 1);
        std::uint64_t zeros = ~bits_[w] & valid;
        if (zeros == 0) {
            bits_[w] = 0;  // carry propagates into the next word
            continue;
        }
        int j = std::countr_zero(zeros);
        // Incrementing flips the least significant 0 to 1 and clears the 1s below it.
        bits_[w] = (bits_[w] | (1ULL << j)) & ~((1ULL << j) - 1);
        return 64 * w + static_cast<std::size_t>(j) + 1;
    }
    return k_;  // all k-1 bits were 1; the counter wrapped to 0
}

namespace {

struct Bucket {
    std::int64_t exponent;
    std::vector<std::size_t> items;  // node ids, oldest first
    std::size_t head = 0;

    std::size_t count() const { return items.size() - head; }
};

}  // namespace

OracleTree OracleTree::build(std::span<const DyadicRate> transformed) {
    if (transformed.empty()) throw std::invalid_argument("build_tree: no bamboos");
    Rational total(0);
    for (std::size_t i = 0; i < transformed.size(); ++i) {
        if (transformed[i].exponent < 0)
            throw std::invalid_argument("build_tree: rate 2^" + std::to_string(-transformed[i].exponent) + " exceeds 1");
        if (i > 0 && transformed[i].exponent < transformed[i - 1].exponent)
            throw std::invalid_argument("build_tree: rates must be nonincreasing");
        total += transformed[i].value();
    }
    if (total != Rational(1)) throw std::invalid_argument("build_tree: rates sum to " + total.str() + ", not 1");

    OracleTree t;
    const std::size_t n = transformed.size();
    t.leaf_count_ = n;
    t.nodes_.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        Node leaf;
        leaf.exponent = transformed[i].exponent;
        leaf.leaf = i + 1;
        t.nodes_.push_back(std::move(leaf));
    }
    if (n == 1) {
        Node root;
        root.exponent = 0;
        root.children = {0};
        root.oracle = RegularOracle(1);
        t.nodes_.push_back(std::move(root));
        return t;
    }

    // S_0 as rate buckets, fastest first; items inside a bucket in creation order.
    std::list<Bucket> list;
    for (std::size_t i = 0; i < n; ++i) {
        if (list.empty() || list.back().exponent != transformed[i].exponent)
            list.push_back(Bucket{transformed[i].exponent, {}, 0});
        list.back().items.push_back(i);
    }
    t.build_work_ += n;

    std::size_t remaining = n;
    while (remaining > 1) {
        ++t.phases_;
        std::vector<std::size_t> carried;  // the D sets, in removal order
        std::vector<std::size_t> created;  // virtual bamboos of this phase, in creation order

        while (!list.empty()) {
            // l2: first node that breaks the run of consecutive exponents from the head.
            auto l2 = std::next(list.begin());
            ++t.build_work_;
            while (l2 != list.end() && l2->exponent == std::prev(l2)->exponent + 1) {
                ++l2;
                ++t.build_work_;
            }
            // l1': last node before l2 holding at least two bamboos.
            auto l1p = list.end();
            for (auto it = list.begin(); it != l2; ++it) {
                ++t.build_work_;
                if (it->count() >= 2) l1p = it;
            }

            auto d_begin = list.begin();
            if (l1p != list.end()) {
                Node v;
                v.exponent = list.front().exponent - 1;
                for (auto it = list.begin(); it != l1p; ++it) v.children.push_back(it->items[it->head++]);
                v.children.push_back(l1p->items[l1p->head++]);
                v.children.push_back(l1p->items[l1p->head++]);
                v.oracle = RegularOracle(v.children.size());
                t.build_work_ += v.children.size();
                created.push_back(t.nodes_.size());
                t.nodes_.push_back(std::move(v));
                d_begin = std::next(l1p);
            }
            for (auto it = d_begin; it != l2; ++it) {
                while (it->count() > 0) carried.push_back(it->items[it->head++]);
                ++t.build_work_;
            }
            for (auto it = list.begin(); it != l2;) {
                if (it->count() == 0) {
                    it = list.erase(it);
                } else {
                    ++it;
                }
            }
        }

        // S_i: bucket by exponent; within a bucket carried bamboos precede the
        // virtual bamboos created this phase, both already in creation order.
        remaining = carried.size() + created.size();
        std::int64_t lo = INT64_MAX, hi = INT64_MIN;
        for (auto v : carried) lo = std::min(lo, t.nodes_[v].exponent), hi = std::max(hi, t.nodes_[v].exponent);
        for (auto v : created) lo = std::min(lo, t.nodes_[v].exponent), hi = std::max(hi, t.nodes_[v].exponent);
        std::vector<std::vector<std::size_t>> by_exp(static_cast<std::size_t>(hi - lo + 1));
        for (auto v : carried) by_exp[static_cast<std::size_t>(t.nodes_[v].exponent - lo)].push_back(v);
        for (auto v : created) by_exp[static_cast<std::size_t>(t.nodes_[v].exponent - lo)].push_back(v);
        t.build_work_ += remaining + by_exp.size();
        for (std::size_t e = 0; e < by_exp.size(); ++e)
            if (!by_exp[e].empty()) list.push_back(Bucket{lo + static_cast<std::int64_t>(e), std::move(by_exp[e]), 0});
    }

    if (t.nodes_.back().exponent != 0 || t.nodes_.back().leaf != 0)
        throw std::logic_error("build_tree: construction did not end at a rate-1 root");
    return t;
}

std::size_t OracleTree::query() {
    std::size_t v = root();
    for (;;) {
        ++query_work_;
        Node& node = nodes_[v];
        if (node.leaf != 0) return node.leaf;
        std::uint64_t before = node.oracle.work();
        std::size_t c = node.oracle.query();
        query_work_ += node.oracle.work() - before;
        v = node.children[c - 1];
    }
}

std::size_t OracleTree::height() const {
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root(), 0}};
    std::size_t best = 0;
    while (!stack.empty()) {
        auto [v, depth] = stack.back();
        stack.pop_back();
        best = std::max(best, depth);
        for (std::size_t c : nodes_[v].children) stack.emplace_back(c, depth + 1);
    }
    return best;
}

std::string OracleTree::check() const {
    if (nodes_.empty()) return "empty tree";
    if (nodes_[root()].exponent != 0) return "root rate is not 1";
    std::vector<int> seen(nodes_.size(), 0);
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
        const Node& node = nodes_[v];
        if (node.leaf != 0) {
            if (!node.children.empty()) return "leaf " + std::to_string(node.leaf) + " has children";
            continue;
        }
        const auto& ch = node.children;
        if (ch.size() != node.oracle.k()) return "node " + std::to_string(v) + ": oracle size mismatch";
        if (ch.size() < 2 && !(leaf_count_ == 1 && ch.size() == 1)) return "node " + std::to_string(v) + " has fewer than 2 children";
        for (std::size_t c : ch) {
            if (c >= v) return "node " + std::to_string(v) + " has a child created after it";
            if (seen[c]++) return "node " + std::to_string(c) + " has two parents";
        }
        if (ch.size() == 1) {
            if (nodes_[ch[0]].exponent != node.exponent) return "single child rate mismatch";
            continue;
        }
        // Scaled-regular: exponents e+1, e+2, ..., e+k-1, e+k-1 below a node of exponent e.
        for (std::size_t j = 0; j < ch.size(); ++j) {
            std::int64_t want = node.exponent + static_cast<std::int64_t>(std::min(j + 1, ch.size() - 1));
            if (nodes_[ch[j]].exponent != want)
                return "node " + std::to_string(v) + ": child " + std::to_string(j + 1) + " is not scaled-regular";
        }
    }
    for (std::size_t v = 0; v + 1 < nodes_.size(); ++v)
        if (!seen[v]) return "node " + std::to_string(v) + " is unreachable";
    for (std::size_t i = 0; i < leaf_count_; ++i)
        if (nodes_[i].leaf != i + 1) return "leaf numbering broken at " + std::to_string(i + 1);
    return {};
}

MakespanTwoOracle::MakespanTwoOracle(Instance instance)
    : instance_(std::move(instance)),
      transformed_(boost_rates(round_rates(instance_))),
      tree_(OracleTree::build(transformed_)) {}

}  // namespace bgt
