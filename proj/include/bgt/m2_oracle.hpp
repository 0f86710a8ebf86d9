#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bgt/instance.hpp"
#include "bgt/rational.hpp"

namespace bgt {

// Rate 2^-exponent.
struct DyadicRate {
    std::int64_t exponent = 0;

    Rational value() const { return Rational::pow2(-exponent); }
    friend bool operator==(DyadicRate, DyadicRate) = default;
};

// h'_i = 2^floor(log2 h_i). Throws std::domain_error for a rate outside (0, 1].
std::vector<DyadicRate> round_rates(std::span<const Rational> rates);
std::vector<DyadicRate> round_rates(const Instance& instance);

// Raises each rate, fastest first, to the largest power of 1/2 that keeps the
// total at most 1. Input must be nonincreasing with total at most 1; the
// result totals exactly 1 and is nonincreasing.
std::vector<DyadicRate> boost_rates(std::span<const DyadicRate> rounded);

// Binary-counter schedule for k children with scaled rates
// 1/2, 1/4, ..., 2^-(k-1), 2^-(k-1): child j < k is returned once every 2^j
// queries, child k once every 2^(k-1). k = 1 always returns 1.
class RegularOracle {
public:
    explicit RegularOracle(std::size_t k);

    // 1-based child index.
    std::size_t query();

    std::size_t k() const { return k_; }
    std::size_t counter_bits() const { return k_ == 0 ? 0 : k_ - 1; }
    std::uint64_t work() const { return work_; }

private:
    std::size_t k_;
    std::vector<std::uint64_t> bits_;
    std::uint64_t work_ = 0;
};

// Tree of virtual bamboos built by repeated merge phases. Nodes are numbered
// in creation order: leaf i is node i - 1, virtual bamboos follow, and the
// root (rate 1) is created last. Internal nodes list children fastest first
// and schedule them with a RegularOracle.
class OracleTree {
public:
    struct Node {
        std::int64_t exponent = 0;
        std::size_t leaf = 0;  // canonical bamboo index, 0 for internal nodes
        std::vector<std::size_t> children;
        RegularOracle oracle{0};
    };

    static OracleTree build(std::span<const DyadicRate> transformed);

    // Descends from the root; returns the canonical index of the leaf reached.
    std::size_t query();

    std::size_t root() const { return nodes_.size() - 1; }
    const Node& node(std::size_t v) const { return nodes_.at(v); }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t leaf_count() const { return leaf_count_; }
    // Edges on the longest root-to-leaf path.
    std::size_t height() const;
    std::size_t phases() const { return phases_; }
    std::uint64_t build_work() const { return build_work_; }
    std::uint64_t query_work() const { return query_work_; }
    void reset_query_work() { query_work_ = 0; }

    // Empty when the structural invariants hold, otherwise a description of
    // the first violation: every internal node has at least two children
    // (one for the root of a single-bamboo tree), child rates are
    // scaled-regular and sum to the node's rate, the root has rate 1, and
    // every leaf appears once.
    std::string check() const;

private:
    std::vector<Node> nodes_;
    std::size_t leaf_count_ = 0;
    std::size_t phases_ = 0;
    std::uint64_t build_work_ = 0;
    std::uint64_t query_work_ = 0;
};

// Makespan-2 oracle: round, boost, build the tree; every query trims.
class MakespanTwoOracle {
public:
    explicit MakespanTwoOracle(Instance instance);

    TrimDecision query() { return TrimDecision::trim(tree_.query()); }

    const Instance& instance() const { return instance_; }
    // Boosted rate of canonical bamboo i, indexed from 0.
    const std::vector<DyadicRate>& transformed_rates() const { return transformed_; }
    const OracleTree& tree() const { return tree_; }
    std::uint64_t work() const { return tree_.query_work(); }
    void reset_work() { tree_.reset_query_work(); }

private:
    Instance instance_;
    std::vector<DyadicRate> transformed_;
    OracleTree tree_;
};

}  // namespace bgt
