#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace bgt {

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

// Dynamic priority search tree over points with distinct y in [1, capacity].
//
// The y-skeleton is a fixed complete binary tree over the y universe (the
// radix variant of McCreight's structure); every node holds the point of
// minimum x among the points in its subtree not already held by an ancestor.
// A y-indexed table backs get_x. Every operation touches O(log capacity)
// nodes; work() counts those touches.
class PrioritySearchTree {
public:
    explicit PrioritySearchTree(std::size_t capacity, std::optional<std::int64_t> x_cap = std::nullopt);

    // Throws std::invalid_argument on a duplicate or out-of-range y, or when
    // p.x exceeds the configured cap.
    void insert(Point p);
    // Throws std::invalid_argument when p is not stored.
    void erase(Point p);

    // Minimum y among stored points with x <= x0.
    std::optional<std::int64_t> min_y_in_x_range(std::int64_t x0) const;
    std::optional<std::int64_t> get_x(std::int64_t y) const;

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    std::size_t capacity() const { return capacity_; }

    // Stored points ordered by y.
    std::vector<Point> points() const;

    std::uint64_t work() const { return work_; }
    void reset_work() { work_ = 0; }

private:
    static constexpr std::int64_t kEmpty = 0;  // y == 0 marks an empty slot

    std::size_t leaf_of(std::int64_t y) const { return leaves_ + static_cast<std::size_t>(y - 1); }
    void check_y(std::int64_t y) const;

    std::size_t capacity_;
    std::size_t leaves_;  // power of two >= capacity
    int levels_;          // leaves_ == 2^levels_
    std::optional<std::int64_t> x_cap_;
    std::vector<Point> heap_;
    std::vector<std::optional<std::int64_t>> x_of_y_;
    std::size_t size_ = 0;
    mutable std::uint64_t work_ = 0;
};

}  // namespace bgt
