#include "bgt/pst.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace bgt {

PrioritySearchTree::PrioritySearchTree(std::size_t capacity, std::optional<std::int64_t> x_cap)
    : capacity_(capacity), leaves_(1), levels_(0), x_cap_(x_cap) {
    if (capacity == 0) throw std::invalid_argument("pst: capacity must be positive");
    while (leaves_ < capacity) {
        leaves_ <<= 1;
        ++levels_;
    }
    heap_.assign(2 * leaves_, Point{0, kEmpty});
    x_of_y_.assign(capacity + 1, std::nullopt);
}

void PrioritySearchTree::check_y(std::int64_t y) const {
    if (y < 1 || static_cast<std::size_t>(y) > capacity_)
        throw std::invalid_argument("pst: y = " + std::to_string(y) + " outside [1, " + std::to_string(capacity_) +
                                    "]");
}

void PrioritySearchTree::insert(Point p) {
    check_y(p.y);
    if (x_of_y_[p.y]) throw std::invalid_argument("pst: duplicate y = " + std::to_string(p.y));
    if (x_cap_ && p.x > *x_cap_)
        throw std::invalid_argument("pst: x = " + std::to_string(p.x) + " exceeds cap " + std::to_string(*x_cap_));
    x_of_y_[p.y] = p.x;
    ++size_;

    // Sift down along the root-to-leaf path of the carried point; the carried
    // point changes on swaps, so the path is recomputed from its y each level.
    std::size_t v = 1;
    for (int level = 0;; ++level) {
        ++work_;
        Point& slot = heap_[v];
        if (slot.y == kEmpty) {
            slot = p;
            return;
        }
        if (p.x < slot.x) std::swap(p, slot);
        std::size_t leaf = leaf_of(p.y);
        v = leaf >> (levels_ - level - 1);
    }
}

void PrioritySearchTree::erase(Point p) {
    check_y(p.y);
    if (!x_of_y_[p.y] || *x_of_y_[p.y] != p.x)
        throw std::invalid_argument("pst: point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                                    ") is not stored");
    x_of_y_[p.y].reset();
    --size_;

    std::size_t leaf = leaf_of(p.y);
    std::size_t v = 1;
    for (int level = 0; heap_[v].y != p.y; ++level) {
        ++work_;
        v = leaf >> (levels_ - level - 1);
    }
    // Pull the smaller-x child up into the hole until the hole reaches a
    // node without children.
    for (;;) {
        ++work_;
        std::size_t l = 2 * v;
        std::size_t r = l + 1;
        bool has_l = l < heap_.size() && heap_[l].y != kEmpty;
        bool has_r = r < heap_.size() && heap_[r].y != kEmpty;
        if (!has_l && !has_r) {
            heap_[v] = Point{0, kEmpty};
            return;
        }
        std::size_t c = (!has_r || (has_l && heap_[l].x <= heap_[r].x)) ? l : r;
        heap_[v] = heap_[c];
        v = c;
    }
}

std::optional<std::int64_t> PrioritySearchTree::min_y_in_x_range(std::int64_t x0) const {
    std::optional<std::int64_t> best;
    std::size_t v = 1;
    while (v < heap_.size()) {
        ++work_;
        const Point& slot = heap_[v];
        if (slot.y == kEmpty || slot.x > x0) break;
        if (!best || slot.y < *best) best = slot.y;
        std::size_t l = 2 * v;
        if (l >= heap_.size()) break;
        // Every y in the left subtree is smaller than every y in the right one.
        if (heap_[l].y != kEmpty && heap_[l].x <= x0)
            v = l;
        else
            v = l + 1;
    }
    return best;
}

std::optional<std::int64_t> PrioritySearchTree::get_x(std::int64_t y) const {
    ++work_;
    if (y < 1 || static_cast<std::size_t>(y) > capacity_) return std::nullopt;
    return x_of_y_[y];
}

std::vector<Point> PrioritySearchTree::points() const {
    std::vector<Point> out;
    out.reserve(size_);
    for (std::size_t y = 1; y <= capacity_; ++y)
        if (x_of_y_[y]) out.push_back(Point{*x_of_y_[y], static_cast<std::int64_t>(y)});
    return out;
}

}  // namespace bgt
