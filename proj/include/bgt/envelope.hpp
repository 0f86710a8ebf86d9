#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bgt/rational.hpp"

namespace bgt {

// Named line d -> slope * d + intercept.
struct Line {
    std::int64_t name = 0;
    Rational slope;
    Rational intercept;

    Rational at(const Rational& d) const { return slope * d + intercept; }
    friend bool operator==(const Line&, const Line&) = default;
};

// Fully dynamic upper envelope of named lines.
//
// Lines live at the leaves of a height-balanced tree ordered by
// (slope, intercept, name). Every internal node keeps, as a concatenable
// treap, the lines of its subtree's envelope that do not survive into its
// parent's envelope, plus how many of its own envelope lines came from the
// left child; the root keeps its whole envelope. An update exposes the
// root-to-leaf path, edits the leaf, then recombines bottom-up by finding the
// bridge between the two children's envelopes with a simultaneous descent of
// both queues, O(log n) per level. Merges whose envelopes share a line or only
// hold parallel lines fall back to a nested O(log^2 n) search.
//
// All predicates are exact; ties between identical lines keep the one that
// sorts last.
class UpperEnvelope {
public:
    UpperEnvelope() = default;

    // Throws std::invalid_argument when a line with that name exists.
    void insert(Line line);
    // Throws std::invalid_argument when no line has that name.
    void erase(std::int64_t name);
    // Removes the line if present; returns whether it was.
    bool erase_if_present(std::int64_t name);

    const Line* lookup(std::int64_t name) const;

    // A line attaining the maximum at d; at a breakpoint the steeper line is
    // returned. Throws std::logic_error when empty.
    const Line& upper(const Rational& d) const;
    const Line& upper(std::int64_t d) const { return upper(Rational(d)); }

    std::size_t size() const { return by_name_.size(); }
    bool empty() const { return by_name_.empty(); }

    // Envelope lines ordered by increasing slope.
    std::vector<Line> envelope() const;

    std::uint64_t work() const { return work_; }
    void reset_work() { work_ = 0; }
    // Bridges resolved by the nested fallback search.
    std::uint64_t slow_bridges() const { return slow_bridges_; }

    // Tree height; used by instrumentation and tests.
    int height() const;

private:
    // Integer lines with |slope|, |intercept| < 2^61 take an exact 128-bit
    // fast path; everything else falls back to Rational arithmetic.
    struct Slot {
        Line line;
        bool small = false;
        std::int64_t s = 0, c = 0;  // slope and intercept when small
        int tl = -1, tr = -1;       // treap children
        std::uint64_t prio = 0;
        int size = 1;
        int lm = -1, rm = -1;  // leftmost / rightmost slot of the treap subtree
        // Intersection with the next line in its queue: bp / bq when both
        // lines are small, otherwise brk.
        bool has_brk = false;
        bool brk_small = false;
        std::int64_t bp = 0, bq = 1;
        std::optional<Rational> brk;
    };
    // An abscissa: p / q with q > 0 when small, otherwise *r.
    struct Abscissa {
        bool small = false;
        std::int64_t p = 0, q = 1;
        const Rational* r = nullptr;
        Rational value() const { return small ? Rational(p, q) : *r; }
    };
    struct Node {
        int left = -1, right = -1;
        int height = 1;
        int maxkey = -1;  // slot with the largest key in the subtree
        int q = -1;       // treap root
        int k = 0;        // envelope lines contributed by the left child
        int slot = -1;    // >= 0 for leaves
    };

    bool key_less(int a, int b) const;
    int cmp_slope(int a, int b) const;
    int cmp_intercept(int a, int b) const;
    Abscissa brk_of(int p) const;
    static int cmp_abscissa(const Abscissa& x, const Abscissa& y);
    // Sign of line_a(x) - line_b(x).
    int cmp_at(int a, int b, const Abscissa& x) const;
    void set_brk(int a, int b);
    int new_slot(Line line);
    int new_node();
    void free_node(int v);

    // Concatenable queues.
    void pull(int t);
    int merge_rec(int a, int b);
    int join(int a, int b);
    std::pair<int, int> split(int t, int k);
    void collect(int t, std::vector<Line>& out) const;

    // Envelope queries on one queue.
    int line_at(int q, const Abscissa& x, bool prefer_left) const;
    std::pair<int, int> bridge(int left_q, int right_q) const;
    std::optional<std::pair<int, int>> bridge_fast(int left_q, int right_q) const;
    std::pair<int, int> bridge_nested(int left_q, int right_q) const;

    // Tree maintenance.
    void expose(int v);
    void combine(int v);
    int rebalance(int v);
    int rotate_right(int v);
    int rotate_left(int v);
    int h(int v) const { return v < 0 ? 0 : nodes_[v].height; }
    void refresh(int v);

    std::vector<Slot> slots_;
    std::vector<int> free_slots_;
    std::vector<Node> nodes_;
    std::vector<int> free_nodes_;
    std::unordered_map<std::int64_t, int> by_name_;
    int root_ = -1;
    std::uint64_t prio_state_ = 0x9e3779b97f4a7c15ULL;
    mutable std::uint64_t work_ = 0;
    mutable std::uint64_t slow_bridges_ = 0;
};

}  // namespace bgt
