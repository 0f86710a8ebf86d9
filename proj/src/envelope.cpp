#include "bgt/envelope.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bgt {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::int64_t kSmallLimit = std::int64_t{1} << 61;

bool small_int(const Rational& r) {
    return r.is_small() && r.small_den() == 1 && r.small_num() < kSmallLimit && r.small_num() > -kSmallLimit;
}

int sign_of(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

template <class T>
int sign3(T a, T b) {
    return (a > b) - (a < b);
}

}  // namespace

int UpperEnvelope::cmp_slope(int a, int b) const {
    const Slot& x = slots_[a];
    const Slot& y = slots_[b];
    if (x.small && y.small) return sign3(x.s, y.s);
    return sign_of(x.line.slope <=> y.line.slope);
}

int UpperEnvelope::cmp_intercept(int a, int b) const {
    const Slot& x = slots_[a];
    const Slot& y = slots_[b];
    if (x.small && y.small) return sign3(x.c, y.c);
    return sign_of(x.line.intercept <=> y.line.intercept);
}

bool UpperEnvelope::key_less(int a, int b) const {
    if (int c = cmp_slope(a, b); c != 0) return c < 0;
    if (int c = cmp_intercept(a, b); c != 0) return c < 0;
    return slots_[a].line.name < slots_[b].line.name;
}

UpperEnvelope::Abscissa UpperEnvelope::brk_of(int p) const {
    const Slot& s = slots_[p];
    if (s.brk_small) return Abscissa{true, s.bp, s.bq, nullptr};
    return Abscissa{false, 0, 1, &*s.brk};
}

int UpperEnvelope::cmp_abscissa(const Abscissa& x, const Abscissa& y) {
    if (x.small && y.small)
        return sign3(static_cast<__int128>(x.p) * y.q, static_cast<__int128>(y.p) * x.q);
    return sign_of(x.value() <=> y.value());
}

int UpperEnvelope::cmp_at(int a, int b, const Abscissa& x) const {
    const Slot& u = slots_[a];
    const Slot& v = slots_[b];
    if (u.small && v.small && x.small) {
        __int128 t = static_cast<__int128>(u.s - v.s) * x.p + static_cast<__int128>(u.c - v.c) * x.q;
        return (t > 0) - (t < 0);
    }
    Rational xv = x.value();
    return sign_of(u.line.at(xv) <=> v.line.at(xv));
}

// Breakpoint of a followed by b in one queue; requires a steeper b.
void UpperEnvelope::set_brk(int a, int b) {
    Slot& x = slots_[a];
    const Slot& y = slots_[b];
    x.has_brk = true;
    if (x.small && y.small) {
        x.brk_small = true;
        x.bp = x.c - y.c;
        x.bq = y.s - x.s;
        x.brk.reset();
    } else {
        x.brk_small = false;
        x.brk = (x.line.intercept - y.line.intercept) / (y.line.slope - x.line.slope);
    }
}

int UpperEnvelope::new_slot(Line line) {
    int s;
    if (!free_slots_.empty()) {
        s = free_slots_.back();
        free_slots_.pop_back();
        slots_[s] = Slot{};
    } else {
        s = static_cast<int>(slots_.size());
        slots_.emplace_back();
    }
    Slot& sl = slots_[s];
    sl.line = std::move(line);
    sl.small = small_int(sl.line.slope) && small_int(sl.line.intercept);
    if (sl.small) {
        sl.s = sl.line.slope.small_num();
        sl.c = sl.line.intercept.small_num();
    }
    sl.prio = splitmix64(prio_state_);
    sl.lm = sl.rm = s;
    return s;
}

int UpperEnvelope::new_node() {
    int v;
    if (!free_nodes_.empty()) {
        v = free_nodes_.back();
        free_nodes_.pop_back();
        nodes_[v] = Node{};
    } else {
        v = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
    }
    return v;
}

void UpperEnvelope::free_node(int v) { free_nodes_.push_back(v); }

// ---------------------------------------------------------------------------
// Concatenable queues (treaps ordered by position).

void UpperEnvelope::pull(int t) {
    Slot& s = slots_[t];
    s.size = 1;
    s.lm = s.rm = t;
    if (s.tl >= 0) {
        s.size += slots_[s.tl].size;
        s.lm = slots_[s.tl].lm;
    }
    if (s.tr >= 0) {
        s.size += slots_[s.tr].size;
        s.rm = slots_[s.tr].rm;
    }
}

int UpperEnvelope::merge_rec(int a, int b) {
    ++work_;
    if (a < 0) return b;
    if (b < 0) return a;
    if (slots_[a].prio > slots_[b].prio) {
        slots_[a].tr = merge_rec(slots_[a].tr, b);
        pull(a);
        return a;
    }
    slots_[b].tl = merge_rec(a, slots_[b].tl);
    pull(b);
    return b;
}

int UpperEnvelope::join(int a, int b) {
    if (a < 0) return b;
    if (b < 0) return a;
    int last = slots_[a].rm;
    int first = slots_[b].lm;
    set_brk(last, first);
    return merge_rec(a, b);
}

std::pair<int, int> UpperEnvelope::split(int t, int k) {
    // First k lines go left.
    struct Rec {
        UpperEnvelope& self;
        std::pair<int, int> operator()(int t, int k) {
            ++self.work_;
            if (t < 0) return {-1, -1};
            Slot& s = self.slots_[t];
            int left_size = s.tl >= 0 ? self.slots_[s.tl].size : 0;
            if (k <= left_size) {
                auto [a, b] = (*this)(s.tl, k);
                self.slots_[t].tl = b;
                self.pull(t);
                return {a, t};
            }
            auto [a, b] = (*this)(s.tr, k - left_size - 1);
            self.slots_[t].tr = a;
            self.pull(t);
            return {t, b};
        }
    };
    auto parts = Rec{*this}(t, k);
    if (parts.first >= 0) slots_[slots_[parts.first].rm].has_brk = false;
    return parts;
}

void UpperEnvelope::collect(int t, std::vector<Line>& out) const {
    if (t < 0) return;
    collect(slots_[t].tl, out);
    out.push_back(slots_[t].line);
    collect(slots_[t].tr, out);
}

// ---------------------------------------------------------------------------
// Queries on a single envelope queue.

int UpperEnvelope::line_at(int q, const Abscissa& x, bool prefer_left) const {
    int t = q;
    int pred = -1;
    for (;;) {
        ++work_;
        const Slot& s = slots_[t];
        int p = s.tl >= 0 ? slots_[s.tl].rm : pred;
        if (p >= 0) {
            int c = cmp_abscissa(x, brk_of(p));
            if (c < 0 || (c == 0 && prefer_left)) {
                t = s.tl;
                continue;
            }
        }
        if (s.has_brk) {
            int c = cmp_abscissa(x, brk_of(t));
            if (c > 0 || (c == 0 && !prefer_left)) {
                pred = t;
                t = s.tr;
                continue;
            }
        }
        return t;
    }
}

// Merge two envelopes whose lines are all ordered left-before-right by key.
// Returns (k, m): the merged envelope is the first k lines of the left
// envelope followed by the right envelope from position m on.
//
// With f = E_right - E_left (nondecreasing), a left line survives iff f is
// negative at its left breakpoint; a right line survives iff f is positive at
// its right breakpoint, or zero there with an identical left line (the later
// key wins the tie).
std::pair<int, int> UpperEnvelope::bridge(int left_q, int right_q) const {
    if (auto kb = bridge_fast(left_q, right_q)) return *kb;
    ++slow_bridges_;
    return bridge_nested(left_q, right_q);
}

// With a single strict crossing x of E_left and E_right, walks both queues
// towards the lines active at x. For lines a (left) and b (right) meeting at
// z, with a active on [a1, a2] and b on [b1, b2]:
//   z <= a2 implies x <= max(a1, z), since f >= 0 on a's part right of z;
//   z >= b1 implies x >= min(b2, z), since f <= 0 on b's part left of z;
//   when a2 < z < b1, lines of slope sigma (between the two slope ranges)
//   through (a2, a(a2)) and (b1, b(b1)) bound E_left right of a2 and
//   E_right left of b1, and whichever is higher fixes the side of x.
// Returns nothing when the precondition fails or the walk meets a tie it
// cannot resolve.
std::optional<std::pair<int, int>> UpperEnvelope::bridge_fast(int left_q, int right_q) const {
    int l_first = slots_[left_q].lm;
    int l_last = slots_[left_q].rm;
    int r_first = slots_[right_q].lm;
    int r_last = slots_[right_q].rm;
    if (cmp_slope(r_first, l_first) <= 0 || cmp_slope(r_last, l_last) <= 0) return std::nullopt;
    if (cmp_slope(l_last, r_first) == 0 && cmp_intercept(l_last, r_first) == 0) return std::nullopt;

    int a = left_q, a_pred = -1, a_before = 0;
    int b = right_q, b_pred = -1, b_before = 0;
    Rational z_big;
    for (;;) {
        ++work_;
        const Slot& sa = slots_[a];
        const Slot& sb = slots_[b];
        int pa = sa.tl >= 0 ? slots_[sa.tl].rm : a_pred;
        int pb = sb.tl >= 0 ? slots_[sb.tl].rm : b_pred;

        int move_a = 0, move_b = 0;  // -1 left, +1 right
        if (cmp_slope(a, b) == 0) {
            // Only the steepest left and flattest right lines can be parallel.
            int c = cmp_intercept(a, b);
            if (c > 0) {
                move_b = 1;  // f < 0 wherever b is active
            } else {
                move_a = -1;  // f > 0 wherever a is active
            }
        } else {
            Abscissa z;
            if (sa.small && sb.small) {
                z = Abscissa{true, sa.c - sb.c, sb.s - sa.s, nullptr};
            } else {
                z_big = (sa.line.intercept - sb.line.intercept) / (sb.line.slope - sa.line.slope);
                z = Abscissa{false, 0, 1, &z_big};
            }
            int za = 0, zb = 0;
            if (pa >= 0 && cmp_abscissa(z, brk_of(pa)) < 0) za = -1;
            else if (sa.has_brk && cmp_abscissa(z, brk_of(a)) > 0) za = 1;
            if (pb >= 0 && cmp_abscissa(z, brk_of(pb)) < 0) zb = -1;
            else if (sb.has_brk && cmp_abscissa(z, brk_of(b)) > 0) zb = 1;

            if (za == 0 && zb == 0) {
                int pos_a = a_before + (sa.tl >= 0 ? slots_[sa.tl].size : 0) + 1;
                int pos_b = b_before + (sb.tl >= 0 ? slots_[sb.tl].size : 0) + 1;
                int k = pos_a - (pa >= 0 && cmp_abscissa(z, brk_of(pa)) == 0 ? 1 : 0);
                int m = pos_b - 1 + (sb.has_brk && cmp_abscissa(z, brk_of(b)) == 0 ? 1 : 0);
                return std::make_pair(k, m);
            }
            if (za < 0) move_a = -1;
            if (zb > 0) move_b = 1;
            if (za == 0 && zb < 0) move_b = -1;
            if (zb == 0 && za > 0) move_a = 1;
            if (za > 0 && zb < 0) {
                const Rational& sigma = slots_[l_last].line.slope;
                Rational a2 = brk_of(a).value();
                Rational b1 = brk_of(pb).value();
                Rational hi_right = sb.line.at(b1) - sigma * b1;
                Rational hi_left = sa.line.at(a2) - sigma * a2;
                if (hi_right >= hi_left) {
                    move_b = -1;
                } else {
                    move_a = 1;
                }
            }
        }

        if (move_a < 0) {
            if (sa.tl < 0) return std::nullopt;
            a = sa.tl;
        } else if (move_a > 0) {
            if (sa.tr < 0) return std::nullopt;
            a_before += (sa.tl >= 0 ? slots_[sa.tl].size : 0) + 1;
            a_pred = a;
            a = sa.tr;
        }
        if (move_b < 0) {
            if (sb.tl < 0) return std::nullopt;
            b = sb.tl;
        } else if (move_b > 0) {
            if (sb.tr < 0) return std::nullopt;
            b_before += (sb.tl >= 0 ? slots_[sb.tl].size : 0) + 1;
            b_pred = b;
            b = sb.tr;
        }
    }
}

std::pair<int, int> UpperEnvelope::bridge_nested(int left_q, int right_q) const {
    int l_first = slots_[left_q].lm;
    int l_last = slots_[left_q].rm;
    int r_first = slots_[right_q].lm;
    int r_last = slots_[right_q].rm;

    // Sign of f at -inf and +inf; right slopes are never smaller.
    int f_neg_inf = cmp_slope(r_first, l_first) > 0 ? -1 : cmp_intercept(r_first, l_first);
    int f_pos_inf = cmp_slope(r_last, l_last) > 0 ? 1 : cmp_intercept(r_last, l_last);

    int k = 0;
    {
        int t = left_q;
        int pred = -1;
        while (t >= 0) {
            ++work_;
            const Slot& s = slots_[t];
            int p = s.tl >= 0 ? slots_[s.tl].rm : pred;
            bool survives;
            if (p < 0) {
                survives = f_neg_inf < 0;
            } else {
                Abscissa x = brk_of(p);
                int r = line_at(right_q, x, true);
                survives = cmp_at(r, t, x) < 0;
            }
            if (survives) {
                k += (s.tl >= 0 ? slots_[s.tl].size : 0) + 1;
                pred = t;
                t = s.tr;
            } else {
                t = s.tl;
            }
        }
    }

    int m = slots_[right_q].size;
    {
        int t = right_q;
        int before = 0;
        while (t >= 0) {
            ++work_;
            const Slot& s = slots_[t];
            bool survives;
            if (!s.has_brk) {
                survives = f_pos_inf >= 0;
            } else {
                Abscissa x = brk_of(t);
                int l = line_at(left_q, x, true);
                int c = cmp_at(t, l, x);
                survives = c > 0 || (c == 0 && cmp_slope(t, l) == 0 && cmp_intercept(t, l) == 0);
            }
            int left_size = s.tl >= 0 ? slots_[s.tl].size : 0;
            if (survives) {
                m = before + left_size;
                t = s.tl;
            } else {
                before += left_size + 1;
                t = s.tr;
            }
        }
    }
    return {k, m};
}

// ---------------------------------------------------------------------------
// Tree maintenance. A node is "full" when q holds its whole envelope, which
// holds for the root and for the children of an exposed node.

void UpperEnvelope::expose(int v) {
    Node& n = nodes_[v];
    auto [a, b] = split(n.q, n.k);
    nodes_[n.left].q = join(a, nodes_[n.left].q);
    nodes_[n.right].q = join(nodes_[n.right].q, b);
    n.q = -1;
    n.k = 0;
}

void UpperEnvelope::refresh(int v) {
    Node& n = nodes_[v];
    n.height = 1 + std::max(h(n.left), h(n.right));
    n.maxkey = nodes_[n.right].maxkey;
}

void UpperEnvelope::combine(int v) {
    int l = nodes_[v].left;
    int r = nodes_[v].right;
    auto [k, m] = bridge(nodes_[l].q, nodes_[r].q);
    auto [kept_left, rest_left] = split(nodes_[l].q, k);
    auto [rest_right, kept_right] = split(nodes_[r].q, m);
    nodes_[l].q = rest_left;
    nodes_[r].q = rest_right;
    nodes_[v].q = join(kept_left, kept_right);
    nodes_[v].k = k;
    refresh(v);
}

int UpperEnvelope::rotate_right(int v) {
    int c = nodes_[v].left;
    expose(c);
    int b = nodes_[c].right;
    nodes_[v].left = b;
    nodes_[c].right = v;
    combine(v);
    combine(c);
    return c;
}

int UpperEnvelope::rotate_left(int v) {
    int c = nodes_[v].right;
    expose(c);
    int b = nodes_[c].left;
    nodes_[v].right = b;
    nodes_[c].left = v;
    combine(v);
    combine(c);
    return c;
}

// Both children of v are full; returns the (full) root of the rebalanced
// subtree.
int UpperEnvelope::rebalance(int v) {
    int bal = h(nodes_[v].left) - h(nodes_[v].right);
    if (bal > 1) {
        int c = nodes_[v].left;
        if (h(nodes_[c].left) < h(nodes_[c].right)) {
            expose(c);
            nodes_[v].left = rotate_left(c);
        }
        return rotate_right(v);
    }
    if (bal < -1) {
        int c = nodes_[v].right;
        if (h(nodes_[c].right) < h(nodes_[c].left)) {
            expose(c);
            nodes_[v].right = rotate_right(c);
        }
        return rotate_left(v);
    }
    combine(v);
    return v;
}

// ---------------------------------------------------------------------------
// Public operations.

void UpperEnvelope::insert(Line line) {
    if (by_name_.count(line.name))
        throw std::invalid_argument("envelope: a line named " + std::to_string(line.name) + " already exists");
    std::int64_t name = line.name;
    int s = new_slot(std::move(line));
    by_name_.emplace(name, s);

    int leaf = new_node();
    nodes_[leaf].slot = s;
    nodes_[leaf].maxkey = s;
    nodes_[leaf].q = s;
    if (root_ < 0) {
        root_ = leaf;
        return;
    }

    std::vector<int> path;
    int v = root_;
    while (nodes_[v].slot < 0) {
        ++work_;
        expose(v);
        path.push_back(v);
        int l = nodes_[v].left;
        v = key_less(nodes_[l].maxkey, s) ? nodes_[v].right : l;
    }

    int joint = new_node();
    if (key_less(s, nodes_[v].slot)) {
        nodes_[joint].left = leaf;
        nodes_[joint].right = v;
    } else {
        nodes_[joint].left = v;
        nodes_[joint].right = leaf;
    }
    if (path.empty()) {
        root_ = joint;
    } else {
        Node& p = nodes_[path.back()];
        (p.left == v ? p.left : p.right) = joint;
    }
    path.push_back(joint);

    for (std::size_t i = path.size(); i-- > 0;) {
        int u = path[i];
        int nu = rebalance(u);
        if (i == 0) {
            root_ = nu;
        } else {
            Node& p = nodes_[path[i - 1]];
            (p.left == u ? p.left : p.right) = nu;
        }
    }
}

bool UpperEnvelope::erase_if_present(std::int64_t name) {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return false;
    int s = it->second;
    by_name_.erase(it);

    std::vector<int> path;
    int v = root_;
    while (nodes_[v].slot < 0) {
        ++work_;
        expose(v);
        path.push_back(v);
        int l = nodes_[v].left;
        v = key_less(nodes_[l].maxkey, s) ? nodes_[v].right : l;
    }
    if (nodes_[v].slot != s) throw std::logic_error("envelope: tree routing lost a line");

    free_node(v);
    free_slots_.push_back(s);
    if (path.empty()) {
        root_ = -1;
        return true;
    }
    int parent = path.back();
    path.pop_back();
    int sibling = nodes_[parent].left == v ? nodes_[parent].right : nodes_[parent].left;
    free_node(parent);
    if (path.empty()) {
        root_ = sibling;
        return true;
    }
    {
        Node& g = nodes_[path.back()];
        (g.left == parent ? g.left : g.right) = sibling;
    }
    for (std::size_t i = path.size(); i-- > 0;) {
        int u = path[i];
        int nu = rebalance(u);
        if (i == 0) {
            root_ = nu;
        } else {
            Node& p = nodes_[path[i - 1]];
            (p.left == u ? p.left : p.right) = nu;
        }
    }
    return true;
}

void UpperEnvelope::erase(std::int64_t name) {
    if (!erase_if_present(name))
        throw std::invalid_argument("envelope: no line named " + std::to_string(name));
}

const Line* UpperEnvelope::lookup(std::int64_t name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &slots_[it->second].line;
}

const Line& UpperEnvelope::upper(const Rational& d) const {
    if (root_ < 0) throw std::logic_error("envelope: upper() on an empty envelope");
    Abscissa x = small_int(d) ? Abscissa{true, d.small_num(), 1, nullptr} : Abscissa{false, 0, 1, &d};
    return slots_[line_at(nodes_[root_].q, x, false)].line;
}

std::vector<Line> UpperEnvelope::envelope() const {
    std::vector<Line> out;
    if (root_ >= 0) collect(nodes_[root_].q, out);
    return out;
}

int UpperEnvelope::height() const { return h(root_); }

}  // namespace bgt
