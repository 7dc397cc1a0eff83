#include "ccd/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace ccd {

char mark_symbol(Mark m) {
    switch (m) {
        case Mark::Tail: return '-';
        case Mark::Arrow: return '>';
        case Mark::Circle: return 'o';
    }
    return '?';
}

static std::vector<std::string> default_labels(int n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back("X" + std::to_string(i + 1));
    return out;
}

MixedGraph::MixedGraph(int n) : MixedGraph(default_labels(n)) {}

MixedGraph::MixedGraph(std::vector<std::string> labels) {
    n_ = static_cast<int>(labels.size());
    set_labels(std::move(labels));
    marks_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

void MixedGraph::set_labels(std::vector<std::string> labels) {
    if (static_cast<int>(labels.size()) != n_) throw GraphError("label count does not match node count");
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw GraphError("duplicate node label");
    labels_ = std::move(labels);
}

const std::string& MixedGraph::label(int x) const {
    check_node(x);
    return labels_[x];
}

std::optional<int> MixedGraph::find_label(const std::string& label) const {
    for (int i = 0; i < n_; ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

void MixedGraph::check_node(int x) const {
    if (x < 0 || x >= n_) throw GraphError("unknown node " + std::to_string(x));
}

void MixedGraph::set_edge(int a, int b, Mark mark_at_a, Mark mark_at_b) {
    check_node(a);
    check_node(b);
    if (a == b) throw GraphError("self-loop on node " + labels_[a]);
    marks_[static_cast<std::size_t>(b) * n_ + a] = 1 + static_cast<std::uint8_t>(mark_at_a);
    marks_[static_cast<std::size_t>(a) * n_ + b] = 1 + static_cast<std::uint8_t>(mark_at_b);
}

void MixedGraph::remove_edge(int a, int b) {
    check_node(a);
    check_node(b);
    marks_[static_cast<std::size_t>(b) * n_ + a] = 0;
    marks_[static_cast<std::size_t>(a) * n_ + b] = 0;
}

bool MixedGraph::adjacent(int a, int b) const {
    check_node(a);
    check_node(b);
    return raw(a, b) != 0;
}

Mark MixedGraph::mark_at(int at, int other) const {
    if (!adjacent(at, other)) throw GraphError("no edge between " + labels_[at] + " and " + labels_[other]);
    return static_cast<Mark>(raw(at, other) - 1);
}

void MixedGraph::set_mark_at(int at, int other, Mark m) {
    if (!adjacent(at, other)) throw GraphError("no edge between " + labels_[at] + " and " + labels_[other]);
    marks_[static_cast<std::size_t>(other) * n_ + at] = 1 + static_cast<std::uint8_t>(m);
}

EdgeKind MixedGraph::kind(int a, int b) const {
    if (!adjacent(a, b)) return EdgeKind::None;
    Mark ma = mark_at(a, b), mb = mark_at(b, a);
    if (ma == Mark::Tail && mb == Mark::Arrow) return EdgeKind::Directed;
    if (ma == Mark::Arrow && mb == Mark::Tail) return EdgeKind::Reversed;
    if (ma == Mark::Arrow && mb == Mark::Arrow) return EdgeKind::Bidirected;
    if (ma == Mark::Tail && mb == Mark::Tail) return EdgeKind::Undirected;
    if (ma == Mark::Circle && mb == Mark::Circle) return EdgeKind::CircleCircle;
    if (ma == Mark::Circle && mb == Mark::Arrow) return EdgeKind::CircleArrow;
    if (ma == Mark::Arrow && mb == Mark::Circle) return EdgeKind::ArrowCircle;
    return EdgeKind::Other;
}

bool MixedGraph::is_directed(int from, int to) const { return kind(from, to) == EdgeKind::Directed; }
bool MixedGraph::is_bidirected(int a, int b) const { return kind(a, b) == EdgeKind::Bidirected; }
bool MixedGraph::is_undirected(int a, int b) const { return kind(a, b) == EdgeKind::Undirected; }

NodeSet MixedGraph::adjacents(int x) const {
    check_node(x);
    NodeSet out;
    for (int y = 0; y < n_; ++y)
        if (raw(x, y)) out.push_back(y);
    return out;
}

// y is a parent of x when the edge is y -> x or y o-> x.
static bool parent_reading(const MixedGraph& g, int y, int x) {
    if (!g.adjacent(x, y)) return false;
    Mark at_y = g.mark_at(y, x);
    return g.mark_at(x, y) == Mark::Arrow && (at_y == Mark::Tail || at_y == Mark::Circle);
}

NodeSet MixedGraph::parents(int x) const {
    check_node(x);
    NodeSet out;
    for (int y = 0; y < n_; ++y)
        if (raw(x, y) && parent_reading(*this, y, x)) out.push_back(y);
    return out;
}

NodeSet MixedGraph::children(int x) const {
    check_node(x);
    NodeSet out;
    for (int y = 0; y < n_; ++y)
        if (raw(x, y) && parent_reading(*this, x, y)) out.push_back(y);
    return out;
}

NodeSet MixedGraph::siblings(int x) const {
    check_node(x);
    NodeSet out;
    for (int y = 0; y < n_; ++y)
        if (raw(x, y) && kind(x, y) == EdgeKind::Bidirected) out.push_back(y);
    return out;
}

NodeSet MixedGraph::non_children(int x) const {
    check_node(x);
    NodeSet out;
    for (int y = 0; y < n_; ++y)
        if (raw(x, y) && !parent_reading(*this, x, y)) out.push_back(y);
    return out;
}

static bool ancestry_step(const MixedGraph& g, int from, int to, bool partial) {
    EdgeKind k = g.kind(from, to);
    return k == EdgeKind::Directed || (partial && k == EdgeKind::CircleArrow);
}

static NodeSet closure(const MixedGraph& g, const NodeSet& seeds, bool partial, bool upward) {
    int n = g.size();
    std::vector<char> seen(n, 0);
    std::vector<int> stack;
    for (int s : seeds) {
        if (s < 0 || s >= n) throw GraphError("unknown node " + std::to_string(s));
        if (!seen[s]) {
            seen[s] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < n; ++u) {
            if (seen[u] || !g.adjacent(u, v)) continue;
            bool step = upward ? ancestry_step(g, u, v, partial) : ancestry_step(g, v, u, partial);
            if (step) {
                seen[u] = 1;
                stack.push_back(u);
            }
        }
    }
    NodeSet out;
    for (int i = 0; i < n; ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

NodeSet MixedGraph::ancestors(int x, bool partial) const { return closure(*this, {x}, partial, true); }
NodeSet MixedGraph::ancestors_of(const NodeSet& xs, bool partial) const { return closure(*this, xs, partial, true); }
NodeSet MixedGraph::descendants(int x, bool partial) const { return closure(*this, {x}, partial, false); }

std::vector<int> MixedGraph::topological_order() const {
    std::vector<int> indeg(n_, 0);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (raw(a, b) && is_directed(a, b)) ++indeg[b];
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int i = 0; i < n_; ++i)
        if (indeg[i] == 0) ready.push(i);
    std::vector<int> order;
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int u = 0; u < n_; ++u)
            if (raw(v, u) && is_directed(v, u) && --indeg[u] == 0) ready.push(u);
    }
    if (static_cast<int>(order.size()) != n_) throw GraphError("directed cycle detected");
    return order;
}

std::vector<std::pair<int, int>> MixedGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (raw(a, b)) out.emplace_back(a, b);
    return out;
}

int MixedGraph::num_edges() const { return static_cast<int>(edges().size()); }

bool MixedGraph::has_circles() const {
    for (auto m : marks_)
        if (m == 1 + static_cast<std::uint8_t>(Mark::Circle)) return true;
    return false;
}

bool MixedGraph::has_undirected() const {
    for (auto [a, b] : edges())
        if (kind(a, b) == EdgeKind::Undirected) return true;
    return false;
}

bool MixedGraph::has_bidirected() const {
    for (auto [a, b] : edges())
        if (kind(a, b) == EdgeKind::Bidirected) return true;
    return false;
}

bool MixedGraph::all_directed() const {
    for (auto [a, b] : edges()) {
        EdgeKind k = kind(a, b);
        if (k != EdgeKind::Directed && k != EdgeKind::Reversed) return false;
    }
    return true;
}

bool MixedGraph::operator==(const MixedGraph& other) const {
    return n_ == other.n_ && marks_ == other.marks_;
}

bool has_directed_cycle(const MixedGraph& g) {
    try {
        g.topological_order();
        return false;
    } catch (const GraphError&) {
        return true;
    }
}

bool has_almost_directed_cycle(const MixedGraph& g) {
    for (auto [a, b] : g.edges()) {
        if (!g.is_bidirected(a, b)) continue;
        auto an_b = g.ancestors(b);
        auto an_a = g.ancestors(a);
        if (std::binary_search(an_b.begin(), an_b.end(), a) || std::binary_search(an_a.begin(), an_a.end(), b))
            return true;
    }
    return false;
}

}  // namespace ccd
