#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccd {

/// Sorted, duplicate-free list of node indices.
using NodeSet = std::vector<int>;

/// Linear membership test; NodeSets are short.
inline bool contains_node(const NodeSet& s, int v) {
    for (int x : s)
        if (x == v) return true;
    return false;
}

enum class Mark : std::uint8_t { Tail, Arrow, Circle };

char mark_symbol(Mark m);

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Edge kind as seen from the ordered pair (a, b).
enum class EdgeKind { None, Directed, Reversed, Bidirected, Undirected, CircleCircle, CircleArrow, ArrowCircle, Other };

/// A micro-level graph over dense node indices 0..n-1. Every unordered pair
/// carries at most one edge, stored as the mark at each endpoint.
class MixedGraph {
public:
    MixedGraph() = default;
    explicit MixedGraph(int n);
    explicit MixedGraph(std::vector<std::string> labels);

    int size() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int x) const;
    std::optional<int> find_label(const std::string& label) const;
    void set_labels(std::vector<std::string> labels);

    /// Replaces whatever edge joins a and b.
    void set_edge(int a, int b, Mark mark_at_a, Mark mark_at_b);
    void add_directed(int from, int to) { set_edge(from, to, Mark::Tail, Mark::Arrow); }
    void add_bidirected(int a, int b) { set_edge(a, b, Mark::Arrow, Mark::Arrow); }
    void add_undirected(int a, int b) { set_edge(a, b, Mark::Tail, Mark::Tail); }
    void remove_edge(int a, int b);

    bool adjacent(int a, int b) const;
    /// Mark at endpoint `at` of the edge between `at` and `other`.
    Mark mark_at(int at, int other) const;
    void set_mark_at(int at, int other, Mark m);

    EdgeKind kind(int a, int b) const;
    bool is_directed(int from, int to) const;
    bool is_bidirected(int a, int b) const;
    bool is_undirected(int a, int b) const;

    NodeSet adjacents(int x) const;
    NodeSet parents(int x) const;
    NodeSet children(int x) const;
    NodeSet siblings(int x) const;
    NodeSet non_children(int x) const;

    /// Reflexive ancestry over directed edges. With partial=true, o-> edges
    /// are read as directed as well.
    NodeSet ancestors(int x, bool partial = false) const;
    NodeSet ancestors_of(const NodeSet& xs, bool partial = false) const;
    NodeSet descendants(int x, bool partial = false) const;

    /// Kahn's algorithm over directed edges with smallest-index tie-break.
    std::vector<int> topological_order() const;

    std::vector<std::pair<int, int>> edges() const;
    int num_edges() const;

    bool has_circles() const;
    bool has_undirected() const;
    bool has_bidirected() const;
    bool all_directed() const;

    bool operator==(const MixedGraph& other) const;
    bool operator!=(const MixedGraph& other) const { return !(*this == other); }

private:
    void check_node(int x) const;
    std::uint8_t raw(int at, int other) const { return marks_[static_cast<std::size_t>(other) * n_ + at]; }

    int n_ = 0;
    std::vector<std::string> labels_;
    // marks_[other * n + at] holds 1 + mark at `at`; 0 means no edge.
    std::vector<std::uint8_t> marks_;
};

struct GraphKindReport {
    bool is_dag = false;
    bool is_admg = false;
    bool is_ancestral = false;
    /// Only defined when the graph is ancestral.
    std::optional<bool> is_maximal;
    bool has_almost_directed_cycle = false;
};

bool has_directed_cycle(const MixedGraph& g);
bool has_almost_directed_cycle(const MixedGraph& g);

/// Maximality is checked by enumerating conditioning sets on graphs of at
/// most 12 nodes and by the ancestral-set criterion beyond that.
GraphKindReport classify(const MixedGraph& g);

bool is_mag(const MixedGraph& g);

/// Exhaustive maximality check; throws on circle marks.
bool is_maximal(const MixedGraph& g);

struct EdgeLine {
    std::string a;
    Mark at_a;
    Mark at_b;
    std::string b;
};

/// Splits `A --> B` style lines. Returns nullopt for blank and comment lines.
std::optional<EdgeLine> parse_edge_line(const std::string& line);
std::string edge_arrow(Mark at_a, Mark at_b);

/// Reads the edge-list format. When `known` is given the node set and its
/// order are fixed to it and unknown labels are rejected.
MixedGraph read_edge_list(std::istream& in, const std::vector<std::string>* known = nullptr);
MixedGraph read_edge_list_file(const std::string& path, const std::vector<std::string>* known = nullptr);
void write_edge_list(std::ostream& out, const MixedGraph& g);
std::string to_edge_list(const MixedGraph& g);

}  // namespace ccd
