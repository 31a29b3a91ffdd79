#ifndef CBN_GRAPH_HPP
#define CBN_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbn {

/// Raised when a graph operation references a missing edge or would create a
/// self-loop or a second edge between the same pair.
class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Edge {
    int from;
    int to;
    bool directed; // for undirected edges from < to

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Node set plus at most one edge per unordered pair; each edge is either
/// undirected or directed. Node indices follow dataset column order.
class MixedGraph {
public:
    MixedGraph() = default;
    explicit MixedGraph(std::vector<std::string> nodes);

    std::size_t size() const { return m_nodes.size(); }
    const std::vector<std::string>& nodes() const { return m_nodes; }
    const std::string& name(int v) const { return m_nodes.at(v); }
    std::optional<int> index_of(const std::string& name) const;

    bool adjacent(int u, int v) const { return mark(u, v) != Mark::none; }
    bool has_directed(int u, int v) const { return mark(u, v) == Mark::out; }
    bool has_undirected(int u, int v) const { return mark(u, v) == Mark::undirected; }

    void add_undirected(int u, int v);
    void add_directed(int u, int v);
    void remove_edge(int u, int v);
    /// Turns the existing adjacency u-v into u->v, whatever its current mark.
    void orient(int u, int v);
    void make_undirected(int u, int v);

    std::vector<int> parents(int v) const;
    std::vector<int> children(int v) const;
    std::vector<int> neighbours(int v) const; // every adjacent node
    std::vector<int> undirected_neighbours(int v) const;

    std::size_t edge_count() const { return m_edge_count; }
    std::size_t undirected_count() const { return m_undirected_count; }
    /// Canonical edge list sorted by (min endpoint, max endpoint).
    std::vector<Edge> edges() const;

    std::uint64_t hash() const;
    friend bool operator==(const MixedGraph& a, const MixedGraph& b) {
        return a.m_nodes == b.m_nodes && a.m_marks == b.m_marks;
    }

private:
    enum class Mark : std::uint8_t { none, undirected, out, in };

    Mark mark(int u, int v) const { return m_marks[index(u, v)]; }
    std::size_t index(int u, int v) const;
    void set(int u, int v, Mark uv);

    std::vector<std::string> m_nodes;
    std::vector<Mark> m_marks; // n x n, kept mirror-consistent
    std::size_t m_edge_count = 0;
    std::size_t m_undirected_count = 0;
};

/// True iff the directed edges contain no directed cycle; undirected edges
/// are ignored.
bool is_acyclic(const MixedGraph& g);

struct Components {
    std::size_t count = 0;
    std::vector<int> label; // component id per node, ids in order of first node
};

/// Connectivity with every edge treated as undirected.
Components weakly_connected_components(const MixedGraph& g);
inline bool is_connected(const MixedGraph& g) { return weakly_connected_components(g).count <= 1; }

/// Nodes reachable from v along directed edges, v excluded, ascending.
std::vector<int> descendants(const MixedGraph& g, int v);
/// True if `to` is reachable from `from` along directed edges.
bool has_directed_path(const MixedGraph& g, int from, int to);

bool same_skeleton(const MixedGraph& a, const MixedGraph& b);

enum class MoveKind : std::uint8_t { add, remove, reverse };

/// add: insert from->to; remove: delete from->to; reverse: from->to becomes to->from.
struct Move {
    MoveKind kind;
    int from;
    int to;

    Move inverse() const;
    friend bool operator==(const Move&, const Move&) = default;
};

/// A MixedGraph whose edges are all directed and which contains no cycle.
class Dag {
public:
    Dag() = default;
    explicit Dag(std::vector<std::string> nodes) : m_graph(std::move(nodes)) {}
    /// Validates that every edge is directed and the graph is acyclic.
    explicit Dag(MixedGraph g);

    const MixedGraph& graph() const { return m_graph; }
    std::size_t size() const { return m_graph.size(); }
    std::vector<int> parents(int v) const { return m_graph.parents(v); }
    bool has_edge(int u, int v) const { return m_graph.has_directed(u, v); }

    friend bool operator==(const Dag&, const Dag&) = default;

private:
    friend Dag apply_move(const Dag&, const Move&);
    struct unchecked_t {};
    Dag(MixedGraph g, unchecked_t) : m_graph(std::move(g)) {}

    MixedGraph m_graph;
};

std::string to_string(const Move& m, const MixedGraph& g);

/// Structural application only; acyclicity and connectivity of the result
/// are the caller's responsibility.
Dag apply_move(const Dag& g, const Move& move);

/// Edge-list CSV: optional `#nodes:` line, header `parent,child[,direction]`.
MixedGraph read_graph(std::istream& in);
MixedGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const MixedGraph& g);
void write_graph_file(const std::string& path, const MixedGraph& g);

/// Reorders `g` to the node order of `reference`; node sets must match.
MixedGraph align_nodes(const MixedGraph& g, const std::vector<std::string>& reference);

} // namespace cbn

#endif // CBN_GRAPH_HPP
