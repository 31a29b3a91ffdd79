#include <cbn/graph.hpp>

#include <cbn/error.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "csv.hpp"

namespace cbn {

MixedGraph::MixedGraph(std::vector<std::string> nodes)
    : m_nodes(std::move(nodes)), m_marks(m_nodes.size() * m_nodes.size(), Mark::none) {
    std::unordered_set<std::string> seen;
    for (const auto& n : m_nodes)
        if (!seen.insert(n).second)
            throw GraphError("graph: duplicate node '" + n + "'");
}

std::optional<int> MixedGraph::index_of(const std::string& name) const {
    auto it = std::find(m_nodes.begin(), m_nodes.end(), name);
    if (it == m_nodes.end())
        return std::nullopt;
    return static_cast<int>(it - m_nodes.begin());
}

std::size_t MixedGraph::index(int u, int v) const {
    const auto n = static_cast<int>(m_nodes.size());
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw GraphError("graph: node index out of range");
    return static_cast<std::size_t>(u) * m_nodes.size() + static_cast<std::size_t>(v);
}

void MixedGraph::set(int u, int v, Mark uv) {
    Mark vu = uv;
    if (uv == Mark::out)
        vu = Mark::in;
    else if (uv == Mark::in)
        vu = Mark::out;
    const Mark old = m_marks[index(u, v)];
    if (old != Mark::none)
        --m_edge_count;
    if (old == Mark::undirected)
        --m_undirected_count;
    if (uv != Mark::none)
        ++m_edge_count;
    if (uv == Mark::undirected)
        ++m_undirected_count;
    m_marks[index(u, v)] = uv;
    m_marks[index(v, u)] = vu;
}

void MixedGraph::add_undirected(int u, int v) {
    if (u == v)
        throw GraphError("graph: self-loop on '" + name(u) + "'");
    if (adjacent(u, v))
        throw GraphError("graph: " + name(u) + " and " + name(v) + " are already adjacent");
    set(u, v, Mark::undirected);
}

void MixedGraph::add_directed(int u, int v) {
    if (u == v)
        throw GraphError("graph: self-loop on '" + name(u) + "'");
    if (adjacent(u, v))
        throw GraphError("graph: " + name(u) + " and " + name(v) + " are already adjacent");
    set(u, v, Mark::out);
}

void MixedGraph::remove_edge(int u, int v) {
    if (!adjacent(u, v))
        throw GraphError("graph: no edge between " + name(u) + " and " + name(v));
    set(u, v, Mark::none);
}

void MixedGraph::orient(int u, int v) {
    if (!adjacent(u, v))
        throw GraphError("graph: no edge between " + name(u) + " and " + name(v));
    set(u, v, Mark::out);
}

void MixedGraph::make_undirected(int u, int v) {
    if (!adjacent(u, v))
        throw GraphError("graph: no edge between " + name(u) + " and " + name(v));
    set(u, v, Mark::undirected);
}

std::vector<int> MixedGraph::parents(int v) const {
    std::vector<int> out;
    for (int u = 0; u < static_cast<int>(size()); ++u)
        if (mark(u, v) == Mark::out)
            out.push_back(u);
    return out;
}

std::vector<int> MixedGraph::children(int v) const {
    std::vector<int> out;
    for (int u = 0; u < static_cast<int>(size()); ++u)
        if (mark(v, u) == Mark::out)
            out.push_back(u);
    return out;
}

std::vector<int> MixedGraph::neighbours(int v) const {
    std::vector<int> out;
    for (int u = 0; u < static_cast<int>(size()); ++u)
        if (mark(v, u) != Mark::none)
            out.push_back(u);
    return out;
}

std::vector<int> MixedGraph::undirected_neighbours(int v) const {
    std::vector<int> out;
    for (int u = 0; u < static_cast<int>(size()); ++u)
        if (mark(v, u) == Mark::undirected)
            out.push_back(u);
    return out;
}

std::vector<Edge> MixedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_edge_count);
    const int n = static_cast<int>(size());
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            switch (mark(u, v)) {
            case Mark::none:
                break;
            case Mark::undirected:
                out.push_back({u, v, false});
                break;
            case Mark::out:
                out.push_back({u, v, true});
                break;
            case Mark::in:
                out.push_back({v, u, true});
                break;
            }
        }
    }
    return out;
}

std::uint64_t MixedGraph::hash() const {
    // FNV-1a over the canonical edge list.
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    mix(size());
    for (const auto& e : edges()) {
        mix(static_cast<std::uint64_t>(e.from));
        mix(static_cast<std::uint64_t>(e.to));
        mix(e.directed ? 1 : 0);
    }
    return h;
}

bool is_acyclic(const MixedGraph& g) {
    // Kahn's algorithm over directed edges.
    const int n = static_cast<int>(g.size());
    std::vector<int> indegree(n, 0);
    for (const auto& e : g.edges())
        if (e.directed)
            ++indegree[e.to];
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
        if (indegree[v] == 0)
            ready.push_back(v);
    int removed = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++removed;
        for (int c : g.children(v))
            if (--indegree[c] == 0)
                ready.push_back(c);
    }
    return removed == n;
}

Components weakly_connected_components(const MixedGraph& g) {
    const int n = static_cast<int>(g.size());
    Components comps;
    comps.label.assign(n, -1);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comps.label[s] != -1)
            continue;
        const int id = static_cast<int>(comps.count++);
        comps.label[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : g.neighbours(v)) {
                if (comps.label[u] == -1) {
                    comps.label[u] = id;
                    stack.push_back(u);
                }
            }
        }
    }
    return comps;
}

std::vector<int> descendants(const MixedGraph& g, int v) {
    const int n = static_cast<int>(g.size());
    std::vector<char> seen(n, 0);
    std::vector<int> stack{v};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int c : g.children(x)) {
            if (!seen[c]) {
                seen[c] = 1;
                stack.push_back(c);
            }
        }
    }
    seen[v] = 0;
    std::vector<int> out;
    for (int u = 0; u < n; ++u)
        if (seen[u])
            out.push_back(u);
    return out;
}

bool has_directed_path(const MixedGraph& g, int from, int to) {
    if (from == to)
        return true;
    auto d = descendants(g, from);
    return std::binary_search(d.begin(), d.end(), to);
}

bool same_skeleton(const MixedGraph& a, const MixedGraph& b) {
    if (a.nodes() != b.nodes())
        return false;
    const int n = static_cast<int>(a.size());
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (a.adjacent(u, v) != b.adjacent(u, v))
                return false;
    return true;
}

Dag::Dag(MixedGraph g) : m_graph(std::move(g)) {
    if (m_graph.undirected_count() != 0)
        throw GraphError("dag: graph contains undirected edges");
    if (!is_acyclic(m_graph))
        throw GraphError("dag: graph contains a directed cycle");
}

Move Move::inverse() const {
    switch (kind) {
    case MoveKind::add:
        return {MoveKind::remove, from, to};
    case MoveKind::remove:
        return {MoveKind::add, from, to};
    case MoveKind::reverse:
        break;
    }
    return {MoveKind::reverse, to, from};
}

std::string to_string(const Move& m, const MixedGraph& g) {
    const char* verb = m.kind == MoveKind::add ? "add" : m.kind == MoveKind::remove ? "remove" : "reverse";
    return std::string(verb) + "(" + g.name(m.from) + "->" + g.name(m.to) + ")";
}

Dag apply_move(const Dag& g, const Move& move) {
    MixedGraph out = g.graph();
    switch (move.kind) {
    case MoveKind::add:
        out.add_directed(move.from, move.to);
        break;
    case MoveKind::remove:
        if (!out.has_directed(move.from, move.to))
            throw GraphError("apply_move: no edge " + out.name(move.from) + "->" + out.name(move.to));
        out.remove_edge(move.from, move.to);
        break;
    case MoveKind::reverse:
        if (!out.has_directed(move.from, move.to))
            throw GraphError("apply_move: no edge " + out.name(move.from) + "->" + out.name(move.to));
        out.orient(move.to, move.from);
        break;
    }
    return Dag(std::move(out), Dag::unchecked_t{});
}

MixedGraph read_graph(std::istream& in) {
    std::vector<std::string> nodes;
    std::unordered_set<std::string> known;
    auto note = [&](const std::string& n) {
        if (known.insert(n).second)
            nodes.push_back(n);
    };
    struct Row {
        std::string a, b;
        bool directed;
        std::size_t line;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto view = detail::strip_cr(line);
        if (view.empty())
            continue;
        if (view.front() == '#') {
            constexpr std::string_view tag = "#nodes:";
            if (view.substr(0, tag.size()) == tag) {
                for (const auto& cell : detail::split_csv(view.substr(tag.size()))) {
                    auto name = detail::trim(cell);
                    if (!name.empty())
                        note(name);
                }
            }
            continue;
        }
        auto cells = detail::split_csv(view);
        if (!header_seen) {
            if (cells.size() < 2 || cells[0] != "parent" || cells[1] != "child")
                throw DataError("graph: line " + std::to_string(line_no) + ": expected header 'parent,child'");
            header_seen = true;
            continue;
        }
        if (cells.size() < 2 || cells.size() > 3 || cells[0].empty() || cells[1].empty())
            throw DataError("graph: line " + std::to_string(line_no) + ": expected 'parent,child[,direction]'");
        bool directed = true;
        if (cells.size() == 3) {
            if (cells[2] == "undirected")
                directed = false;
            else if (cells[2] != "directed" && !cells[2].empty())
                throw DataError("graph: line " + std::to_string(line_no) + ": unknown direction '" + cells[2] + "'");
        }
        note(cells[0]);
        note(cells[1]);
        rows.push_back({cells[0], cells[1], directed, line_no});
    }
    if (!header_seen)
        throw DataError("graph: missing header 'parent,child'");
    MixedGraph g(nodes);
    for (const auto& r : rows) {
        int a = *g.index_of(r.a);
        int b = *g.index_of(r.b);
        try {
            if (r.directed)
                g.add_directed(a, b);
            else
                g.add_undirected(a, b);
        } catch (const GraphError& e) {
            throw DataError("graph: line " + std::to_string(r.line) + ": " + e.what());
        }
    }
    return g;
}

MixedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("graph: cannot open '" + path + "'");
    return read_graph(in);
}

void write_graph(std::ostream& out, const MixedGraph& g) {
    out << "#nodes:";
    for (std::size_t i = 0; i < g.size(); ++i)
        out << (i ? "," : "") << g.nodes()[i];
    out << '\n';
    const bool mixed = g.undirected_count() != 0;
    out << (mixed ? "parent,child,direction\n" : "parent,child\n");
    for (const auto& e : g.edges()) {
        out << g.name(e.from) << ',' << g.name(e.to);
        if (mixed)
            out << ',' << (e.directed ? "directed" : "undirected");
        out << '\n';
    }
}

void write_graph_file(const std::string& path, const MixedGraph& g) {
    std::ofstream out(path);
    if (!out)
        throw DataError("graph: cannot write '" + path + "'");
    write_graph(out, g);
}

MixedGraph align_nodes(const MixedGraph& g, const std::vector<std::string>& reference) {
    if (g.size() != reference.size())
        throw DataError("graph: node sets differ in size");
    std::vector<int> map(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = std::find(reference.begin(), reference.end(), g.nodes()[i]);
        if (idx == reference.end())
            throw DataError("graph: node '" + g.nodes()[i] + "' is not in the reference node set");
        map[i] = static_cast<int>(idx - reference.begin());
    }
    MixedGraph out(reference);
    for (const auto& e : g.edges()) {
        if (e.directed)
            out.add_directed(map[e.from], map[e.to]);
        else
            out.add_undirected(map[e.from], map[e.to]);
    }
    return out;
}

} // namespace cbn
