#include <cbn/emsg.hpp>

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace cbn {

namespace {

struct ScoredPair {
    double score;
    int a;
    int b;
};

std::vector<ScoredPair> ascending_pairs(const MixedGraph& g, const MmdTable& table) {
    std::vector<ScoredPair> pairs;
    const int n = static_cast<int>(g.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (g.adjacent(a, b))
                pairs.push_back({table.pair(a, b), a, b});
    std::sort(pairs.begin(), pairs.end(), [](const ScoredPair& x, const ScoredPair& y) {
        return std::tie(x.score, x.a, x.b) < std::tie(y.score, y.a, y.b);
    });
    return pairs;
}

bool dominated(const MixedGraph& g, const MmdTable& table, int a, int b) {
    const double ab = table.pair(a, b);
    for (int c : g.neighbours(a)) {
        if (c == b || !g.adjacent(b, c))
            continue;
        if (table.pair(a, c) > ab && table.pair(b, c) > ab)
            return true;
    }
    return false;
}

} // namespace

std::size_t prune_pass(MixedGraph& skeleton, const MmdTable& table) {
    std::size_t removed = 0;
    for (const auto& p : ascending_pairs(skeleton, table)) {
        if (dominated(skeleton, table, p.a, p.b)) {
            skeleton.remove_edge(p.a, p.b);
            ++removed;
        }
    }
    return removed;
}

Emsg build_emsg(const MmdTable& table, const std::vector<std::string>& nodes) {
    if (table.size() != nodes.size())
        throw std::invalid_argument("build_emsg: score table does not match node list");
    Emsg out{MixedGraph(nodes), {}};
    const int n = static_cast<int>(nodes.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            out.graph.add_undirected(a, b);
    prune_pass(out.graph, table);

    out.incident_score.assign(nodes.size(), 0.0);
    for (const auto& e : out.graph.edges()) {
        const double s = table.pair(e.from, e.to);
        out.incident_score[e.from] += s;
        out.incident_score[e.to] += s;
    }
    return out;
}

} // namespace cbn
