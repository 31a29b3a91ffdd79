#include <cbn/search.hpp>

#include <algorithm>
#include <ostream>
#include <optional>

namespace cbn {

MoveConstraints MoveConstraints::unconstrained(std::size_t n, bool connected) {
    MoveConstraints c;
    c.num_nodes = n;
    c.connectivity_required = connected;
    return c;
}

MoveConstraints MoveConstraints::from_table(const MmdTable& table) {
    MoveConstraints c;
    const auto n = table.size();
    c.num_nodes = n;
    c.forbidden.assign(n * n, 0);
    for (int a = 0; a < static_cast<int>(n); ++a)
        for (int b = a + 1; b < static_cast<int>(n); ++b) {
            if (table.pair(a, b) < kDependenceFloor || table.independent_given_any(a, b)) {
                c.forbidden[a * n + b] = 1;
                c.forbidden[b * n + a] = 1;
            }
        }
    return c;
}

namespace {

// Adjacency snapshot so legality checks do not allocate per query.
struct Snapshot {
    explicit Snapshot(const MixedGraph& g) : n(static_cast<int>(g.size())), children(n), parents(n), marks(g.size() * g.size(), 0) {
        for (const auto& e : g.edges()) {
            children[e.from].push_back(e.to);
            parents[e.to].push_back(e.from);
            marks[e.from * n + e.to] = 1;
            marks[e.to * n + e.from] = 2;
        }
        edges = g.edge_count();
    }

    bool arc(int u, int v) const { return marks[u * n + v] == 1; }
    bool adjacent(int u, int v) const { return marks[u * n + v] != 0; }

    // Directed path from -> to, optionally ignoring the arc skip_from->skip_to.
    bool reaches(int from, int to, int skip_from = -1, int skip_to = -1) const {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{from};
        seen[from] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int c : children[x]) {
                if (x == skip_from && c == skip_to)
                    continue;
                if (c == to)
                    return true;
                if (!seen[c]) {
                    seen[c] = 1;
                    stack.push_back(c);
                }
            }
        }
        return false;
    }

    // Weak connectivity with the u-v adjacency removed.
    bool connected_without(int u, int v) const {
        if (edges < static_cast<std::size_t>(n))
            return false; // a tree has n-1 edges, so removing one disconnects
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        auto visit = [&](int x, int y) {
            if ((x == u && y == v) || (x == v && y == u))
                return;
            if (!seen[y]) {
                seen[y] = 1;
                ++count;
                stack.push_back(y);
            }
        };
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int c : children[x])
                visit(x, c);
            for (int p : parents[x])
                visit(x, p);
        }
        return count == n;
    }

    int n;
    std::vector<std::vector<int>> children;
    std::vector<std::vector<int>> parents;
    std::vector<std::uint8_t> marks;
    std::size_t edges = 0;
};

std::vector<int> with(std::vector<int> set, int x) {
    set.insert(std::lower_bound(set.begin(), set.end(), x), x);
    return set;
}

std::vector<int> without(std::vector<int> set, int x) {
    set.erase(std::remove(set.begin(), set.end(), x), set.end());
    return set;
}

} // namespace

void for_each_legal_move(const Dag& g, const MoveConstraints& c, const std::function<bool(const Move&)>& visit) {
    const Snapshot s(g.graph());
    const int n = s.n;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v || s.adjacent(u, v) || c.forbids(u, v))
                continue;
            if (s.reaches(v, u))
                continue;
            if (visit(Move{MoveKind::add, u, v}))
                return;
        }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!s.arc(u, v))
                continue;
            if (c.connectivity_required && !s.connected_without(u, v))
                continue;
            if (visit(Move{MoveKind::remove, u, v}))
                return;
        }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!s.arc(u, v))
                continue;
            if (s.reaches(u, v, u, v))
                continue;
            if (visit(Move{MoveKind::reverse, u, v}))
                return;
        }
}

std::vector<Move> legal_moves(const Dag& g, const MoveConstraints& c) {
    std::vector<Move> out;
    for_each_legal_move(g, c, [&](const Move& m) {
        out.push_back(m);
        return false;
    });
    return out;
}

double move_delta(const Dag& g, const Move& m, const ScoreContext& ctx) {
    const auto& graph = g.graph();
    const auto pa_to = graph.parents(m.to);
    switch (m.kind) {
    case MoveKind::add:
        return ctx.family_score(m.to, with(pa_to, m.from)) - ctx.family_score(m.to, pa_to);
    case MoveKind::remove:
        return ctx.family_score(m.to, without(pa_to, m.from)) - ctx.family_score(m.to, pa_to);
    case MoveKind::reverse:
        break;
    }
    const auto pa_from = graph.parents(m.from);
    return (ctx.family_score(m.to, without(pa_to, m.from)) - ctx.family_score(m.to, pa_to)) +
           (ctx.family_score(m.from, with(pa_from, m.to)) - ctx.family_score(m.from, pa_from));
}

namespace {

void record(SearchResult& r, const std::string& move) {
    r.trace.push_back({r.trace.size(), move, r.bic, weakly_connected_components(r.dag.graph()).count});
}

void climb(SearchResult& r, const ScoreContext& ctx, const MoveConstraints& c, const SearchOptions& options) {
    while (true) {
        if (options.deadline.expired()) {
            r.partial = true;
            return;
        }
        bool improved = false;
        Move chosen{};
        for_each_legal_move(r.dag, c, [&](const Move& m) {
            const double delta = move_delta(r.dag, m, ctx);
            if (score_improves(r.bic + delta, r.bic)) {
                chosen = m;
                improved = true;
                return true;
            }
            return false;
        });
        if (!improved)
            return;
        const auto label = to_string(chosen, r.dag.graph());
        r.dag = apply_move(r.dag, chosen);
        r.bic = ctx.bic(r.dag);
        ++r.moves;
        record(r, label);
        if (options.observer)
            options.observer(r.dag, r.bic);
    }
}

} // namespace

SearchResult hill_climb(const Dag& start, const ScoreContext& ctx, const MoveConstraints& c,
                        const SearchOptions& options) {
    SearchResult r;
    r.dag = start;
    r.bic = ctx.bic(start);
    record(r, "start");
    if (options.observer)
        options.observer(r.dag, r.bic);
    climb(r, ctx, c, options);
    return r;
}

namespace {

struct Candidate {
    double bic;
    std::size_t order;
    Move move;
};

std::vector<Candidate> rank_neighbours(const Dag& g, double bic, const ScoreContext& ctx, const MoveConstraints& c) {
    std::vector<Candidate> out;
    for_each_legal_move(g, c, [&](const Move& m) {
        out.push_back({bic + move_delta(g, m, ctx), out.size(), m});
        return false;
    });
    std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.bic > b.bic; });
    return out;
}

} // namespace

SearchResult tabu_escape(const Dag& start, const ScoreContext& ctx, const MoveConstraints& c,
                         const SearchOptions& options) {
    SearchResult r;
    r.dag = start;
    r.bic = ctx.bic(start);
    record(r, "start");

    TabuState tabu;
    const auto n = start.size();
    tabu.escape_cap = n * (n - (n ? 1 : 0));
    tabu.visited.insert(start.graph().hash());

    auto ranking = rank_neighbours(r.dag, r.bic, ctx, c);
    std::size_t next = 0;
    while (tabu.escapes < tabu.escape_cap) {
        if (options.deadline.expired()) {
            r.partial = true;
            break;
        }
        while (next < ranking.size() &&
               tabu.visited.count(apply_move(r.dag, ranking[next].move).graph().hash()) != 0)
            ++next;
        if (next == ranking.size())
            break;

        const Dag down = apply_move(r.dag, ranking[next].move);
        const double down_bic = ctx.bic(down);
        tabu.visited.insert(down.graph().hash());
        ++tabu.escapes;
        ++next;

        std::optional<Dag> up;
        for_each_legal_move(down, c, [&](const Move& m) {
            if (!score_improves(down_bic + move_delta(down, m, ctx), r.bic))
                return false;
            Dag candidate = apply_move(down, m);
            if (tabu.visited.count(candidate.graph().hash()) != 0)
                return false;
            up = std::move(candidate);
            return true;
        });
        if (!up)
            continue;

        r.dag = std::move(*up);
        r.bic = ctx.bic(r.dag);
        ++r.moves;
        record(r, "escape");
        if (options.observer)
            options.observer(r.dag, r.bic);
        climb(r, ctx, c, options);
        tabu.visited.insert(r.dag.graph().hash());
        if (r.partial)
            break;
        ranking = rank_neighbours(r.dag, r.bic, ctx, c);
        next = 0;
    }
    r.escapes = tabu.escapes;
    return r;
}

SearchResult run_phase3(const Dag& start, const ScoreContext& ctx, const MmdTable& table,
                        const SearchOptions& options) {
    const auto constraints = MoveConstraints::from_table(table);
    auto climbed = hill_climb(start, ctx, constraints, options);
    if (climbed.partial)
        return climbed;

    auto escaped = tabu_escape(climbed.dag, ctx, constraints, options);

    SearchResult out = std::move(escaped);
    out.moves += climbed.moves;
    auto trace = std::move(climbed.trace);
    for (std::size_t i = 1; i < out.trace.size(); ++i) {
        auto step = out.trace[i];
        step.step = trace.size();
        trace.push_back(std::move(step));
    }
    out.trace = std::move(trace);
    return out;
}

void write_search_trace(std::ostream& out, const std::vector<SearchStep>& trace) {
    out << "step,move,bic,components\n";
    for (const auto& s : trace)
        out << s.step << ',' << s.move << ',' << s.bic << ',' << s.components << '\n';
}

} // namespace cbn
