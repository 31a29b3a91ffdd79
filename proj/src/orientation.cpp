#include <cbn/orientation.hpp>

#include <algorithm>
#include <numeric>
#include <ostream>
#include <utility>

namespace cbn {

const char* to_string(Criterion c) {
    switch (c) {
    case Criterion::ci:
        return "CI";
    case Criterion::bic:
        return "BIC";
    case Criterion::do_calculus:
        return "DO";
    case Criterion::fallback:
        return "FALLBACK";
    case Criterion::cycle_reverse:
        break;
    }
    return "CYCLE-REVERSE";
}

std::vector<int> order_nodes(const Emsg& emsg) {
    std::vector<int> order(emsg.graph.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return emsg.incident_score[a] > emsg.incident_score[b]; });
    return order;
}

OrientationState make_orientation_state(const Emsg& emsg) {
    return OrientationState{emsg.graph, order_nodes(emsg), {}};
}

namespace {

// Orients x->w; if that closes a directed cycle the edge is reversed, and if
// the reverse also does it goes back to undirected.
bool orient_checked(OrientationState& state, int x, int w, Criterion why) {
    auto& g = state.graph;
    if (!has_directed_path(g, w, x)) {
        g.orient(x, w);
        state.trace.push_back({x, w, why});
        return true;
    }
    if (!has_directed_path(g, x, w)) {
        g.orient(w, x);
        state.trace.push_back({w, x, Criterion::cycle_reverse});
        return true;
    }
    g.make_undirected(x, w);
    return false;
}

template <typename Visit>
std::size_t sweep(OrientationState& state, Visit visit) {
    std::size_t oriented = 0;
    for (int x : state.node_order) {
        for (int w : state.graph.undirected_neighbours(x)) {
            // Earlier visits in this sweep may have oriented it already.
            if (!state.graph.has_undirected(x, w))
                continue;
            oriented += visit(x, w) ? 1 : 0;
        }
    }
    return oriented;
}

} // namespace

std::size_t orient_by_ci(OrientationState& state, const MmdTable& table) {
    return sweep(state, [&](int x, int w) {
        for (int y : state.graph.neighbours(w)) {
            if (y == x)
                continue;
            if (table.has_triple(x, y, w) && table.label(x, y, w) == TripleLabel::dependent)
                return orient_checked(state, x, w, Criterion::ci);
        }
        return false;
    });
}

std::size_t orient_by_bic(OrientationState& state, const ScoreContext& ctx, const Deadline& deadline) {
    return sweep(state, [&](int x, int w) {
        if (deadline.expired())
            return false;
        // Undirected edges other than the candidate count as absent.
        MixedGraph forward = state.graph;
        forward.orient(x, w);
        MixedGraph backward = state.graph;
        backward.orient(w, x);
        const double s_forward = ctx.bic(forward);
        const double s_backward = ctx.bic(backward);
        if (scores_tied(s_forward, s_backward))
            return false;
        return s_forward > s_backward ? orient_checked(state, x, w, Criterion::bic)
                                      : orient_checked(state, w, x, Criterion::bic);
    });
}

namespace {

std::size_t newly_influenced(const MixedGraph& g, int tail, int head) {
    const auto before = descendants(g, tail);
    MixedGraph with_edge = g;
    with_edge.orient(tail, head);
    return descendants(with_edge, tail).size() - before.size();
}

} // namespace

std::size_t orient_by_do(OrientationState& state) {
    return sweep(state, [&](int x, int w) {
        const auto n_xw = newly_influenced(state.graph, x, w);
        const auto n_wx = newly_influenced(state.graph, w, x);
        if (n_xw == n_wx)
            return false;
        return n_xw > n_wx ? orient_checked(state, x, w, Criterion::do_calculus)
                           : orient_checked(state, w, x, Criterion::do_calculus);
    });
}

std::size_t orient_fallback(OrientationState& state) {
    std::vector<std::size_t> rank(state.node_order.size());
    for (std::size_t i = 0; i < state.node_order.size(); ++i)
        rank[state.node_order[i]] = i;
    return sweep(state, [&](int x, int w) {
        return rank[x] < rank[w] ? orient_checked(state, x, w, Criterion::fallback)
                                 : orient_checked(state, w, x, Criterion::fallback);
    });
}

Phase2Result run_phase2(const Emsg& emsg, const MmdTable& table, const ScoreContext& ctx,
                        const Deadline& deadline) {
    auto state = make_orientation_state(emsg);
    Phase2Result result;
    orient_by_ci(state, table);
    while (state.graph.undirected_count() > 0) {
        if (deadline.expired()) {
            result.cut_short = true;
            break;
        }
        ++result.loops;
        std::size_t progress = orient_by_bic(state, ctx, deadline);
        progress += orient_by_do(state);
        if (progress == 0)
            break;
    }
    if (state.graph.undirected_count() > 0) {
        const auto before = state.graph.undirected_count();
        orient_fallback(state);
        result.forced = before - state.graph.undirected_count();
    }
    if (state.graph.undirected_count() > 0 || !is_acyclic(state.graph))
        throw GraphError("phase 2: could not complete an acyclic orientation of the skeleton");
    result.dag = Dag(std::move(state.graph));
    result.trace = std::move(state.trace);
    return result;
}

void write_orientation_trace(std::ostream& out, const std::vector<OrientationEvent>& trace,
                             const std::vector<std::string>& names) {
    for (const auto& e : trace)
        out << names[e.from] << "->" << names[e.to] << ", " << to_string(e.criterion) << '\n';
}

} // namespace cbn
