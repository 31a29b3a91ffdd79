#ifndef CBN_SEARCH_HPP
#define CBN_SEARCH_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_set>
#include <vector>

#include <cbn/deadline.hpp>
#include <cbn/graph.hpp>
#include <cbn/mmd.hpp>
#include <cbn/score.hpp>

namespace cbn {

/// Restrictions on the neighbourhood explored by the search. Pruning only
/// ever blocks arc additions.
struct MoveConstraints {
    std::size_t num_nodes = 0;
    std::vector<std::uint8_t> forbidden; // symmetric n x n
    bool connectivity_required = true;

    bool forbids(int a, int b) const {
        return !forbidden.empty() && forbidden[static_cast<std::size_t>(a) * num_nodes + b] != 0;
    }

    /// Nothing forbidden; connectivity still enforced unless switched off.
    static MoveConstraints unconstrained(std::size_t n, bool connected = true);
    /// Forbids adding an arc between a and b when score(a, b) < 0.05 or some
    /// third node classifies the pair as conditionally independent.
    static MoveConstraints from_table(const MmdTable& table);
};

/// add/remove/reverse moves whose result is acyclic, stays within the
/// required component count, and (for additions) touches no forbidden pair.
/// Order: additions, removals, reversals; each by (from, to).
std::vector<Move> legal_moves(const Dag& g, const MoveConstraints& c);

/// Visits legal moves in legal_moves order until `visit` returns true.
void for_each_legal_move(const Dag& g, const MoveConstraints& c, const std::function<bool(const Move&)>& visit);

/// BIC(apply_move(g, m)) - BIC(g), from the two affected family terms.
double move_delta(const Dag& g, const Move& m, const ScoreContext& ctx);

struct SearchStep {
    std::size_t step;
    std::string move;
    double bic;
    std::size_t components;
};

struct SearchOptions {
    Deadline deadline;
    /// Called with every graph the search adopts, starting graph included.
    std::function<void(const Dag&, double)> observer;
};

struct TabuState {
    std::unordered_set<std::uint64_t> visited;
    std::size_t escapes = 0;
    std::size_t escape_cap = 0; // |V|(|V|-1)
};

struct SearchResult {
    Dag dag;
    double bic = 0.0;
    std::size_t moves = 0;   // accepted improving moves
    std::size_t escapes = 0; // downhill neighbours examined by Tabu
    bool partial = false;    // the deadline stopped the search
    std::vector<SearchStep> trace;
};

/// First-improvement ascent; stops when a full scan finds no strictly
/// improving legal move.
SearchResult hill_climb(const Dag& start, const ScoreContext& ctx, const MoveConstraints& c,
                        const SearchOptions& options = {});

/// Single-depth escape from a hill-climbing fixed point: steps to the least
/// damaging unvisited neighbour G' and looks for a neighbour G'' of G' that
/// beats the current graph, restarting hill climbing from G'' on success.
SearchResult tabu_escape(const Dag& start, const ScoreContext& ctx, const MoveConstraints& c,
                         const SearchOptions& options = {});

SearchResult run_phase3(const Dag& start, const ScoreContext& ctx, const MmdTable& table,
                        const SearchOptions& options = {});

void write_search_trace(std::ostream& out, const std::vector<SearchStep>& trace);

} // namespace cbn

#endif // CBN_SEARCH_HPP
