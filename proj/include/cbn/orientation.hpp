#ifndef CBN_ORIENTATION_HPP
#define CBN_ORIENTATION_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <cbn/deadline.hpp>
#include <cbn/emsg.hpp>
#include <cbn/graph.hpp>
#include <cbn/mmd.hpp>
#include <cbn/score.hpp>

namespace cbn {

enum class Criterion : std::uint8_t { ci, bic, do_calculus, fallback, cycle_reverse };

const char* to_string(Criterion c);

struct OrientationEvent {
    int from;
    int to;
    Criterion criterion;
};

/// Phase-2 working graph. Adjacencies never change; only marks do.
struct OrientationState {
    MixedGraph graph;
    std::vector<int> node_order;
    std::vector<OrientationEvent> trace;
};

/// Nodes by descending total score shared with their skeleton neighbours;
/// ties keep column order.
std::vector<int> order_nodes(const Emsg& emsg);

OrientationState make_orientation_state(const Emsg& emsg);

/// Each sweep visits node_order and, for each node X, its undirected edges
/// X-W in column order. The functions below return the number of edges they
/// oriented.

/// X->W when some Y adjacent to W has (X, Y | W) labelled dependent: W is a
/// collider.
std::size_t orient_by_ci(OrientationState& state, const MmdTable& table);

/// Compares the BIC of the directed part plus X->W against plus W->X;
/// exact ties leave the edge undirected.
std::size_t orient_by_bic(OrientationState& state, const ScoreContext& ctx, const Deadline& deadline = {});

/// Prefers the direction under which intervening on the tail newly
/// influences more nodes through the added edge; ties are skipped.
std::size_t orient_by_do(OrientationState& state);

/// Earlier node in node_order becomes the parent.
std::size_t orient_fallback(OrientationState& state);

struct Phase2Result {
    Dag dag;
    std::vector<OrientationEvent> trace;
    std::size_t loops = 0;     // iterations of the BIC/do loop
    std::size_t forced = 0;    // edges settled by the fallback
    bool cut_short = false;    // deadline hit before the loop finished
};

Phase2Result run_phase2(const Emsg& emsg, const MmdTable& table, const ScoreContext& ctx,
                        const Deadline& deadline = {});

void write_orientation_trace(std::ostream& out, const std::vector<OrientationEvent>& trace,
                             const std::vector<std::string>& names);

} // namespace cbn

#endif // CBN_ORIENTATION_HPP
