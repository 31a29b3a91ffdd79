#ifndef CBN_EMSG_HPP
#define CBN_EMSG_HPP

#include <string>
#include <vector>

#include <cbn/graph.hpp>
#include <cbn/mmd.hpp>

namespace cbn {

/// Undirected skeleton produced by pruning the complete graph with the
/// pairwise scores. Each surviving edge keeps its score in `table`.
struct Emsg {
    MixedGraph graph;
    std::vector<double> incident_score; // per node, sum of surviving edge scores
};

/// Visits edges of the complete graph in ascending score order (ties by
/// node index pair) and removes A-B when a current common neighbour C has
/// score(A,C) > score(A,B) < score(B,C).
Emsg build_emsg(const MmdTable& table, const std::vector<std::string>& nodes);

/// One more removal sweep over an existing skeleton; returns the number of
/// edges it removed.
std::size_t prune_pass(MixedGraph& skeleton, const MmdTable& table);

} // namespace cbn

#endif // CBN_EMSG_HPP
