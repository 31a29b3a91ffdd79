#ifndef CBN_LEARNER_HPP
#define CBN_LEARNER_HPP

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include <cbn/dataset.hpp>
#include <cbn/emsg.hpp>
#include <cbn/graph.hpp>
#include <cbn/mmd.hpp>
#include <cbn/orientation.hpp>
#include <cbn/search.hpp>

namespace cbn {

/// Wall-clock seconds per learning phase.
struct PhaseTiming {
    double phase1_s = 0.0;
    double phase2_s = 0.0;
    double phase3_s = 0.0;
    double total_s = 0.0;

    /// Shares of phase1_s + phase2_s + phase3_s; they sum to 1.
    std::array<double, 3> fractions() const;
};

struct LearnOptions {
    std::optional<double> timeout_seconds;
    /// Forwarded to the phase-3 search.
    std::function<void(const Dag&, double)> search_observer;
};

struct LearnResult {
    Dag dag;
    double bic = 0.0;
    bool partial = false;

    MmdTable table;
    Emsg emsg;
    Dag phase2;
    std::vector<OrientationEvent> orientation_trace;
    std::size_t forced_orientations = 0;
    std::vector<SearchStep> search_trace;
    std::size_t escapes = 0;
    PhaseTiming timing;
};

/// Three phases: pairwise scores and the pruned skeleton; conditional tests
/// and orientation; constrained score-based search. The result is always a
/// single connected DAG. When a timeout is set each phase polls it between
/// atomic steps; on expiry the remaining conditional tests are skipped,
/// unresolved edges go to the fallback orientation and the search returns
/// its current graph, with `partial` set.
LearnResult learn_structure(const Dataset& d, const LearnOptions& options = {});

} // namespace cbn

#endif // CBN_LEARNER_HPP
