#include <cbn/metrics.hpp>

#include <cbn/error.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cbn {

namespace {

MixedGraph aligned(const MixedGraph& learned, const Dag& truth) {
    try {
        return align_nodes(learned, truth.graph().nodes());
    } catch (const DataError& e) {
        throw DataError(std::string("metrics: node sets differ: ") + e.what());
    }
}

ConfusionCounts count_pairs(const MixedGraph& learned, const Dag& truth, bool orientation) {
    const auto g = aligned(learned, truth);
    const auto& t = truth.graph();
    const int n = static_cast<int>(t.size());
    ConfusionCounts c;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const bool in_truth = t.adjacent(u, v);
            const bool in_learned = g.adjacent(u, v);
            if (in_truth && in_learned) {
                const bool matches = (t.has_directed(u, v) && g.has_directed(u, v)) ||
                                     (t.has_directed(v, u) && g.has_directed(v, u));
                if (matches || !orientation) {
                    c.tp += 1.0;
                } else {
                    c.tp += 0.5;
                    c.fn += 0.5;
                }
            } else if (in_truth) {
                c.fn += 1.0;
            } else if (in_learned) {
                c.fp += 1.0;
            } else {
                c.tn += 1.0;
            }
        }
    return c;
}

} // namespace

ConfusionCounts confusion(const MixedGraph& learned, const Dag& truth) {
    return count_pairs(learned, truth, true);
}

ConfusionCounts skeleton_confusion(const MixedGraph& learned, const Dag& truth) {
    return count_pairs(learned, truth, false);
}

F1Score f1(const ConfusionCounts& c) {
    if (c.tp <= 0.0)
        return {};
    F1Score s;
    s.precision = c.tp / (c.tp + c.fp);
    s.recall = c.tp / (c.tp + c.fn);
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

double shd(const ConfusionCounts& c) {
    return c.fp + c.fn;
}

double bsf(const ConfusionCounts& c, double true_edges, double true_independences) {
    if (true_edges <= 0.0 || true_independences <= 0.0)
        throw std::domain_error("bsf: undefined when the true graph is empty or complete");
    return 0.5 * (c.tp / true_edges + c.tn / true_independences - c.fp / true_independences - c.fn / true_edges);
}

long edge_delta(const MixedGraph& learned, const MixedGraph& truth) {
    return static_cast<long>(learned.edge_count()) - static_cast<long>(truth.edge_count());
}

MetricsReport evaluate(const MixedGraph& learned, const Dag& truth) {
    MetricsReport r;
    r.counts = confusion(learned, truth);
    r.f1 = f1(r.counts);
    r.shd = shd(r.counts);
    r.bsf = bsf(r.counts);
    r.components = weakly_connected_components(learned).count;
    r.edge_delta = edge_delta(learned, truth.graph());
    return r;
}

void write_report_header(std::ostream& out) {
    out << "case,n,f1,shd,bsf,components,delta,phase1_frac,phase2_frac,phase3_frac,runtime_s\n";
}

void write_report_row(std::ostream& out, const MetricsReport& r) {
    std::ostringstream row;
    row << std::setprecision(10);
    row << r.case_name << ',' << r.n << ',';
    if (r.available) {
        row << r.f1.f1 << ',' << r.shd << ',' << r.bsf << ',' << r.components << ',' << r.edge_delta << ','
            << r.phase_fractions[0] << ',' << r.phase_fractions[1] << ',' << r.phase_fractions[2] << ',';
    } else {
        row << "n/a,n/a,n/a,n/a,n/a,n/a,n/a,n/a,";
    }
    row << r.runtime_s << '\n';
    out << row.str();
}

} // namespace cbn
