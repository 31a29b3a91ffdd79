#ifndef CBN_METRICS_HPP
#define CBN_METRICS_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>

#include <cbn/graph.hpp>

namespace cbn {

/// Fractional confusion counts over unordered node pairs. A learned edge
/// joining a true adjacency with the wrong or no orientation splits as half
/// a true positive and half a false negative.
struct ConfusionCounts {
    double tp = 0.0;
    double tn = 0.0;
    double fp = 0.0;
    double fn = 0.0;

    double true_edges() const { return tp + fn; }
    double true_independences() const { return tn + fp; }
};

/// Node sets must match by name; `learned` may be in any node order.
ConfusionCounts confusion(const MixedGraph& learned, const Dag& truth);
/// Adjacency-only variant: orientation is ignored.
ConfusionCounts skeleton_confusion(const MixedGraph& learned, const Dag& truth);

struct F1Score {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// tp = 0 gives all zeros.
F1Score f1(const ConfusionCounts& c);
double shd(const ConfusionCounts& c);
/// 0.5 (tp/a + tn/i - fp/i - fn/a); throws when a or i is zero.
double bsf(const ConfusionCounts& c, double true_edges, double true_independences);
inline double bsf(const ConfusionCounts& c) { return bsf(c, c.true_edges(), c.true_independences()); }

/// Learned edge count minus true edge count.
long edge_delta(const MixedGraph& learned, const MixedGraph& truth);

struct MetricsReport {
    std::string case_name;
    std::size_t n = 0;
    bool available = true; // false renders the metric columns as n/a
    ConfusionCounts counts;
    F1Score f1;
    double shd = 0.0;
    double bsf = 0.0;
    std::size_t components = 0;
    long edge_delta = 0;
    std::array<double, 3> phase_fractions{};
    double runtime_s = 0.0;
};

MetricsReport evaluate(const MixedGraph& learned, const Dag& truth);

/// `case,n,f1,shd,bsf,components,delta,phase1_frac,phase2_frac,phase3_frac,runtime_s`
void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const MetricsReport& r);

} // namespace cbn

#endif // CBN_METRICS_HPP
