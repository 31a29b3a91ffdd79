#ifndef CBN_SCORE_HPP
#define CBN_SCORE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <cbn/dataset.hpp>
#include <cbn/graph.hpp>

namespace cbn {

/// Relative tolerance under which two scores count as equal. Markov
/// equivalent graphs score identically in exact arithmetic but may differ in
/// the last bits once summed in a different order.
inline constexpr double kScoreTolerance = 1e-9;

bool scores_tied(double a, double b);
/// candidate > reference by more than the tie tolerance.
bool score_improves(double candidate, double reference);

std::vector<std::size_t> arities(const Dataset& d);

/// (r - 1) * product of parent arities.
std::uint64_t family_free_parameters(std::size_t arity, std::span<const std::size_t> parent_arities);
std::uint64_t free_parameters(const MixedGraph& g, std::span<const std::size_t> arities);

/// Decomposable BIC over a fixed dataset, base-2 logarithms throughout:
///   BIC = LL - (log2 N / 2) p,  LL = sum N_ijk log2(N_ijk / N_ij).
/// Family terms are memoised per (node, parent set). Not thread-safe.
class ScoreContext {
public:
    explicit ScoreContext(const Dataset& d);

    const Dataset& data() const { return *m_data; }
    double penalty_weight() const { return m_penalty; }

    double family_log_likelihood(int node, std::span<const int> parents) const;
    double family_score(int node, std::span<const int> parents) const;

    /// Directed edges only; undirected edges are treated as absent.
    double log_likelihood(const MixedGraph& g) const;
    double bic(const MixedGraph& g) const;
    double bic(const Dag& g) const { return bic(g.graph()); }

    std::size_t cache_size() const { return m_cache.size(); }

private:
    struct Family {
        double log_likelihood;
        double score;
    };
    const Family& family(int node, std::span<const int> parents) const;

    const Dataset* m_data;
    std::vector<std::size_t> m_arities;
    double m_penalty;
    mutable std::map<std::vector<int>, Family> m_cache;
};

double log_likelihood(const Dag& g, const Dataset& d);
double bic(const Dag& g, const Dataset& d);

} // namespace cbn

#endif // CBN_SCORE_HPP
