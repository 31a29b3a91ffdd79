#ifndef CBN_MMD_HPP
#define CBN_MMD_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <cbn/dataset.hpp>
#include <cbn/deadline.hpp>

namespace cbn {

// Thresholds of the triple classification rules.
inline constexpr double kDependenceFloor = 0.05;
inline constexpr double kDependenceRatio = 1.5;
inline constexpr double kIndependenceRatio = 0.5;

enum class TripleLabel : std::uint8_t { insignificant, dependent, independent };

const char* to_string(TripleLabel label);

/// Marginal discrepancy score of a two-way count table laid out row-major as
/// rows x cols (rows index the first variable). Averages the mean and max
/// absolute differences between marginal and conditional distributions in
/// both directions. States with zero count are left out of every average.
double mmd_from_counts(std::span<const std::uint64_t> counts, std::size_t rows, std::size_t cols);

double mmd_pair(const Dataset& d, std::size_t a, std::size_t b);

/// Stratified score: sum over states c of C with nonzero count of
/// P(C = c) * mmd_pair restricted to the rows with C = c.
double mmd_conditional(const Dataset& d, std::size_t a, std::size_t b, std::size_t c);

/// Strict comparisons: dependent iff conditional > 0.05 and > 1.5 * marginal;
/// independent iff conditional < 0.05 and < 0.5 * marginal.
TripleLabel classify_triple(double marginal, double conditional);

struct Triple {
    int a; // a < b
    int b;
    int given;
    double score;
};

/// All-pairs marginal scores plus per-triple conditional scores and labels.
class MmdTable {
public:
    MmdTable() = default;
    explicit MmdTable(std::size_t num_variables);

    std::size_t size() const { return m_n; }

    double pair(int a, int b) const { return m_pairs[pair_index(a, b)]; }
    void set_pair(int a, int b, double score);

    bool has_triple(int a, int b, int given) const { return m_triple_set[triple_index(a, b, given)] != 0; }
    double triple(int a, int b, int given) const { return m_triples[triple_index(a, b, given)]; }
    TripleLabel label(int a, int b, int given) const { return m_labels[triple_index(a, b, given)]; }
    void set_triple(int a, int b, int given, double score, TripleLabel label);

    /// True if some conditioning node classifies (a, b) as independent.
    bool independent_given_any(int a, int b) const;

    std::vector<Triple> dependent_list() const;
    std::vector<Triple> independent_list() const;

    std::size_t pair_tests() const { return m_pair_tests; }
    std::size_t triple_tests() const { return m_triple_tests; }
    /// Every pair and every triple has been scored.
    bool complete() const;

private:
    std::size_t pair_index(int a, int b) const;
    std::size_t triple_index(int a, int b, int given) const;
    std::vector<Triple> collect(TripleLabel label) const;

    std::size_t m_n = 0;
    std::vector<double> m_pairs;
    std::vector<double> m_triples;
    std::vector<TripleLabel> m_labels;
    std::vector<std::uint8_t> m_triple_set;
    std::size_t m_pair_tests = 0;
    std::size_t m_triple_tests = 0;
};

/// Marginal tests for every unordered pair: |V|(|V|-1)/2 of them.
MmdTable score_pairs(const Dataset& d);

/// Conditional tests for every unordered pair and every third node:
/// |V|(|V|-1)(|V|-2)/2 of them. Returns false if the deadline cut the sweep
/// short; unscored triples keep the insignificant label.
bool score_triples(MmdTable& table, const Dataset& d, const Deadline& deadline = {});

MmdTable build_mmd_table(const Dataset& d);

void write_pair_scores(std::ostream& out, const MmdTable& table, const std::vector<std::string>& names);
void write_triple_scores(std::ostream& out, const MmdTable& table, const std::vector<std::string>& names);

} // namespace cbn

#endif // CBN_MMD_HPP
