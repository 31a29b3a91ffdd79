#include <cbn/mmd.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace cbn {

const char* to_string(TripleLabel label) {
    switch (label) {
    case TripleLabel::dependent:
        return "CD";
    case TripleLabel::independent:
        return "CI";
    case TripleLabel::insignificant:
        break;
    }
    return "insignificant";
}

namespace {

struct Directional {
    double mean = 0.0;
    double max = 0.0;
};

// Discrepancy of the column variable given each supported row state.
// `at(r, c)` reads the table so the same arithmetic serves both directions.
template <typename At>
Directional directional(At at, std::size_t rows, std::size_t cols, std::uint64_t total) {
    std::vector<std::uint64_t> row_sum(rows, 0), col_sum(cols, 0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            row_sum[r] += at(r, c);
            col_sum[c] += at(r, c);
        }
    std::size_t rows_supported = 0, cols_supported = 0;
    for (auto s : row_sum)
        rows_supported += s > 0;
    for (auto s : col_sum)
        cols_supported += s > 0;

    Directional out;
    for (std::size_t r = 0; r < rows; ++r) {
        if (row_sum[r] == 0)
            continue;
        double inner = 0.0;
        double worst = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            if (col_sum[c] == 0)
                continue;
            const double prior = static_cast<double>(col_sum[c]) / static_cast<double>(total);
            const double posterior = static_cast<double>(at(r, c)) / static_cast<double>(row_sum[r]);
            const double diff = std::abs(prior - posterior);
            inner += diff;
            worst = std::max(worst, diff);
        }
        out.mean += inner / static_cast<double>(cols_supported);
        out.max += worst;
    }
    out.mean /= static_cast<double>(rows_supported);
    out.max /= static_cast<double>(rows_supported);
    return out;
}

std::vector<std::uint64_t> pair_counts(const Dataset& d, std::size_t a, std::size_t b) {
    const auto sa = d.variable(a).arity();
    const auto sb = d.variable(b).arity();
    std::vector<std::uint64_t> counts(sa * sb, 0);
    const auto ca = d.column(a);
    const auto cb = d.column(b);
    for (std::size_t r = 0; r < d.num_rows(); ++r)
        ++counts[static_cast<std::size_t>(ca[r]) * sb + static_cast<std::size_t>(cb[r])];
    return counts;
}

} // namespace

double mmd_from_counts(std::span<const std::uint64_t> counts, std::size_t rows, std::size_t cols) {
    if (counts.size() != rows * cols)
        throw std::invalid_argument("mmd: count table shape mismatch");
    std::uint64_t total = 0;
    for (auto c : counts)
        total += c;
    if (total == 0)
        return 0.0;
    auto forward = [&](std::size_t r, std::size_t c) { return counts[r * cols + c]; };
    auto backward = [&](std::size_t r, std::size_t c) { return counts[c * cols + r]; };
    const auto ab = directional(forward, rows, cols, total);
    const auto ba = directional(backward, cols, rows, total);
    // Each parenthesised sum is commutative, which keeps the score exactly
    // symmetric in its two arguments.
    return 0.25 * ((ab.mean + ba.mean) + (ab.max + ba.max));
}

double mmd_pair(const Dataset& d, std::size_t a, std::size_t b) {
    if (a == b)
        throw std::invalid_argument("mmd_pair: variables must differ");
    const auto counts = pair_counts(d, a, b);
    return mmd_from_counts(counts, d.variable(a).arity(), d.variable(b).arity());
}

double mmd_conditional(const Dataset& d, std::size_t a, std::size_t b, std::size_t c) {
    if (a == b || a == c || b == c)
        throw std::invalid_argument("mmd_conditional: variables must be distinct");
    const auto sa = d.variable(a).arity();
    const auto sb = d.variable(b).arity();
    const auto sc = d.variable(c).arity();
    const std::size_t stride = sa * sb;
    std::vector<std::uint64_t> counts(sc * stride, 0);
    const auto ca = d.column(a);
    const auto cb = d.column(b);
    const auto cc = d.column(c);
    for (std::size_t r = 0; r < d.num_rows(); ++r)
        ++counts[static_cast<std::size_t>(cc[r]) * stride + static_cast<std::size_t>(ca[r]) * sb +
                 static_cast<std::size_t>(cb[r])];

    const double n = static_cast<double>(d.num_rows());
    double score = 0.0;
    for (std::size_t s = 0; s < sc; ++s) {
        std::span<const std::uint64_t> stratum(counts.data() + s * stride, stride);
        std::uint64_t support = 0;
        for (auto x : stratum)
            support += x;
        if (support == 0)
            continue;
        score += (static_cast<double>(support) / n) * mmd_from_counts(stratum, sa, sb);
    }
    return score;
}

TripleLabel classify_triple(double marginal, double conditional) {
    if (conditional > kDependenceFloor && conditional > kDependenceRatio * marginal)
        return TripleLabel::dependent;
    if (conditional < kDependenceFloor && conditional < kIndependenceRatio * marginal)
        return TripleLabel::independent;
    return TripleLabel::insignificant;
}

MmdTable::MmdTable(std::size_t num_variables)
    : m_n(num_variables),
      m_pairs(num_variables * num_variables, 0.0),
      m_triples(num_variables * num_variables * num_variables, 0.0),
      m_labels(num_variables * num_variables * num_variables, TripleLabel::insignificant),
      m_triple_set(num_variables * num_variables * num_variables, 0) {}

std::size_t MmdTable::pair_index(int a, int b) const {
    if (a == b || a < 0 || b < 0 || static_cast<std::size_t>(a) >= m_n || static_cast<std::size_t>(b) >= m_n)
        throw std::out_of_range("mmd table: invalid pair");
    if (a > b)
        std::swap(a, b);
    return static_cast<std::size_t>(a) * m_n + static_cast<std::size_t>(b);
}

std::size_t MmdTable::triple_index(int a, int b, int given) const {
    if (given < 0 || static_cast<std::size_t>(given) >= m_n || given == a || given == b)
        throw std::out_of_range("mmd table: invalid conditioning node");
    return pair_index(a, b) * m_n + static_cast<std::size_t>(given);
}

void MmdTable::set_pair(int a, int b, double score) {
    m_pairs[pair_index(a, b)] = score;
    ++m_pair_tests;
}

void MmdTable::set_triple(int a, int b, int given, double score, TripleLabel label) {
    const auto i = triple_index(a, b, given);
    m_triples[i] = score;
    m_labels[i] = label;
    m_triple_set[i] = 1;
    ++m_triple_tests;
}

bool MmdTable::independent_given_any(int a, int b) const {
    for (int k = 0; k < static_cast<int>(m_n); ++k) {
        if (k == a || k == b)
            continue;
        if (label(a, b, k) == TripleLabel::independent)
            return true;
    }
    return false;
}

std::vector<Triple> MmdTable::collect(TripleLabel wanted) const {
    std::vector<Triple> out;
    const int n = static_cast<int>(m_n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int k = 0; k < n; ++k) {
                if (k == a || k == b)
                    continue;
                if (has_triple(a, b, k) && label(a, b, k) == wanted)
                    out.push_back({a, b, k, triple(a, b, k)});
            }
    return out;
}

std::vector<Triple> MmdTable::dependent_list() const {
    return collect(TripleLabel::dependent);
}

std::vector<Triple> MmdTable::independent_list() const {
    return collect(TripleLabel::independent);
}

bool MmdTable::complete() const {
    const std::size_t pairs = m_n * (m_n - (m_n ? 1 : 0)) / 2;
    const std::size_t triples = m_n < 3 ? 0 : m_n * (m_n - 1) * (m_n - 2) / 2;
    return m_pair_tests == pairs && m_triple_tests == triples;
}

MmdTable score_pairs(const Dataset& d) {
    const int n = static_cast<int>(d.num_variables());
    MmdTable table(d.num_variables());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            table.set_pair(a, b, mmd_pair(d, a, b));
    return table;
}

bool score_triples(MmdTable& table, const Dataset& d, const Deadline& deadline) {
    const int n = static_cast<int>(d.num_variables());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int k = 0; k < n; ++k) {
                if (k == a || k == b)
                    continue;
                if (deadline.expired())
                    return false;
                const double score = mmd_conditional(d, a, b, k);
                table.set_triple(a, b, k, score, classify_triple(table.pair(a, b), score));
            }
    return true;
}

MmdTable build_mmd_table(const Dataset& d) {
    if (d.num_variables() < 2)
        throw std::invalid_argument("build_mmd_table: need at least two variables");
    auto table = score_pairs(d);
    score_triples(table, d);
    return table;
}

void write_pair_scores(std::ostream& out, const MmdTable& table, const std::vector<std::string>& names) {
    out << "nodeA,nodeB,mmd\n";
    const int n = static_cast<int>(table.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            out << names[a] << ',' << names[b] << ',' << table.pair(a, b) << '\n';
}

void write_triple_scores(std::ostream& out, const MmdTable& table, const std::vector<std::string>& names) {
    out << "nodeA,nodeB,cond,mmd,label\n";
    const int n = static_cast<int>(table.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int k = 0; k < n; ++k) {
                if (k == a || k == b || !table.has_triple(a, b, k))
                    continue;
                out << names[a] << ',' << names[b] << ',' << names[k] << ',' << table.triple(a, b, k) << ','
                    << to_string(table.label(a, b, k)) << '\n';
            }
}

} // namespace cbn
