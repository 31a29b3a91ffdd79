#include <cbn/score.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace cbn {

namespace {
constexpr std::uint64_t kDenseConfigLimit = 1U << 16;
}

bool scores_tied(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= kScoreTolerance * scale;
}

bool score_improves(double candidate, double reference) {
    return candidate > reference && !scores_tied(candidate, reference);
}

std::vector<std::size_t> arities(const Dataset& d) {
    std::vector<std::size_t> out;
    out.reserve(d.num_variables());
    for (const auto& v : d.variables())
        out.push_back(v.arity());
    return out;
}

std::uint64_t family_free_parameters(std::size_t arity, std::span<const std::size_t> parent_arities) {
    std::uint64_t configs = 1;
    for (auto q : parent_arities)
        configs *= q;
    return (arity - 1) * configs;
}

std::uint64_t free_parameters(const MixedGraph& g, std::span<const std::size_t> arities) {
    if (arities.size() != g.size())
        throw std::invalid_argument("free_parameters: arity list does not match the graph");
    std::uint64_t total = 0;
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
        std::vector<std::size_t> parent_arities;
        for (int p : g.parents(v))
            parent_arities.push_back(arities[p]);
        total += family_free_parameters(arities[v], parent_arities);
    }
    return total;
}

ScoreContext::ScoreContext(const Dataset& d)
    : m_data(&d), m_arities(arities(d)), m_penalty(std::log2(static_cast<double>(d.num_rows())) / 2.0) {}

const ScoreContext::Family& ScoreContext::family(int node, std::span<const int> parents) const {
    std::vector<int> key;
    key.reserve(parents.size() + 1);
    key.push_back(node);
    key.insert(key.end(), parents.begin(), parents.end());
    std::sort(key.begin() + 1, key.end());
    if (auto it = m_cache.find(key); it != m_cache.end())
        return it->second;

    const auto& d = *m_data;
    const std::size_t r = m_arities.at(node);
    std::uint64_t configs = 1;
    std::vector<std::size_t> parent_arities;
    for (auto it = key.begin() + 1; it != key.end(); ++it) {
        parent_arities.push_back(m_arities.at(*it));
        configs *= m_arities[*it];
    }

    const auto child = d.column(node);
    auto config_of = [&](std::size_t row) {
        std::uint64_t config = 0;
        for (auto it = key.begin() + 1; it != key.end(); ++it)
            config = config * m_arities[*it] + static_cast<std::uint64_t>(d.at(row, *it));
        return config;
    };
    auto add_cell = [](double& ll, std::span<const std::uint64_t> cell) {
        std::uint64_t n_ij = 0;
        for (auto c : cell)
            n_ij += c;
        for (auto n_ijk : cell)
            if (n_ijk > 0)
                ll += static_cast<double>(n_ijk) * std::log2(static_cast<double>(n_ijk) / static_cast<double>(n_ij));
    };

    double ll = 0.0;
    if (configs <= kDenseConfigLimit) {
        std::vector<std::uint64_t> counts(configs * r, 0);
        for (std::size_t row = 0; row < d.num_rows(); ++row)
            ++counts[config_of(row) * r + static_cast<std::size_t>(child[row])];
        for (std::uint64_t config = 0; config < configs; ++config)
            add_cell(ll, std::span<const std::uint64_t>(counts.data() + config * r, r));
    } else {
        std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> counts;
        for (std::size_t row = 0; row < d.num_rows(); ++row) {
            auto& cell = counts[config_of(row)];
            if (cell.empty())
                cell.assign(r, 0);
            ++cell[child[row]];
        }
        // Ascending configuration order keeps the sum independent of hashing.
        std::vector<std::uint64_t> order;
        order.reserve(counts.size());
        for (const auto& entry : counts)
            order.push_back(entry.first);
        std::sort(order.begin(), order.end());
        for (auto config : order)
            add_cell(ll, counts[config]);
    }
    const double p = static_cast<double>(family_free_parameters(r, parent_arities));
    return m_cache.emplace(std::move(key), Family{ll, ll - m_penalty * p}).first->second;
}

double ScoreContext::family_log_likelihood(int node, std::span<const int> parents) const {
    return family(node, parents).log_likelihood;
}

double ScoreContext::family_score(int node, std::span<const int> parents) const {
    return family(node, parents).score;
}

double ScoreContext::log_likelihood(const MixedGraph& g) const {
    double total = 0.0;
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
        const auto parents = g.parents(v);
        total += family_log_likelihood(v, parents);
    }
    return total;
}

double ScoreContext::bic(const MixedGraph& g) const {
    double total = 0.0;
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
        const auto parents = g.parents(v);
        total += family_score(v, parents);
    }
    return total;
}

double log_likelihood(const Dag& g, const Dataset& d) {
    return ScoreContext(d).log_likelihood(g.graph());
}

double bic(const Dag& g, const Dataset& d) {
    return ScoreContext(d).bic(g.graph());
}

} // namespace cbn
