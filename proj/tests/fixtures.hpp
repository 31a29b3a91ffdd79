// Shared builders for the test suites.
#pragma once

#include <cbn/dataset.hpp>
#include <cbn/graph.hpp>
#include <cbn/network.hpp>

#include "oracles/confusion_oracle.hpp"
#include "oracles/graph_oracle.hpp"
#include "oracles/score_oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fixtures {

inline std::string data_path(const std::string& file) { return std::string(CBN_DATA_DIR) + "/" + file; }

inline cbn::Dataset csv(const std::string& text) {
    std::istringstream in(text);
    return cbn::load_dataset(in);
}

inline std::vector<cbn::Variable> binary_vars(const std::vector<std::string>& names) {
    std::vector<cbn::Variable> vars;
    for (const auto& n : names)
        vars.push_back({n, {"0", "1"}});
    return vars;
}

// One row per unit of count; cells are full assignments in column order.
inline cbn::Dataset from_counts(std::vector<cbn::Variable> vars, const std::map<std::vector<int>, int>& counts) {
    std::vector<std::vector<int>> columns(vars.size());
    for (const auto& [cell, count] : counts)
        for (int k = 0; k < count; ++k)
            for (std::size_t v = 0; v < vars.size(); ++v)
                columns[v].push_back(cell[v]);
    return cbn::Dataset(std::move(vars), std::move(columns));
}

inline cbn::MixedGraph graph(const std::vector<std::string>& nodes,
                             const std::vector<std::pair<std::string, std::string>>& arcs) {
    cbn::MixedGraph g(nodes);
    for (const auto& [a, b] : arcs)
        g.add_directed(*g.index_of(a), *g.index_of(b));
    return g;
}

inline std::vector<std::string> letters(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(std::string(1, static_cast<char>('A' + i)));
    return out;
}

inline oracle::Rows rows_of(const cbn::Dataset& d) {
    oracle::Rows rows(d.num_rows(), std::vector<int>(d.num_variables()));
    for (std::size_t r = 0; r < d.num_rows(); ++r)
        for (std::size_t v = 0; v < d.num_variables(); ++v)
            rows[r][v] = d.at(r, v);
    return rows;
}

inline oracle::Matrix directed_matrix(const cbn::MixedGraph& g) {
    oracle::Matrix m(g.size(), std::vector<int>(g.size(), 0));
    for (const auto& e : g.edges())
        if (e.directed)
            m[e.from][e.to] = 1;
    return m;
}

inline oracle::Marks marks(const cbn::MixedGraph& g) {
    oracle::Marks m(g.size(), std::vector<int>(g.size(), 0));
    for (const auto& e : g.edges()) {
        const int lo = std::min(e.from, e.to), hi = std::max(e.from, e.to);
        m[lo][hi] = !e.directed ? 3 : (e.from == lo ? 1 : 2);
    }
    return m;
}

inline oracle::ParentSets parent_sets(const cbn::MixedGraph& g) {
    oracle::ParentSets ps(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
        ps[v] = g.parents(static_cast<int>(v));
    return ps;
}

inline cbn::MixedGraph from_matrix(const std::vector<std::string>& nodes, const oracle::Matrix& m) {
    cbn::MixedGraph g(nodes);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[i][j])
                g.add_directed(static_cast<int>(i), static_cast<int>(j));
    return g;
}

// Random connected DAG (a random tree over a shuffled order plus extra
// forward arcs) with random CPTs; CPT entries are kept away from 0 and 1.
inline cbn::BnModel random_model(std::size_t n, std::uint64_t seed, double extra_arc = 0.3,
                                 std::size_t arity = 2) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto names = letters(n);
    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = static_cast<int>(i);
    std::shuffle(order.begin(), order.end(), rng);
    cbn::MixedGraph g(names);
    for (std::size_t k = 1; k < n; ++k) {
        std::uniform_int_distribution<std::size_t> pick(0, k - 1);
        g.add_directed(order[pick(rng)], order[k]);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (!g.adjacent(order[a], order[b]) && unit(rng) < extra_arc)
                g.add_directed(order[a], order[b]);

    std::vector<cbn::Variable> vars;
    for (const auto& name : names) {
        cbn::Variable v{name, {}};
        for (std::size_t s = 0; s < arity; ++s)
            v.states.push_back("s" + std::to_string(s));
        vars.push_back(v);
    }
    std::vector<cbn::Cpt> cpts(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto parents = g.parents(static_cast<int>(v));
        std::sort(parents.begin(), parents.end(), [&](int a, int b) { return names[a] < names[b]; });
        std::size_t q = 1;
        for (std::size_t k = 0; k < parents.size(); ++k)
            q *= arity;
        cpts[v].parents = parents;
        for (std::size_t r = 0; r < q; ++r) {
            std::vector<double> row(arity);
            double sum = 0.0;
            for (auto& p : row) {
                p = 0.05 + unit(rng);
                sum += p;
            }
            for (auto& p : row)
                p /= sum;
            // Absorb rounding so the row sums to 1 within the validator's bound.
            double rest = 1.0;
            for (std::size_t s = 0; s + 1 < arity; ++s)
                rest -= row[s];
            row.back() = rest;
            cpts[v].rows.push_back(row);
        }
    }
    return cbn::BnModel("random", vars, cbn::Dag(g), cpts);
}

} // namespace fixtures
