#include <doctest.h>

#include <cbn/emsg.hpp>

#include "fixtures.hpp"
#include "oracles/emsg_oracle.hpp"

#include <random>

using namespace cbn;

namespace {

MmdTable table_from(const std::vector<std::vector<double>>& score) {
    MmdTable t(score.size());
    for (std::size_t i = 0; i < score.size(); ++i)
        for (std::size_t j = i + 1; j < score.size(); ++j)
            t.set_pair(static_cast<int>(i), static_cast<int>(j), score[i][j]);
    return t;
}

std::set<std::pair<int, int>> edge_set(const MixedGraph& g) {
    std::set<std::pair<int, int>> out;
    for (const auto& e : g.edges())
        out.insert({std::min(e.from, e.to), std::max(e.from, e.to)});
    return out;
}

std::vector<std::vector<double>> symmetric(std::size_t n, const std::map<std::pair<int, int>, double>& s) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (const auto& [p, v] : s)
        m[p.first][p.second] = m[p.second][p.first] = v;
    return m;
}

} // namespace

TEST_SUITE("emsg") {

TEST_CASE("triangle loses its weakest edge") {
    const auto score = symmetric(3, {{{0, 1}, 0.1}, {{0, 2}, 0.3}, {{1, 2}, 0.2}});
    const auto e = build_emsg(table_from(score), fixtures::letters(3));
    CHECK(edge_set(e.graph) == std::set<std::pair<int, int>>{{0, 2}, {1, 2}});
    CHECK(e.graph.undirected_count() == 2);
    CHECK(e.incident_score[2] == doctest::Approx(0.5));
}

TEST_CASE("two nodes stay joined") {
    const auto e = build_emsg(table_from(symmetric(2, {{{0, 1}, 0.0}})), fixtures::letters(2));
    CHECK(e.graph.edge_count() == 1);
}

TEST_CASE("5-node fixture") {
    const auto score = symmetric(5, {{{0, 1}, 0.40}, {{0, 2}, 0.35}, {{0, 3}, 0.10}, {{0, 4}, 0.05},
                                     {{1, 2}, 0.30}, {{1, 3}, 0.20}, {{1, 4}, 0.10}, {{2, 3}, 0.25},
                                     {{2, 4}, 0.15}, {{3, 4}, 0.22}});
    const auto e = build_emsg(table_from(score), fixtures::letters(5));
    // A-B, A-C, C-D, D-E from the rule replay.
    const std::set<std::pair<int, int>> expected{{0, 1}, {0, 2}, {2, 3}, {3, 4}};
    CHECK(edge_set(e.graph) == expected);
    CHECK(oracle::emsg(score) == expected);
}

TEST_CASE("equal scores are visited in index-pair order") {
    // All pairs tie: no strict inequality can hold, so nothing is removed.
    std::vector<std::vector<double>> score(4, std::vector<double>(4, 0.2));
    CHECK(build_emsg(table_from(score), fixtures::letters(4)).graph.edge_count() == 6);
}

TEST_CASE("random score tables") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + trial % 11;
        std::vector<std::vector<double>> score(n, std::vector<double>(n, 0.0));
        const bool coarse = trial % 3 == 0; // coarse grid forces ties
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double v = unit(rng) * 0.6;
                if (coarse)
                    v = std::round(v * 10.0) / 10.0;
                score[i][j] = score[j][i] = v;
            }
        const auto table = table_from(score);
        auto e = build_emsg(table, fixtures::letters(n));
        CHECK(is_connected(e.graph));
        CHECK(e.graph.edge_count() >= n - 1);
        CHECK(e.graph.undirected_count() == e.graph.edge_count());
        CHECK(edge_set(e.graph) == oracle::emsg(score));
        CHECK(prune_pass(e.graph, table) == 0);
    }
}

}
