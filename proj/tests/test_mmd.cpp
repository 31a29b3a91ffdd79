#include <doctest.h>

#include <cbn/mmd.hpp>

#include "fixtures.hpp"
#include "oracles/mmd_oracle.hpp"

#include <random>

using namespace cbn;

namespace {

// Random columns; declared arity may exceed the observed states.
Dataset random_columns(std::size_t vars, std::size_t rows, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> arity_dist(2, 4);
    std::vector<Variable> vs;
    std::vector<std::vector<int>> cols(vars);
    for (std::size_t v = 0; v < vars; ++v) {
        const int arity = arity_dist(rng);
        Variable var{"V" + std::to_string(v), {}};
        for (int s = 0; s < arity; ++s)
            var.states.push_back("s" + std::to_string(s));
        vs.push_back(var);
        // Skew toward low states so some declared states go unobserved.
        std::uniform_int_distribution<int> used(1, arity);
        std::uniform_int_distribution<int> pick(0, used(rng) - 1);
        for (std::size_t r = 0; r < rows; ++r)
            cols[v].push_back(pick(rng));
    }
    return Dataset(vs, cols);
}

oracle::LabelledRows labelled(const Dataset& d, std::size_t a, std::size_t b) {
    oracle::LabelledRows rows;
    for (std::size_t r = 0; r < d.num_rows(); ++r)
        rows.emplace_back(d.variable(a).states[d.at(r, a)], d.variable(b).states[d.at(r, b)]);
    return rows;
}

std::vector<std::vector<std::string>> labelled3(const Dataset& d, std::size_t a, std::size_t b, std::size_t c) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < d.num_rows(); ++r)
        rows.push_back({d.variable(a).states[d.at(r, a)], d.variable(b).states[d.at(r, b)],
                        d.variable(c).states[d.at(r, c)]});
    return rows;
}

} // namespace

TEST_SUITE("mmd") {

TEST_CASE("population-exact independence scores zero") {
    const auto d = fixtures::from_counts({{"A", {"a0", "a1", "a2"}}, {"B", {"b0", "b1"}}},
                                         {{{0, 0}, 2}, {{0, 1}, 6}, {{1, 0}, 1}, {{1, 1}, 3}, {{2, 0}, 5}, {{2, 1}, 15}});
    CHECK(mmd_pair(d, 0, 1) == 0.0);
}

TEST_CASE("uniform binary copy scores one half") {
    const auto d = fixtures::from_counts(fixtures::binary_vars({"A", "B"}), {{{0, 0}, 7}, {{1, 1}, 7}});
    CHECK(mmd_pair(d, 0, 1) == 0.5);
}

TEST_CASE("20-row fixture matches the term-by-term value") {
    // Rows interleaved so the engine sees them out of cell order.
    const auto d = fixtures::csv("A,B\n"
                                 "a0,b0\na1,b1\na2,b1\na0,b1\na2,b0\na0,b0\na1,b1\na2,b1\na0,b0\na1,b0\n"
                                 "a2,b1\na2,b0\na0,b0\na1,b1\na2,b1\na0,b1\na2,b0\na0,b0\na1,b1\na2,b1\n");
    // 5857/33264, exact rational evaluation of the four sub-scores.
    const double expected = 5857.0 / 33264.0;
    CHECK(mmd_pair(d, 0, 1) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(oracle::mmd(labelled(d, 0, 1)) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("zero-support states are left out of the averages") {
    // B declares a third state that never occurs; the score matches the two-state table.
    const auto two = fixtures::from_counts({{"A", {"a0", "a1"}}, {"B", {"b0", "b1"}}},
                                           {{{0, 0}, 3}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 3}});
    const auto three = fixtures::from_counts({{"A", {"a0", "a1"}}, {"B", {"b0", "b1", "b2"}}},
                                             {{{0, 0}, 3}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 3}});
    CHECK(mmd_pair(three, 0, 1) == mmd_pair(two, 0, 1));
}

TEST_CASE("conditional score") {
    SUBCASE("irrelevant C reproduces the pair score") {
        std::map<std::vector<int>, int> counts;
        const int ab[2][2] = {{4, 1}, {2, 3}};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    counts[{a, b, c}] = ab[a][b] * (c == 0 ? 1 : 3);
        const auto d = fixtures::from_counts(fixtures::binary_vars({"A", "B", "C"}), counts);
        CHECK(mmd_conditional(d, 0, 1, 2) == doctest::Approx(mmd_pair(d, 0, 1)).epsilon(1e-12));
    }
    SUBCASE("mediated dependence vanishes given the mediator") {
        // A -> C -> B with P(B|C) identical across A inside each stratum.
        std::map<std::vector<int>, int> counts;
        const int ac[2][2] = {{6, 2}, {1, 3}};
        const int cb[2][2] = {{3, 1}, {1, 4}};
        for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c)
                for (int b = 0; b < 2; ++b)
                    counts[{a, b, c}] = ac[a][c] * cb[c][b];
        const auto d = fixtures::from_counts(fixtures::binary_vars({"A", "B", "C"}), counts);
        CHECK(mmd_pair(d, 0, 1) > 0.05);
        CHECK(mmd_conditional(d, 0, 1, 2) == 0.0);
    }
    SUBCASE("collider fixture") {
        const auto d = fixtures::from_counts(fixtures::binary_vars({"A", "B", "C"}),
                                             {{{0, 0, 0}, 9}, {{0, 0, 1}, 1}, {{0, 1, 0}, 2}, {{0, 1, 1}, 8},
                                              {{1, 0, 0}, 2}, {{1, 0, 1}, 8}, {{1, 1, 0}, 1}, {{1, 1, 1}, 9}});
        CHECK(mmd_pair(d, 0, 1) == 0.0);
        // 965/6732 from the exact stratified evaluation.
        CHECK(mmd_conditional(d, 0, 1, 2) == doctest::Approx(965.0 / 6732.0).epsilon(1e-14));
        CHECK(oracle::mmd_given(labelled3(d, 0, 1, 2)) == doctest::Approx(965.0 / 6732.0).epsilon(1e-14));
        CHECK(classify_triple(0.0, mmd_conditional(d, 0, 1, 2)) == TripleLabel::dependent);
    }
}

TEST_CASE("triple classification") {
    CHECK(classify_triple(0.10, 0.20) == TripleLabel::dependent);
    CHECK(classify_triple(0.10, 0.04) == TripleLabel::independent);
    CHECK(classify_triple(0.10, 0.06) == TripleLabel::insignificant);
    // Strict at every threshold.
    CHECK(classify_triple(0.02, 0.05) == TripleLabel::insignificant);
    CHECK(classify_triple(0.04, 0.06) == TripleLabel::insignificant); // 0.06 = 1.5 x 0.04
    CHECK(classify_triple(0.08, 0.04) == TripleLabel::insignificant); // 0.04 = 0.5 x 0.08
    CHECK(classify_triple(0.0, 0.0) == TripleLabel::insignificant);
}

TEST_CASE("label thresholds are consistent") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double m = unit(rng) * 0.3, c = unit(rng) * 0.3;
        const auto label = classify_triple(m, c);
        if (label == TripleLabel::independent)
            CHECK(c < 0.05);
        if (label == TripleLabel::dependent)
            CHECK(c > 0.05);
    }
}

TEST_CASE("engine agrees with the oracle on random fixtures") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        const auto d = random_columns(3, 5 + trial % 60, rng);
        const double ab = mmd_pair(d, 0, 1);
        CHECK(ab == mmd_pair(d, 1, 0));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        CHECK(ab == doctest::Approx(oracle::mmd(labelled(d, 0, 1))).epsilon(1e-12));
        const double given = mmd_conditional(d, 0, 1, 2);
        CHECK(given == mmd_conditional(d, 1, 0, 2));
        CHECK(given >= 0.0);
        CHECK(given <= 1.0);
        CHECK(given == doctest::Approx(oracle::mmd_given(labelled3(d, 0, 1, 2))).epsilon(1e-12));
    }
}

TEST_CASE("table test counts follow the closed forms") {
    std::mt19937_64 rng(4);
    for (std::size_t n = 2; n <= 40; ++n) {
        const auto d = random_columns(n, 12, rng);
        const auto table = build_mmd_table(d);
        CHECK(table.pair_tests() == n * (n - 1) / 2);
        CHECK(table.triple_tests() == n * (n - 1) * (n - 2) / 2);
        CHECK(table.complete());
    }
}

TEST_CASE("table contents") {
    std::mt19937_64 rng(8);
    const auto d = random_columns(6, 40, rng);
    const auto table = build_mmd_table(d);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            if (a == b)
                continue;
            CHECK(table.pair(a, b) == table.pair(b, a));
            CHECK(table.pair(a, b) == mmd_pair(d, a, b));
            for (int c = 0; c < 6; ++c) {
                if (c == a || c == b)
                    continue;
                CHECK(table.triple(a, b, c) == table.triple(b, a, c));
                CHECK(table.label(a, b, c) == classify_triple(table.pair(a, b), table.triple(a, b, c)));
            }
        }
    for (const auto& t : table.dependent_list())
        CHECK(table.label(t.a, t.b, t.given) == TripleLabel::dependent);
    for (const auto& t : table.independent_list())
        CHECK(table.label(t.a, t.b, t.given) == TripleLabel::independent);
}

TEST_CASE("an expired deadline leaves triples unscored") {
    std::mt19937_64 rng(3);
    const auto d = random_columns(6, 30, rng);
    auto table = score_pairs(d);
    CHECK_FALSE(score_triples(table, d, Deadline::after(-1.0)));
    CHECK_FALSE(table.complete());
    CHECK(table.pair_tests() == 15);
}

TEST_CASE("diagnostic dumps") {
    const auto d = fixtures::from_counts(fixtures::binary_vars({"A", "B", "C"}), {{{0, 0, 0}, 3}, {{1, 1, 0}, 2}, {{1, 0, 1}, 2}});
    const auto table = build_mmd_table(d);
    std::ostringstream pairs, triples;
    write_pair_scores(pairs, table, d.names());
    write_triple_scores(triples, table, d.names());
    CHECK(pairs.str().rfind("nodeA,nodeB,mmd\n", 0) == 0);
    CHECK(triples.str().rfind("nodeA,nodeB,cond,mmd,label\n", 0) == 0);
    const auto p = pairs.str(), t = triples.str();
    CHECK(std::count(p.begin(), p.end(), '\n') == 4);
    CHECK(std::count(t.begin(), t.end(), '\n') == 4);
}

}
