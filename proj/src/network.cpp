#include <cbn/network.hpp>

#include <cbn/error.hpp>
#include <cbn/score.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

using json = nlohmann::json;

namespace cbn {

namespace {

constexpr double kRowSumTolerance = 1e-9;

std::size_t configurations(const std::vector<Variable>& vars, const std::vector<int>& parents) {
    std::size_t q = 1;
    for (int p : parents)
        q *= vars[p].arity();
    return q;
}

std::vector<int> sorted_by_name(const std::vector<Variable>& vars, std::vector<int> nodes) {
    std::sort(nodes.begin(), nodes.end(), [&](int a, int b) { return vars[a].name < vars[b].name; });
    return nodes;
}

std::string row_key(const std::vector<Variable>& vars, const std::vector<int>& parents, std::size_t row) {
    std::vector<std::string> parts(parents.size());
    for (std::size_t i = parents.size(); i-- > 0;) {
        const auto& pv = vars[parents[i]];
        parts[i] = pv.name + "=" + pv.states[row % pv.arity()];
        row /= pv.arity();
    }
    std::string key;
    for (std::size_t i = 0; i < parts.size(); ++i)
        key += (i ? "," : "") + parts[i];
    return key;
}

} // namespace

BnModel::BnModel(std::string name, std::vector<Variable> variables, Dag dag, std::vector<Cpt> cpts)
    : m_name(std::move(name)), m_variables(std::move(variables)), m_dag(std::move(dag)), m_cpts(std::move(cpts)) {
    if (m_dag.size() != m_variables.size() || m_cpts.size() != m_variables.size())
        throw DataError("network: variables, structure and CPTs disagree in size");
    for (std::size_t v = 0; v < m_variables.size(); ++v) {
        const auto& var = m_variables[v];
        if (m_dag.graph().name(static_cast<int>(v)) != var.name)
            throw DataError("network: structure node order does not match variable order");
        if (var.arity() < 2)
            throw DataError("network: variable '" + var.name + "' needs at least two states");
        auto& cpt = m_cpts[v];
        const auto expected = sorted_by_name(m_variables, m_dag.parents(static_cast<int>(v)));
        if (cpt.parents != expected)
            throw DataError("network: CPT parents of '" + var.name + "' do not match the structure");
        const auto q = configurations(m_variables, cpt.parents);
        if (cpt.rows.size() != q)
            throw DataError("network: CPT of '" + var.name + "' has " + std::to_string(cpt.rows.size()) +
                            " rows, expected " + std::to_string(q));
        for (std::size_t r = 0; r < q; ++r) {
            const auto& row = cpt.rows[r];
            const std::string where = "node '" + var.name + "', row \"" + cpt_key(*this, static_cast<int>(v), r) + "\"";
            if (row.size() != var.arity())
                throw DataError("network: " + where + " has " + std::to_string(row.size()) + " entries, expected " +
                                std::to_string(var.arity()));
            double sum = 0.0;
            for (double p : row) {
                if (!(p >= 0.0) || !std::isfinite(p))
                    throw DataError("network: " + where + " has a negative or non-finite probability");
                sum += p;
            }
            if (std::abs(sum - 1.0) > kRowSumTolerance)
                throw DataError("network: " + where + " sums to " + std::to_string(sum) + ", not 1");
        }
    }
}

std::span<const double> BnModel::distribution(int node, std::span<const int> assignment) const {
    const auto& cpt = m_cpts.at(node);
    std::size_t row = 0;
    for (int p : cpt.parents)
        row = row * m_variables[p].arity() + static_cast<std::size_t>(assignment[p]);
    return cpt.rows[row];
}

std::uint64_t BnModel::free_parameters() const {
    std::vector<std::size_t> ar;
    for (const auto& v : m_variables)
        ar.push_back(v.arity());
    return cbn::free_parameters(m_dag.graph(), ar);
}

std::vector<int> BnModel::sampling_order() const {
    const int n = static_cast<int>(size());
    std::vector<int> depth(n, -1);
    // Longest path from a root; the structure is acyclic so this terminates.
    std::function<int(int)> depth_of = [&](int v) {
        if (depth[v] >= 0)
            return depth[v];
        int d = 0;
        for (int p : m_dag.parents(v))
            d = std::max(d, depth_of(p) + 1);
        return depth[v] = d;
    };
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) {
        order[v] = v;
        depth_of(v);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (depth[a] != depth[b])
            return depth[a] < depth[b];
        return m_variables[a].name < m_variables[b].name;
    });
    return order;
}

std::string cpt_key(const BnModel& model, int node, std::size_t row) {
    return row_key(model.variables(), model.cpt(node).parents, row);
}

namespace {

std::string normalise_key(std::string key) {
    if (key.size() >= 2 && key.front() == '<' && key.back() == '>')
        key = key.substr(1, key.size() - 2);
    key.erase(std::remove(key.begin(), key.end(), ' '), key.end());
    return key;
}

} // namespace

BnModel load_network(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(std::string("network: malformed JSON: ") + e.what());
    }
    try {
        std::vector<Variable> vars;
        for (const auto& v : doc.at("variables"))
            vars.push_back({v.at("name").get<std::string>(), v.at("states").get<std::vector<std::string>>()});
        std::vector<std::string> names;
        for (const auto& v : vars)
            names.push_back(v.name);

        MixedGraph g(names);
        for (const auto& e : doc.value("edges", json::array())) {
            const auto parent = e.at(0).get<std::string>();
            const auto child = e.at(1).get<std::string>();
            auto p = g.index_of(parent);
            auto c = g.index_of(child);
            if (!p || !c)
                throw DataError("network: edge " + parent + "->" + child + " references an undeclared variable");
            try {
                g.add_directed(*p, *c);
            } catch (const GraphError& err) {
                throw DataError(std::string("network: ") + err.what());
            }
        }
        if (!is_acyclic(g))
            throw DataError("network: structure contains a directed cycle");
        Dag dag(std::move(g));

        const auto& cpt_doc = doc.at("cpts");
        std::vector<Cpt> cpts(vars.size());
        for (std::size_t v = 0; v < vars.size(); ++v) {
            auto& cpt = cpts[v];
            cpt.parents = sorted_by_name(vars, dag.parents(static_cast<int>(v)));
            const auto q = configurations(vars, cpt.parents);
            if (!cpt_doc.contains(vars[v].name))
                throw DataError("network: missing CPT for node '" + vars[v].name + "'");
            std::map<std::string, std::vector<double>> given;
            for (const auto& [key, probs] : cpt_doc.at(vars[v].name).items()) {
                auto k = normalise_key(key);
                if (!given.emplace(k, probs.get<std::vector<double>>()).second)
                    throw DataError("network: node '" + vars[v].name + "' repeats CPT row \"" + k + "\"");
            }
            cpt.rows.resize(q);
            std::set<std::string> used;
            for (std::size_t r = 0; r < q; ++r) {
                const auto key = row_key(vars, cpt.parents, r);
                auto it = given.find(key);
                if (it == given.end())
                    throw DataError("network: node '" + vars[v].name + "' is missing CPT row \"" + key + "\"");
                cpt.rows[r] = it->second;
                used.insert(key);
            }
            if (used.size() != given.size()) {
                for (const auto& [key, probs] : given)
                    if (!used.count(key))
                        throw DataError("network: node '" + vars[v].name + "' has unexpected CPT row \"" + key + "\"");
            }
        }
        return BnModel(doc.value("name", std::string("network")), std::move(vars), std::move(dag), std::move(cpts));
    } catch (const json::exception& e) {
        throw DataError(std::string("network: malformed document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("network: ") + e.what());
    }
}

BnModel load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("network: cannot open '" + path + "'");
    return load_network(in);
}

void write_network(std::ostream& out, const BnModel& model) {
    json doc;
    doc["name"] = model.name();
    doc["variables"] = json::array();
    for (const auto& v : model.variables())
        doc["variables"].push_back({{"name", v.name}, {"states", v.states}});
    doc["edges"] = json::array();
    const auto& g = model.dag().graph();
    for (const auto& e : g.edges())
        doc["edges"].push_back({g.name(e.from), g.name(e.to)});
    doc["cpts"] = json::object();
    for (std::size_t v = 0; v < model.size(); ++v) {
        json rows = json::object();
        const auto& cpt = model.cpt(static_cast<int>(v));
        for (std::size_t r = 0; r < cpt.rows.size(); ++r)
            rows["<" + cpt_key(model, static_cast<int>(v), r) + ">"] = cpt.rows[r];
        doc["cpts"][model.variables()[v].name] = rows;
    }
    out << doc.dump(2) << '\n';
}

Dataset forward_sample(const BnModel& model, std::size_t n, std::uint64_t seed) {
    if (n == 0)
        throw std::invalid_argument("forward_sample: sample size must be at least 1");
    std::mt19937_64 rng(seed);
    const auto order = model.sampling_order();
    const std::size_t width = model.size();
    std::vector<std::vector<int>> columns(width, std::vector<int>(n));
    std::vector<int> assignment(width, 0);
    for (std::size_t row = 0; row < n; ++row) {
        for (int v : order) {
            const auto probs = model.distribution(v, assignment);
            // 53 high bits -> uniform double in [0, 1).
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            double cumulative = 0.0;
            int state = -1;
            for (std::size_t s = 0; s < probs.size(); ++s) {
                if (probs[s] <= 0.0)
                    continue;
                cumulative += probs[s];
                state = static_cast<int>(s);
                if (u < cumulative)
                    break;
            }
            assignment[v] = state;
            columns[v][row] = state;
        }
    }
    return Dataset(model.variables(), std::move(columns));
}

} // namespace cbn
