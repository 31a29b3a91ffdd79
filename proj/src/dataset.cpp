#include <cbn/dataset.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "csv.hpp"

namespace cbn {

std::optional<int> Variable::state_index(const std::string& label) const {
    auto it = std::find(states.begin(), states.end(), label);
    if (it == states.end())
        return std::nullopt;
    return static_cast<int>(it - states.begin());
}

Dataset::Dataset(std::vector<Variable> variables, std::vector<std::vector<int>> columns)
    : m_variables(std::move(variables)), m_columns(std::move(columns)) {
    if (m_variables.size() != m_columns.size())
        throw std::invalid_argument("dataset: variable and column counts differ");
    m_rows = m_columns.empty() ? 0 : m_columns.front().size();
    std::unordered_set<std::string> seen;
    for (std::size_t v = 0; v < m_variables.size(); ++v) {
        const auto& var = m_variables[v];
        if (!seen.insert(var.name).second)
            throw std::invalid_argument("dataset: duplicate variable '" + var.name + "'");
        if (var.arity() < 2)
            throw std::invalid_argument("dataset: variable '" + var.name + "' declares fewer than two states");
        std::unordered_set<std::string> labels(var.states.begin(), var.states.end());
        if (labels.size() != var.states.size())
            throw std::invalid_argument("dataset: variable '" + var.name + "' has duplicate state labels");
        if (m_columns[v].size() != m_rows)
            throw std::invalid_argument("dataset: ragged columns");
        const int arity = static_cast<int>(var.arity());
        for (int s : m_columns[v])
            if (s < 0 || s >= arity)
                throw std::invalid_argument("dataset: state index out of range in '" + var.name + "'");
    }
}

std::optional<std::size_t> Dataset::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < m_variables.size(); ++i)
        if (m_variables[i].name == name)
            return i;
    return std::nullopt;
}

std::vector<std::string> Dataset::names() const {
    std::vector<std::string> out;
    out.reserve(m_variables.size());
    for (const auto& v : m_variables)
        out.push_back(v.name);
    return out;
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
    std::vector<std::vector<int>> cols(m_columns.size());
    for (std::size_t v = 0; v < m_columns.size(); ++v) {
        cols[v].reserve(rows.size());
        for (auto r : rows)
            cols[v].push_back(m_columns[v].at(r));
    }
    return Dataset(m_variables, std::move(cols));
}

void Dataset::write_csv(std::ostream& out) const {
    for (std::size_t v = 0; v < m_variables.size(); ++v)
        out << (v ? "," : "") << m_variables[v].name;
    out << '\n';
    for (std::size_t r = 0; r < m_rows; ++r) {
        for (std::size_t v = 0; v < m_variables.size(); ++v)
            out << (v ? "," : "") << m_variables[v].states[m_columns[v][r]];
        out << '\n';
    }
}

Dataset load_dataset(std::istream& in, const std::optional<Schema>& schema) {
    std::string line;
    if (!std::getline(in, line))
        throw DataError("dataset: empty input, expected a header row");
    auto header = detail::split_csv(detail::strip_cr(line));
    const std::size_t width = header.size();

    std::unordered_set<std::string> seen;
    for (std::size_t c = 0; c < width; ++c) {
        if (header[c].empty())
            throw DataError("dataset: empty variable name in header column " + std::to_string(c + 1));
        if (!seen.insert(header[c]).second)
            throw DataError("dataset: duplicate header '" + header[c] + "'");
    }

    std::vector<Variable> vars(width);
    std::vector<std::unordered_map<std::string, int>> lookup(width);
    for (std::size_t c = 0; c < width; ++c) {
        vars[c].name = header[c];
        if (schema) {
            auto it = std::find_if(schema->begin(), schema->end(),
                                   [&](const Variable& v) { return v.name == header[c]; });
            if (it == schema->end())
                throw DataError("dataset: column '" + header[c] + "' is not declared in the schema");
            vars[c].states = it->states;
            for (std::size_t s = 0; s < it->states.size(); ++s)
                lookup[c].emplace(it->states[s], static_cast<int>(s));
        }
    }
    if (schema && schema->size() != width)
        throw DataError("dataset: header does not cover every schema variable");

    std::vector<std::vector<int>> columns(width);
    std::size_t row = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        auto view = detail::strip_cr(line);
        if (view.empty())
            continue;
        ++row;
        auto cells = detail::split_csv(view);
        if (cells.size() > width)
            throw DataError("dataset: row " + std::to_string(row) + " (line " + std::to_string(line_no) +
                            ") has " + std::to_string(cells.size()) + " cells, expected " + std::to_string(width));
        for (std::size_t c = 0; c < width; ++c) {
            if (c >= cells.size() || cells[c].empty())
                throw DataError("dataset: missing value at row " + std::to_string(row) + " (line " +
                                std::to_string(line_no) + "), column '" + header[c] + "'");
            auto [it, inserted] = lookup[c].try_emplace(cells[c], static_cast<int>(vars[c].states.size()));
            if (inserted) {
                if (schema)
                    throw DataError("dataset: undeclared state '" + cells[c] + "' at row " + std::to_string(row) +
                                    ", column '" + header[c] + "'");
                vars[c].states.push_back(cells[c]);
            }
            columns[c].push_back(it->second);
        }
    }
    if (row == 0)
        throw DataError("dataset: no data rows");
    for (std::size_t c = 0; c < width; ++c)
        if (vars[c].states.size() < 2)
            throw DataError("dataset: column '" + header[c] + "' has a single state; no dependency is measurable");

    return Dataset(std::move(vars), std::move(columns));
}

Dataset load_dataset_file(const std::string& path, const std::optional<Schema>& schema) {
    std::ifstream in(path);
    if (!in)
        throw DataError("dataset: cannot open '" + path + "'");
    return load_dataset(in, schema);
}

namespace {

Distribution normalise(std::vector<double> counts, std::size_t total) {
    Distribution dist;
    dist.support = total;
    if (total == 0) {
        dist.empty = true;
        dist.probabilities.assign(counts.size(), 0.0);
        return dist;
    }
    for (auto& c : counts)
        c /= static_cast<double>(total);
    dist.probabilities = std::move(counts);
    return dist;
}

} // namespace

Distribution marginal(const Dataset& d, std::size_t var) {
    return conditional(d, var, {});
}

Distribution conditional(const Dataset& d, std::size_t var, const Evidence& given) {
    if (var >= d.num_variables())
        throw std::out_of_range("conditional: unknown variable");
    for (const auto& [v, s] : given) {
        if (v == var)
            throw std::invalid_argument("conditional: target variable is among the conditioning variables");
        if (v >= d.num_variables())
            throw std::out_of_range("conditional: unknown conditioning variable");
    }
    std::vector<double> counts(d.variable(var).arity(), 0.0);
    std::size_t total = 0;
    const auto target = d.column(var);
    for (std::size_t r = 0; r < d.num_rows(); ++r) {
        bool match = true;
        for (const auto& [v, s] : given) {
            if (d.at(r, v) != s) {
                match = false;
                break;
            }
        }
        if (!match)
            continue;
        counts[target[r]] += 1.0;
        ++total;
    }
    return normalise(std::move(counts), total);
}

} // namespace cbn
