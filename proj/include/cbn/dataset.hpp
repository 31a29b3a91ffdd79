#ifndef CBN_DATASET_HPP
#define CBN_DATASET_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <cbn/error.hpp>

namespace cbn {

struct Variable {
    std::string name;
    std::vector<std::string> states;

    std::size_t arity() const { return states.size(); }
    std::optional<int> state_index(const std::string& label) const;
};

/// Complete discrete data table. Cells hold state indices into the owning
/// variable's state list; storage is column-major.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<Variable> variables, std::vector<std::vector<int>> columns);

    std::size_t num_variables() const { return m_variables.size(); }
    std::size_t num_rows() const { return m_rows; }

    const std::vector<Variable>& variables() const { return m_variables; }
    const Variable& variable(std::size_t i) const { return m_variables.at(i); }
    std::optional<std::size_t> index_of(const std::string& name) const;
    std::vector<std::string> names() const;

    std::span<const int> column(std::size_t i) const { return m_columns.at(i); }
    int at(std::size_t row, std::size_t var) const { return m_columns[var][row]; }

    /// Rows in the given order; used for permutation/stratification checks.
    Dataset select_rows(std::span<const std::size_t> rows) const;

    void write_csv(std::ostream& out) const;

private:
    std::vector<Variable> m_variables;
    std::vector<std::vector<int>> m_columns;
    std::size_t m_rows = 0;
};

/// Declared variable/state lists. When supplied to the loader, state order
/// comes from the schema and columns may be constant in the sample.
using Schema = std::vector<Variable>;

/// Parses comma-separated text with a header row. Values are opaque labels.
/// Without a schema, states are ordered by first appearance and a column
/// with a single observed state is rejected.
Dataset load_dataset(std::istream& in, const std::optional<Schema>& schema = std::nullopt);
Dataset load_dataset_file(const std::string& path, const std::optional<Schema>& schema = std::nullopt);

struct Distribution {
    std::vector<double> probabilities;
    bool empty = false; // conditioning event had zero support
    std::size_t support = 0; // number of rows the estimate is based on
};

/// Assignment of a state index to a variable index.
using Evidence = std::vector<std::pair<std::size_t, int>>;

Distribution marginal(const Dataset& d, std::size_t var);
Distribution conditional(const Dataset& d, std::size_t var, const Evidence& given);

} // namespace cbn

#endif // CBN_DATASET_HPP
