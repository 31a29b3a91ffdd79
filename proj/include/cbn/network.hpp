#ifndef CBN_NETWORK_HPP
#define CBN_NETWORK_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <cbn/dataset.hpp>
#include <cbn/graph.hpp>

namespace cbn {

/// Identifier of the sampling stream, stored alongside generated data.
inline constexpr const char* kSamplerId = "mt19937_64/u53-inverse-cdf";

/// Conditional probability table. Rows are indexed by the parent
/// configuration in mixed radix over `parents`, which are sorted by name with
/// the first parent most significant.
struct Cpt {
    std::vector<int> parents;
    std::vector<std::vector<double>> rows;
};

/// Ground-truth discrete Bayesian network.
class BnModel {
public:
    BnModel() = default;
    /// Validates CPT shapes, row sums (within 1e-9) and acyclicity.
    BnModel(std::string name, std::vector<Variable> variables, Dag dag, std::vector<Cpt> cpts);

    const std::string& name() const { return m_name; }
    const std::vector<Variable>& variables() const { return m_variables; }
    const Dag& dag() const { return m_dag; }
    const Cpt& cpt(int node) const { return m_cpts.at(node); }
    std::size_t size() const { return m_variables.size(); }

    /// Row of `node`'s CPT matching a full assignment of state indices.
    std::span<const double> distribution(int node, std::span<const int> assignment) const;
    std::uint64_t free_parameters() const;
    /// Parents before children: stable sort by (longest path from a root, name).
    std::vector<int> sampling_order() const;

private:
    std::string m_name;
    std::vector<Variable> m_variables;
    Dag m_dag;
    std::vector<Cpt> m_cpts;
};

/// `{name?, variables:[{name, states}], edges:[[parent, child]], cpts:{node:{"p1=s1,p2=s2": [...]}}}`
/// Keys list parents sorted by name; a root node uses the key "".
BnModel load_network(std::istream& in);
BnModel load_network_file(const std::string& path);
void write_network(std::ostream& out, const BnModel& model);

/// The CPT key for a parent configuration, e.g. "lung=yes,tub=no".
std::string cpt_key(const BnModel& model, int node, std::size_t row);

/// Identical (model, n, seed) yields a bit-identical dataset.
Dataset forward_sample(const BnModel& model, std::size_t n, std::uint64_t seed);

} // namespace cbn

#endif // CBN_NETWORK_HPP
