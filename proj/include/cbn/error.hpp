#ifndef CBN_ERROR_HPP
#define CBN_ERROR_HPP

#include <stdexcept>

namespace cbn {

/// Raised for malformed input files: datasets, graphs, networks, manifests.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cbn

#endif // CBN_ERROR_HPP
