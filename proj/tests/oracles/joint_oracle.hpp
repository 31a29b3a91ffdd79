// Exact model joint by enumerating every full assignment.
#pragma once

#include <cbn/network.hpp>

#include <vector>

namespace oracle {

// P(a = i, b = j) as a row-major arity(a) x arity(b) table.
inline std::vector<double> pair_joint(const cbn::BnModel& model, int a, int b) {
    const auto& vars = model.variables();
    const std::size_t n = vars.size();
    std::vector<double> out(vars[a].arity() * vars[b].arity(), 0.0);
    std::vector<int> assign(n, 0);
    while (true) {
        double p = 1.0;
        for (std::size_t v = 0; v < n; ++v)
            p *= model.distribution(static_cast<int>(v), assign)[assign[v]];
        out[assign[a] * vars[b].arity() + assign[b]] += p;
        std::size_t k = 0;
        while (k < n && ++assign[k] == static_cast<int>(vars[k].arity()))
            assign[k++] = 0;
        if (k == n)
            break;
    }
    return out;
}

} // namespace oracle
