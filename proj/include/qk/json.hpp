#pragma once

#include "qk/quasi_kernel.hpp"
#include "qk/vertex_set.hpp"

#include <json.hpp>

namespace qk {

/// Vertex sets serialize as ascending member arrays.
inline void to_json(nlohmann::json& j, const VertexSet& set) { j = set.members(); }

inline void to_json(nlohmann::json& j, const Certificate& cert) {
    j = nlohmann::json{
        {"n", cert.kernel_set.universe()},
        {"kernel", cert.kernel_set},
        {"size", cert.kernel_set.size()},
        {"bound_numerator", cert.bound_numerator},
        {"valid", cert.valid},
        {"within_bound", cert.within_bound},
        {"method", cert.method},
    };
}

} // namespace qk
