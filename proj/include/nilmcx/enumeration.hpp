#pragma once

#include <cstdint>

#include "nilmcx/domain.hpp"

namespace nilmcx {

struct EnumerationBudget {
    // Eq. 2 style combination counts grow exponentially in the appliance
    // count; refuse anything bigger than this unless forced.
    std::uint64_t max_combinations = std::uint64_t{1} << 24;
    bool force = false;
};

// M = product of per-appliance state counts. Exact 64-bit arithmetic;
// overflow throws.
std::uint64_t count_combinations(const ApplianceSet& set);

// All M state combinations with their exact summed powers, sorted by power
// ascending (rank as tiebreak) and grouped by equal power.
AggregatedValueSet enumerate_values(const ApplianceSet& set, const EnumerationBudget& budget = {});

}  // namespace nilmcx
