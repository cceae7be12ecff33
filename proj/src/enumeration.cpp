#include "nilmcx/enumeration.hpp"

#include <algorithm>

namespace nilmcx {

std::uint64_t count_combinations(const ApplianceSet& set) {
    validate_appliance_set(set);
    std::uint64_t m = 1;
    for (const auto& app : set.appliances) {
        const auto z = static_cast<std::uint64_t>(app.state_count());
        if (__builtin_mul_overflow(m, z, &m)) {
            throw Error("combination count overflows 64-bit integer arithmetic");
        }
    }
    return m;
}

AggregatedValueSet enumerate_values(const ApplianceSet& set, const EnumerationBudget& budget) {
    if (budget.max_combinations < 1) {
        throw ConfigError("enumeration budget must allow at least 1 combination");
    }
    const std::uint64_t m = count_combinations(set);
    if (m > budget.max_combinations && !budget.force) {
        throw BudgetError("appliance set yields " + std::to_string(m) +
                          " combinations, above the cap of " + std::to_string(budget.max_combinations) +
                          " (use force to override)");
    }

    const std::size_t n = set.appliances.size();
    AggregatedValueSet out;
    out.radices.reserve(n);
    for (const auto& app : set.appliances) {
        out.radices.push_back(static_cast<std::uint32_t>(app.state_count()));
    }

    // Mixed-radix odometer with an incrementally maintained sum: each step
    // swaps one appliance's state power in the running total.
    out.values.reserve(m);
    std::vector<std::uint32_t> digits(n, 0);
    Power sum;
    for (std::uint64_t rank = 0; rank < m; ++rank) {
        out.values.push_back(AggregatedValue{sum, rank, 0});
        for (std::size_t i = 0; i < n; ++i) {
            const auto& powers = set.appliances[i].state_powers;
            if (digits[i] + 1 < out.radices[i]) {
                sum = Power::from_centiwatts(sum.centiwatts() - powers[digits[i]].centiwatts() +
                                             powers[digits[i] + 1].centiwatts());
                ++digits[i];
                break;
            }
            sum = Power::from_centiwatts(sum.centiwatts() - powers[digits[i]].centiwatts());
            digits[i] = 0;
        }
    }

    std::sort(out.values.begin(), out.values.end(), [](const AggregatedValue& a, const AggregatedValue& b) {
        if (a.power != b.power) return a.power < b.power;
        return a.rank < b.rank;
    });

    for (auto& value : out.values) {
        if (out.groups.empty() || out.groups.back().power != value.power) {
            out.groups.push_back(ValueGroup{value.power, 0});
        }
        ++out.groups.back().multiplicity;
        value.group = static_cast<std::uint32_t>(out.groups.size() - 1);
    }
    out.p_max = out.values.back().power;
    return out;
}

}  // namespace nilmcx
