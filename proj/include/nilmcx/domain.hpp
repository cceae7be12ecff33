#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilmcx {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class BudgetError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Power level held as integer centiwatts (0.01 W grid) so that sums and
// equality comparisons of state powers are exact.
class Power {
public:
    static constexpr std::int64_t scale = 100;  // centiwatts per watt

    constexpr Power() = default;

    // Rejects non-finite input and anything finer than 2 decimal places.
    static Power from_watts(double watts);

    static constexpr Power from_centiwatts(std::int64_t cw) { return Power(cw); }

    constexpr double watts() const { return static_cast<double>(cw_) / scale; }
    constexpr std::int64_t centiwatts() const { return cw_; }

    friend constexpr auto operator<=>(Power a, Power b) = default;

    constexpr Power operator+(Power o) const { return Power(cw_ + o.cw_); }
    constexpr Power& operator+=(Power o) {
        cw_ += o.cw_;
        return *this;
    }

private:
    constexpr explicit Power(std::int64_t cw) : cw_(cw) {}
    std::int64_t cw_ = 0;
};

// An appliance as its ordered steady-state power levels. state_powers[0] is
// always the 0 W off state; levels are strictly increasing.
struct ApplianceModel {
    std::string name;
    std::vector<Power> state_powers;

    std::size_t state_count() const { return state_powers.size(); }
};

struct ApplianceSet {
    std::vector<ApplianceModel> appliances;

    std::size_t size() const { return appliances.size(); }
};

// Returns the set unchanged if every invariant holds, otherwise throws
// ValidationError naming the offending appliance.
ApplianceSet validate_appliance_set(ApplianceSet set);

// JSON schema: {"appliances": [{"name": str, "states_w": [0, ...]}]}
// Extra top-level keys (e.g. a provenance block) are ignored on input.
ApplianceSet appliance_set_from_json(const std::string& text);
std::string appliance_set_to_json(const ApplianceSet& set);

// One state combination of an appliance set. rank is the mixed-radix
// combination id (appliance 0 is the least significant digit); group indexes
// into AggregatedValueSet::groups.
struct AggregatedValue {
    Power power;
    std::uint64_t rank = 0;
    std::uint32_t group = 0;
};

struct ValueGroup {
    Power power;
    std::uint64_t multiplicity = 0;
};

// The M combined power values of an appliance set, sorted by power with
// equal powers grouped. metadata_free marks sets inferred from a bare trace
// histogram, where no combination provenance exists.
struct AggregatedValueSet {
    std::vector<AggregatedValue> values;
    std::vector<ValueGroup> groups;
    std::vector<std::uint32_t> radices;  // states per appliance; empty when metadata_free
    Power p_max;
    bool metadata_free = false;

    std::uint64_t m_total() const { return values.size(); }

    // Decodes a combination rank into per-appliance state indices.
    std::vector<std::uint32_t> combination(std::uint64_t rank) const;
};

struct ComplexitySpectrum {
    struct Entry {
        Power power;
        double complexity = 0.0;
    };
    std::vector<Entry> entries;  // one per aggregated value, same order as the set
    double mean = 0.0;
    double max = 0.0;
    double sigma = 0.0;  // kernel sigma, echoed into reports
};

struct NamedChannel {
    std::string name;
    std::vector<double> samples;  // watts
};

struct PowerTrace {
    double sample_period_s = 1.0;
    std::int64_t start_time = 0;  // epoch seconds
    std::vector<NamedChannel> channels;

    std::size_t length() const { return channels.empty() ? 0 : channels.front().samples.size(); }
    const NamedChannel* find(const std::string& name) const;
    // The channel Eq. 5 style operations run on: the named channel, or the
    // only channel when name is empty.
    const NamedChannel& single_channel(const std::string& name = "") const;
};

void validate_trace(const PowerTrace& trace);

struct DetectedLevel {
    double watts = 0.0;
    std::size_t count = 0;  // supporting edge pairs
};

struct DetectedStateSet {
    struct Channel {
        std::string name;
        std::vector<DetectedLevel> levels;
    };
    std::vector<Channel> channels;
};

struct DisaggregationResult {
    struct PerAppliance {
        std::string name;
        std::vector<std::uint16_t> states;  // decided state index per sample
        double real_kwh = 0.0;              // filled by score()
        double estimated_kwh = 0.0;
    };
    std::vector<PerAppliance> appliances;
    double total_real_kwh = 0.0;
    double total_estimated_kwh = 0.0;
    double sample_period_s = 1.0;
    std::uint32_t degeneracy_warnings = 0;
};

}  // namespace nilmcx
