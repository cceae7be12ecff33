#include "nilmcx/domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace nilmcx {

Power Power::from_watts(double watts) {
    if (!std::isfinite(watts)) {
        throw ValidationError("power value must be finite");
    }
    const double scaled = watts * static_cast<double>(scale);
    const double rounded = std::llround(scaled);
    if (std::abs(scaled - rounded) > 1e-6 * std::max(1.0, std::abs(scaled))) {
        throw ValidationError("power value has more than 2 decimal places: " + std::to_string(watts));
    }
    return Power(static_cast<std::int64_t>(rounded));
}

ApplianceSet validate_appliance_set(ApplianceSet set) {
    if (set.appliances.empty()) {
        throw ValidationError("appliance set is empty");
    }
    std::set<std::string> names;
    for (const auto& app : set.appliances) {
        if (app.name.empty()) {
            throw ValidationError("appliance with empty name");
        }
        if (!names.insert(app.name).second) {
            throw ValidationError("duplicate appliance name: " + app.name);
        }
        if (app.state_powers.size() < 2) {
            throw ValidationError("appliance " + app.name + " needs at least 2 states (on/off)");
        }
        if (app.state_powers.front().centiwatts() != 0) {
            throw ValidationError("appliance " + app.name + ": missing off state (state_powers[0] must be 0)");
        }
        for (std::size_t i = 1; i < app.state_powers.size(); ++i) {
            if (app.state_powers[i].centiwatts() < 0) {
                throw ValidationError("appliance " + app.name + ": negative state power");
            }
            if (app.state_powers[i] <= app.state_powers[i - 1]) {
                throw ValidationError("appliance " + app.name + ": state powers must be strictly increasing");
            }
        }
    }
    return set;
}

ApplianceSet appliance_set_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid appliance JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("appliances") || !doc["appliances"].is_array()) {
        throw ParseError("appliance JSON must be an object with an \"appliances\" array");
    }
    ApplianceSet set;
    for (const auto& item : doc["appliances"]) {
        if (!item.is_object() || !item.contains("name") || !item.contains("states_w")) {
            throw ParseError("each appliance needs \"name\" and \"states_w\"");
        }
        ApplianceModel model;
        model.name = item["name"].get<std::string>();
        for (const auto& v : item["states_w"]) {
            if (!v.is_number()) {
                throw ParseError("appliance " + model.name + ": states_w entries must be numbers");
            }
            model.state_powers.push_back(Power::from_watts(v.get<double>()));
        }
        set.appliances.push_back(std::move(model));
    }
    return validate_appliance_set(std::move(set));
}

std::string appliance_set_to_json(const ApplianceSet& set) {
    nlohmann::ordered_json doc;
    doc["appliances"] = nlohmann::ordered_json::array();
    for (const auto& app : set.appliances) {
        nlohmann::ordered_json entry;
        entry["name"] = app.name;
        auto states = nlohmann::ordered_json::array();
        for (const auto& p : app.state_powers) {
            if (p.centiwatts() % Power::scale == 0) {
                states.push_back(p.centiwatts() / Power::scale);
            } else {
                states.push_back(p.watts());
            }
        }
        entry["states_w"] = std::move(states);
        doc["appliances"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

std::vector<std::uint32_t> AggregatedValueSet::combination(std::uint64_t rank) const {
    std::vector<std::uint32_t> digits(radices.size());
    for (std::size_t i = 0; i < radices.size(); ++i) {
        digits[i] = static_cast<std::uint32_t>(rank % radices[i]);
        rank /= radices[i];
    }
    return digits;
}

const NamedChannel* PowerTrace::find(const std::string& name) const {
    for (const auto& ch : channels) {
        if (ch.name == name) return &ch;
    }
    return nullptr;
}

const NamedChannel& PowerTrace::single_channel(const std::string& name) const {
    if (!name.empty()) {
        const auto* ch = find(name);
        if (!ch) throw ValidationError("trace has no channel named " + name);
        return *ch;
    }
    if (channels.size() != 1) {
        throw ValidationError("trace has " + std::to_string(channels.size()) +
                              " channels; name the one to use");
    }
    return channels.front();
}

void validate_trace(const PowerTrace& trace) {
    if (trace.sample_period_s <= 0.0) {
        throw ValidationError("sample period must be > 0");
    }
    if (trace.channels.empty() || trace.channels.front().samples.empty()) {
        throw ValidationError("trace must hold at least one sample");
    }
    std::set<std::string> names;
    const std::size_t len = trace.channels.front().samples.size();
    for (const auto& ch : trace.channels) {
        if (!names.insert(ch.name).second) {
            throw ValidationError("duplicate channel name: " + ch.name);
        }
        if (ch.samples.size() != len) {
            throw ValidationError("channel " + ch.name + " length differs from the others");
        }
        for (double s : ch.samples) {
            if (!std::isfinite(s)) {
                throw ValidationError("channel " + ch.name + " has a non-finite sample");
            }
        }
    }
}

}  // namespace nilmcx
