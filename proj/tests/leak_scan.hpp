#pragma once

#include <json.hpp>

#include <string>

// True when any object key anywhere in `j` names the car's location.
inline bool mentions_car(const nlohmann::json& j) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (key.find("car") != std::string::npos) return true;
            if (mentions_car(value)) return true;
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (mentions_car(v)) return true;
        }
    }
    return false;
}
