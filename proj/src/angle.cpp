#include "subwave/angle.hpp"

#include <cmath>
#include <stdexcept>

namespace subwave {

namespace {

double parse_full_double(const std::string& text) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_angle: '" + text + "' is not a number");
    }
    if (consumed != text.size()) {
        throw std::invalid_argument("parse_angle: trailing characters in '" + text + "'");
    }
    if (!std::isfinite(value)) {
        throw std::invalid_argument("parse_angle: angle must be finite");
    }
    return value;
}

}  // namespace

Angle parse_angle(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("parse_angle: empty angle");
    }
    Angle angle;
    if (text == "pi") {
        angle.pi_suffix = true;
        angle.pi_multiplier = 1.0;
        angle.radians = M_PI;
        return angle;
    }
    if (text.size() > 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
        angle.pi_suffix = true;
        angle.pi_multiplier = parse_full_double(text.substr(0, text.size() - 2));
        angle.radians = angle.pi_multiplier * M_PI;
        return angle;
    }
    angle.radians = parse_full_double(text);
    return angle;
}

}  // namespace subwave
