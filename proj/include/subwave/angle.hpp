// angle.hpp — CLI angle parsing
//
// Angles are quoted in multiples of pi throughout this domain, so the CLI
// accepts "<float>pi" and bare "pi" in addition to plain radians.  A pi
// suffix is remembered so downstream grid generation can materialize
// multiples of pi late (exact multiples instead of accumulated rounding).

#pragma once

#include <string>

namespace subwave {

struct Angle {
    double radians = 0.0;
    bool pi_suffix = false;
    double pi_multiplier = 0.0;  // meaningful only when pi_suffix
};

// Accepts "<float>", "<float>pi", or "pi".  Throws std::invalid_argument
// on anything else.
Angle parse_angle(const std::string& text);

}  // namespace subwave
