#pragma once

#include <istream>
#include <string>

#include "chebconvex/functions.hpp"
#include "chebconvex/systems.hpp"

namespace chebconvex {

/// System spec:
///   {"kind": "poly"|"trig-odd"|"trig-even"|"one-xsq", "n": int,
///    "domain": {"lo": number|"-inf", "hi": number|"inf",
///               "open_lo": bool, "open_hi": bool}}
/// or {"kind": "table", "table": {"points": [...], "values": [[...], ...]}}.
/// Domain is optional for the built-in kinds (family default applies);
/// "n" is ignored by one-xsq and tables.
ChebSystem parse_system_spec(const std::string& json_text);

/// Function spec:
///   {"source": "table", "points": [...], "values": [...]}
/// or {"source": "builtin", "name": "poly"|"abs"|"exp"|"sin", "params": [...]}.
SampledFunction parse_function_spec(const std::string& json_text);

/// CSV table with header "x,f" and one "x,f" row per sample.
SampledFunction parse_function_csv(std::istream& in);

}  // namespace chebconvex
