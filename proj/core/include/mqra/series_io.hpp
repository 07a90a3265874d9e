#pragma once

#include <string>

#include "mqra/approximant.hpp"
#include "mqra/perturb.hpp"

namespace mqra {

/// JSON document layouts:
///   SeriesData    {"family":{"a":..,"b":..},"level":..,"point":{"type":"finite","alpha":..}
///                  or {"type":"asymptotic"},"coefficients":[..],"meta":{..}}
///   RationalSeries  same shape with "exact":true and "num/den" strings
///   Approximant   {"family":..,"level":..,"N":..,"mu":..,
///                  "pieces":[{"exponent":"1/3","coeffs":[..]},..],"q":[..],
///                  "constraints":[..],"residual":..}
std::string to_json_string(const SeriesData& series);
std::string to_json_string(const RationalSeries& series);
std::string to_json_string(const Approximant& approx);

SeriesData series_from_json(const std::string& text);
Approximant approximant_from_json(const std::string& text);

}  // namespace mqra
