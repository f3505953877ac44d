#pragma once

#include <string>

#include "qzec/capacity.hpp"

namespace qzec {

// Machine-readable report; floats carry 12 significant digits, and the
// serialized form is a fixed point of parse + reserialize.
std::string report_to_json(const CapacityReport& rep);

// Human-readable two-column table.
std::string report_to_table(const CapacityReport& rep);

CapacityReport report_from_json(const std::string& text);

std::string format_double(double v);  // %.12g

}  // namespace qzec
