#pragma once

#include <string>
#include <vector>

#include "catcode/codes.hpp"
#include "catcode/recovery.hpp"

namespace catcode {

// Codes serialize to a single JSON document carrying the group (by name plus
// the explicit element list), the seed parameters, the cutoff and both
// codewords; loading reconstructs a bosonic_code that reproduces the stored
// covariance residual exactly.
std::string code_to_json(const bosonic_code& c);
void save_code(const bosonic_code& c, const std::string& path);
bosonic_code load_code(const std::string& path);

// Deterministic CSV: fixed header, fixed float formatting, rows in input order.
std::string sweep_csv(const std::vector<sweep_row>& rows);

std::string error_json(const std::string& id, const std::string& message);

std::string format_double(double v);       // shortest round-trip decimal
std::string format_sci(double v);          // fixed scientific, 12 digits

}  // namespace catcode
