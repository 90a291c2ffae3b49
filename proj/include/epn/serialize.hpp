#pragma once

#include "epn/metric.hpp"

#include <json.hpp>

#include <string>

namespace epn {

/// {"n": N, "backend": "exact"|"float", "entries": row-major array}.
/// Exact entries are four-element arrays of "p/q" strings (coefficients of
/// 1, sqrt2, sqrt3, sqrt6); float entries are plain numbers.
nlohmann::json matrix_to_json(const HamiltonianMatrix& h);

nlohmann::json spectral_report_to_json(const SpectralReport& rep);

nlohmann::json jordan_to_json(const JordanStructure& js);

/// Label grammar "n1xc1,n2xc2,..." -> validated Decomposition for dimension N.
/// Throws std::invalid_argument naming the first violated invariant.
Decomposition parse_decomposition_label(const std::string& label, int n);

std::string classification_table_csv(const std::vector<TableRow>& rows);
std::string classification_table_text(const std::vector<TableRow>& rows);

} // namespace epn
