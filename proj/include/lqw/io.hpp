#pragma once

#include <string>
#include <vector>

#include "lqw/birman_schwinger.hpp"
#include "lqw/chord_arc.hpp"
#include "lqw/spectral_bounds.hpp"

namespace lqw {

// CSV with header kappa,mu_1,...,mu_k; 17 significant digits.
std::string eigenvalue_curve_csv(const std::vector<EigenCurveRow>& rows);

// JSON array of {kappa, lambda, branch, residual} records.
std::string bound_states_json(const std::vector<BoundState>& states);

// SpectralReport <-> JSON:
// {alpha, ess_threshold, bound, bound_kind, pieces:[{c, extension}],
//  states:[{lambda, kappa, residual, pass}], ...}
std::string report_json(const SpectralReport& rep);
// Parses and schema-validates a written report (round-trip check).
SpectralReport parse_report_json(const std::string& text);

std::string chord_arc_json(const ChordArcResult& r);
std::string chord_arc_csv(const ChordArcResult& r);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

std::string format_double(double v);  // 17 significant digits

}  // namespace lqw
