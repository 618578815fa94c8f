#pragma once

#include "widthbright/brightness.hpp"
#include "widthbright/support_body.hpp"
#include "widthbright/theorem_lab.hpp"

#include <json.hpp>

#include <string>

namespace wb {

// %.17g: enough digits to round-trip every double.
std::string format_double(double v);

// Body-spec JSON:
//   {"basis": "real-sph-harm", "lmax": L, "coeffs": [...],
//    "closed_form": {...} (optional), "label": "..."}
// Coefficients in (l, m) order, l ascending, m from -l to l. Basis functions
// are orthonormal on S^2, so Y_00 = 1 / (2 sqrt(pi)) and a unit ball has
// coeffs [2 sqrt(pi)].
nlohmann::ordered_json body_to_json(const SupportFunction& h);
// Throws InputError for schema violations.
SupportFunction body_from_json(const nlohmann::json& j);

nlohmann::ordered_json certificate_to_json(const ConvexityCertificate& c);
nlohmann::ordered_json parity_report_to_json(const ParityReport& r);

// "ax,ay,az,area,method" header then one row per direction.
std::string profile_to_csv(const BrightnessProfile& p);

// "iter,coeff_norm,variance,min_eig,step" header then one row per iterate.
std::string trace_to_csv(const OptimizerTrace& t);

}  // namespace wb
