#include "widthbright/io.hpp"

#include "widthbright/errors.hpp"

#include <cmath>
#include <cstdio>

namespace wb {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json body_to_json(const SupportFunction& h) {
  nlohmann::ordered_json j;
  j["basis"] = "real-sph-harm";
  j["normalization"] = "orthonormal on S^2, no Condon-Shortley phase; Y00 = 1/(2 sqrt(pi))";
  j["lmax"] = h.lmax();
  j["coeffs"] = std::vector<double>(h.coeffs().begin(), h.coeffs().end());
  if (h.closed_form()) {
    const ClosedForm& f = *h.closed_form();
    nlohmann::ordered_json cf;
    cf["kind"] = f.tag();
    if (f.kind == ClosedForm::Kind::ball) {
      cf["radius"] = f.axes[0];
    } else {
      cf["axes"] = {f.axes[0], f.axes[1], f.axes[2]};
    }
    cf["truncation_error"] = h.truncation_error();
    j["closed_form"] = cf;
  }
  j["label"] = h.label();
  return j;
}

SupportFunction body_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw InputError("body spec must be a JSON object");
    if (j.value("basis", std::string{}) != "real-sph-harm") {
      throw InputError("body spec: basis must be \"real-sph-harm\"");
    }
    const int lmax = j.at("lmax").get<int>();
    if (lmax < 0) throw InputError("body spec: lmax must be >= 0");
    std::vector<double> coeffs = j.at("coeffs").get<std::vector<double>>();
    if (coeffs.size() != harmonic_count(lmax)) {
      throw InputError("body spec: lmax " + std::to_string(lmax) + " needs " +
                       std::to_string(harmonic_count(lmax)) +
                       " coefficients, found " + std::to_string(coeffs.size()));
    }
    SupportFunction h(lmax, std::move(coeffs), j.value("label", std::string{}));
    if (j.contains("closed_form") && !j["closed_form"].is_null()) {
      const auto& cf = j["closed_form"];
      ClosedForm f;
      const std::string kind = cf.at("kind").get<std::string>();
      if (kind == "ball") {
        f.kind = ClosedForm::Kind::ball;
        f.axes = Vec3::Constant(cf.at("radius").get<double>());
      } else if (kind == "ellipsoid") {
        f.kind = ClosedForm::Kind::ellipsoid;
        const auto ax = cf.at("axes").get<std::vector<double>>();
        if (ax.size() != 3) throw InputError("body spec: ellipsoid needs 3 axes");
        f.axes = Vec3(ax[0], ax[1], ax[2]);
      } else {
        throw InputError("body spec: unknown closed_form kind \"" + kind + "\"");
      }
      h.set_closed_form(f, cf.value("truncation_error", 0.0));
    }
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("body spec: ") + e.what());
  }
}

nlohmann::ordered_json certificate_to_json(const ConvexityCertificate& c) {
  nlohmann::ordered_json j;
  j["convex"] = c.convex();
  j["min_eigenvalue"] = c.min_eigenvalue;
  j["det_min"] = c.det_min;
  j["node_of_min"] = c.node_of_min;
  j["tol_psd"] = c.tolerance;
  return j;
}

nlohmann::ordered_json parity_report_to_json(const ParityReport& r) {
  nlohmann::ordered_json j;
  j["max_odd_violation_sigma"] = r.max_odd_violation_sigma;
  j["max_even_violation_det_p"] = r.max_even_violation_det_p;
  j["max_hessian_parity_violation"] = r.max_hessian_parity_violation;
  j["max_identity_residual"] = r.max_identity_residual();
  return j;
}

std::string profile_to_csv(const BrightnessProfile& p) {
  std::string out = "ax,ay,az,area,method\n";
  const std::string method = method_name(p.method);
  for (std::size_t i = 0; i < p.directions.size(); ++i) {
    const Vec3& a = p.directions[i];
    out += format_double(a.x()) + "," + format_double(a.y()) + "," +
           format_double(a.z()) + "," + format_double(p.areas[i]) + "," +
           method + "\n";
  }
  return out;
}

std::string trace_to_csv(const OptimizerTrace& t) {
  std::string out = "iter,coeff_norm,variance,min_eig,step\n";
  for (std::size_t i = 0; i < t.iterations.size(); ++i) {
    const OptimizerIterate& it = t.iterations[i];
    out += std::to_string(i) + "," + format_double(it.coeff_norm) + "," +
           format_double(it.variance) + "," + format_double(it.min_eigenvalue) +
           "," + format_double(it.step) + "\n";
  }
  return out;
}

}  // namespace wb
