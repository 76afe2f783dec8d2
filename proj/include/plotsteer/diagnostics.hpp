#pragma once
// Residual diagnostics: the quantities a judge reasons about. Emitted as the
// machine-readable sidecar next to every rendered plot.

#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "plotsteer/errors.hpp"

namespace plotsteer::gateway {

struct ResidualDiagnostics {
    std::size_t n = 0;         // sample count
    std::size_t k_params = 0;  // fitted-parameter count, n > k_params
    double reduced_chi2 = 0.0;
    double max_abs_sigma = 0.0;  // max |residual|/sigma in noise units
    double runs_z = 0.0;         // |z| of the runs test; +inf when signs degenerate
    double bic = 0.0;
    bool operator==(const ResidualDiagnostics&) const = default;
};

// JSON cannot hold infinities; the degenerate-signs sentinel round-trips as "inf".
inline nlohmann::json to_json(const ResidualDiagnostics& d) {
    nlohmann::json j{{"n", d.n},
                     {"k_params", d.k_params},
                     {"reduced_chi2", d.reduced_chi2},
                     {"max_abs_sigma", d.max_abs_sigma},
                     {"bic", d.bic}};
    if (std::isinf(d.runs_z))
        j["runs_z"] = "inf";
    else
        j["runs_z"] = d.runs_z;
    return j;
}

inline ResidualDiagnostics diagnostics_from_json(const nlohmann::json& j) {
    ResidualDiagnostics d;
    try {
        d.n = j.at("n").get<std::size_t>();
        d.k_params = j.at("k_params").get<std::size_t>();
        d.reduced_chi2 = j.at("reduced_chi2").get<double>();
        d.max_abs_sigma = j.at("max_abs_sigma").get<double>();
        d.bic = j.at("bic").get<double>();
        const auto& rz = j.at("runs_z");
        d.runs_z = rz.is_string() ? std::numeric_limits<double>::infinity()
                                  : rz.get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaViolation("diagnostics", e.what());
    }
    if (d.n <= d.k_params) throw SchemaViolation("n", "requires n > k_params");
    if (d.reduced_chi2 < 0) throw SchemaViolation("reduced_chi2", "must be >= 0");
    if (d.max_abs_sigma < 0) throw SchemaViolation("max_abs_sigma", "must be >= 0");
    return d;
}

inline std::string serialize_diagnostics(const ResidualDiagnostics& d) {
    return to_json(d).dump(2);
}

inline ResidualDiagnostics parse_diagnostics(const std::string& doc) {
    nlohmann::json j = nlohmann::json::parse(doc, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw MalformedDocument("diagnostics sidecar is not a key-value tree");
    return diagnostics_from_json(j);
}

// Diagnostics rendered as text, for text-only runs where no image is attached.
inline std::string diagnostics_as_text(const ResidualDiagnostics& d) {
    std::string z = std::isinf(d.runs_z) ? "inf" : std::to_string(d.runs_z);
    return "residual diagnostics: n=" + std::to_string(d.n) +
           " k_params=" + std::to_string(d.k_params) +
           " reduced_chi2=" + std::to_string(d.reduced_chi2) +
           " max_abs_sigma=" + std::to_string(d.max_abs_sigma) + " runs_z=" + z +
           " bic=" + std::to_string(d.bic);
}

} // namespace plotsteer::gateway
