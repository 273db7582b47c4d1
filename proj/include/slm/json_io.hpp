#pragma once

// JSON (de)serialization of measures, step functions, coefficient specs and
// scan reports, plus the CSV writers used by the CLI.
//
// Measure literal:  {"pieces": [[lo, hi, density], ...],
//                    "atoms":  [[pos, weight], ...],
//                    "period": number | null}
// Step literal:     {"pieces": [[lo, hi, value], ...],
//                    "period": number | null, "default": number}
// Coefficient spec: {"diffusion": step, "weight": measure, "potential": measure}
//                   or {"preset": "classical" | "schroedinger" | "jacobi"
//                        | "quasiperiodic", ...preset params}

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "slm/bounds.hpp"
#include "slm/coefficients.hpp"
#include "slm/quasiperiodic.hpp"

namespace slm {

nlohmann::json to_json(const LocalMeasure& m);
LocalMeasure measure_from_json(const nlohmann::json& j);

nlohmann::json to_json(const StepFunction& f);
StepFunction step_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Coefficients& c);

// Parses either an explicit triple or a preset spec.  A "quasiperiodic"
// preset realizes the worked example for the given (B, m_max, h) and also
// returns its scan periods through *scan_periods when non-null.
Coefficients coefficients_from_json(const nlohmann::json& j,
                                    std::vector<double>* scan_periods = nullptr,
                                    double* sampling_step = nullptr);

nlohmann::json to_json(const GordonReport& r);
std::string gordon_report_csv(const GordonReport& r);

nlohmann::json to_json(const ValidationReport& v);

}  // namespace slm
