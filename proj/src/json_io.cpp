#include "slm/json_io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace slm {

using nlohmann::json;

nlohmann::json to_json(const LocalMeasure& m) {
  json j;
  j["pieces"] = json::array();
  for (const Piece& p : m.pieces())
    j["pieces"].push_back({p.lo, p.hi, p.density});
  j["atoms"] = json::array();
  for (const Atom& a : m.atoms()) j["atoms"].push_back({a.pos, a.weight});
  if (m.period())
    j["period"] = *m.period();
  else
    j["period"] = nullptr;
  return j;
}

LocalMeasure measure_from_json(const json& j) {
  std::vector<Piece> pieces;
  if (j.contains("pieces"))
    for (const auto& r : j.at("pieces"))
      pieces.push_back({r.at(0).get<double>(), r.at(1).get<double>(),
                        r.at(2).get<double>()});
  std::vector<Atom> atoms;
  if (j.contains("atoms"))
    for (const auto& r : j.at("atoms"))
      atoms.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
  std::optional<double> period;
  if (j.contains("period") && !j.at("period").is_null())
    period = j.at("period").get<double>();
  return LocalMeasure(std::move(pieces), std::move(atoms), period);
}

nlohmann::json to_json(const StepFunction& f) {
  json j;
  j["pieces"] = json::array();
  for (const StepPiece& p : f.pieces())
    j["pieces"].push_back({p.lo, p.hi, p.value});
  if (f.period())
    j["period"] = *f.period();
  else
    j["period"] = nullptr;
  j["default"] = f.default_value();
  return j;
}

StepFunction step_from_json(const json& j) {
  if (j.is_number()) return StepFunction(j.get<double>());
  std::vector<StepPiece> pieces;
  if (j.contains("pieces"))
    for (const auto& r : j.at("pieces"))
      pieces.push_back({r.at(0).get<double>(), r.at(1).get<double>(),
                        r.at(2).get<double>()});
  std::optional<double> period;
  if (j.contains("period") && !j.at("period").is_null())
    period = j.at("period").get<double>();
  const double dv = j.value("default", 0.0);
  if (pieces.empty()) return StepFunction(dv);
  return StepFunction(std::move(pieces), period, dv);
}

nlohmann::json to_json(const Coefficients& c) {
  json j;
  j["diffusion"] = to_json(c.diffusion);
  j["weight"] = to_json(c.weight);
  j["potential"] = to_json(c.potential);
  return j;
}

Coefficients coefficients_from_json(const json& j,
                                    std::vector<double>* scan_periods,
                                    double* sampling_step) {
  if (sampling_step) *sampling_step = 0.0;
  if (j.contains("preset")) {
    const std::string preset = j.at("preset").get<std::string>();
    if (preset == "schroedinger")
      return schroedinger(measure_from_json(j.at("potential")));
    if (preset == "classical")
      return classical(step_from_json(j.at("r")), step_from_json(j.at("a")),
                       step_from_json(j.at("q")));
    if (preset == "jacobi") {
      const auto a_seq = j.at("a_seq").get<std::vector<double>>();
      const auto b_seq = j.at("b_seq").get<std::vector<double>>();
      if (j.value("periodic", true)) return jacobi(a_seq, b_seq);
      return jacobi_window(a_seq, b_seq, j.value("start_index", 0LL));
    }
    if (preset == "quasiperiodic") {
      const QuasiperiodicSystem sys = example_quasiperiodic(
          j.value("B", 1.0), j.value("m_max", 4), j.value("h", 1e-3));
      if (scan_periods) *scan_periods = sys.scan_periods;
      if (sampling_step) *sampling_step = sys.h;
      return sys.realized;
    }
    throw std::invalid_argument("unknown preset: " + preset);
  }
  Coefficients c;
  c.diffusion = step_from_json(j.at("diffusion"));
  c.weight = measure_from_json(j.at("weight"));
  c.potential = measure_from_json(j.at("potential"));
  return c;
}

nlohmann::json to_json(const GordonReport& r) {
  json j;
  j["C_used"] = r.C_used;
  j["periods"] = r.periods;
  j["distances"] = r.distances;
  j["log_weighted"] = json::array();
  for (double v : r.log_weighted) {
    if (std::isfinite(v))
      j["log_weighted"].push_back(v);
    else
      j["log_weighted"].push_back(nullptr);  // D == 0
  }
  j["weighted"] = json::array();
  for (double v : r.weighted) {
    if (std::isnan(v))
      j["weighted"].push_back(nullptr);  // |log| > 700: see log_weighted
    else
      j["weighted"].push_back(v);
  }
  j["exponent_estimates"] = json::array();
  for (double v : r.exponent_estimates) {
    if (std::isfinite(v))
      j["exponent_estimates"].push_back(v);
    else
      j["exponent_estimates"].push_back(nullptr);
  }
  j["C_hat"] = r.C_hat_infinite ? json(nullptr) : json(r.C_hat);
  j["C_hat_infinite"] = r.C_hat_infinite;
  j["bound_basic"] = r.bound_basic;
  j["bound_refined"] = {{"value", r.bound_refined},
                        {"argmin_r", r.bound_refined_argmin_r},
                        {"sup_value", r.bound_refined_sup},
                        {"argmax_r", r.bound_refined_argmax_r}};
  j["sampling_step"] = r.sampling_step;
  j["verdict"] = r.verdict;
  j["tolerance"] = r.tolerance;
  return j;
}

std::string gordon_report_csv(const GordonReport& r) {
  std::ostringstream os;
  os << "# schema=1\n";
  os << "p,D,weighted,log_weighted,exponent\n";
  os.precision(17);
  for (std::size_t i = 0; i < r.periods.size(); ++i) {
    os << r.periods[i] << ',' << r.distances[i] << ',';
    if (std::isnan(r.weighted[i]))
      os << "";
    else
      os << r.weighted[i];
    os << ',';
    if (std::isfinite(r.log_weighted[i]))
      os << r.log_weighted[i];
    else
      os << "-inf";
    os << ',';
    if (std::isfinite(r.exponent_estimates[i]))
      os << r.exponent_estimates[i];
    else
      os << "inf";
    os << '\n';
  }
  return os.str();
}

nlohmann::json to_json(const ValidationReport& v) {
  json j;
  j["sup_a"] = v.sup_a;
  j["inf_a"] = v.inf_a;
  j["sup_inv_a"] = std::isfinite(v.sup_inv_a) ? json(v.sup_inv_a) : json(nullptr);
  j["unif_mu"] = v.unif_mu;
  j["unif_rho"] = v.unif_rho;
  j["pass"] = v.pass();
  j["failures"] = v.failures;
  return j;
}

}  // namespace slm
