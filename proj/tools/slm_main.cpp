// Command-line front end: coefficient ingestion, solution/transfer/seminorm
// computations, period scans, exclusion bounds, the property-suite runner and
// the worked quasiperiodic example.
//
// Exit codes: 0 ok, 1 validation/parse error, 2 property violation,
// 3 numeric failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "slm/bounds.hpp"
#include "slm/json_io.hpp"
#include "slm/quasiperiodic.hpp"
#include "slm/seminorm.hpp"
#include "slm/transfer.hpp"
#include "slm/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitProperty = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  double z = 0.0;
  double from = 0.0;
  double to = 1.0;
  int grid = 101;
  double C = 1.0;
  std::vector<double> C_list;
  std::vector<double> periods;
  std::vector<double> r_grid;
  std::uint64_t seed = 20240811;
  double tol = 1e-6;
  double init_u = 1.0;
  double init_w = 0.0;
  double B = 1.0;
  int m_max = 4;
  double h = 1e-3;
  int scale = 1;
  int refine = 64;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream os(opt.output);
    if (!os) throw std::runtime_error("cannot open output: " + opt.output);
    os << text;
  }
}

slm::Coefficients load_coefficients(const Options& opt,
                                    std::vector<double>* scan_periods = nullptr,
                                    double* sampling_step = nullptr) {
  if (opt.input.empty())
    throw std::invalid_argument("--input coefficient spec required");
  std::ifstream is(opt.input);
  if (!is) throw std::invalid_argument("cannot open input: " + opt.input);
  json j = json::parse(is);
  slm::Coefficients c =
      slm::coefficients_from_json(j, scan_periods, sampling_step);
  const slm::ValidationReport v = slm::validate(c);
  if (!v.pass()) {
    std::ostringstream msg;
    msg << "coefficient validation failed:";
    for (const std::string& f : v.failures) msg << "\n  - " << f;
    throw std::invalid_argument(msg.str());
  }
  return c;
}

std::string csv_solve(const std::vector<double>& grid,
                      const std::vector<slm::PhaseVector>& vals) {
  std::ostringstream os;
  os << "# schema=1\n";
  os << "t,u,w\n";
  os.precision(17);
  for (std::size_t i = 0; i < grid.size(); ++i)
    os << grid[i] << ',' << vals[i].u << ',' << vals[i].w << '\n';
  return os.str();
}

int cmd_solve(const Options& opt) {
  const slm::Coefficients c = load_coefficients(opt);
  if (opt.grid < 2 || !(opt.to > opt.from))
    throw std::invalid_argument("solve: needs --from < --to and --grid >= 2");
  std::vector<double> grid;
  for (int i = 0; i < opt.grid; ++i)
    grid.push_back(opt.from + (opt.to - opt.from) * i / (opt.grid - 1.0));
  const auto vals = slm::evaluate_solution(
      c, opt.z, {opt.init_u, opt.init_w}, opt.from, grid);
  for (const auto& v : vals)
    if (!std::isfinite(v.u) || !std::isfinite(v.w))
      throw std::range_error("solve: propagation overflowed");
  if (opt.format == "csv") {
    emit(opt, csv_solve(grid, vals));
  } else {
    json j;
    j["z"] = opt.z;
    j["t"] = grid;
    j["u"] = json::array();
    j["w"] = json::array();
    for (const auto& v : vals) {
      j["u"].push_back(v.u);
      j["w"].push_back(v.w);
    }
    emit(opt, j.dump(2));
  }
  return kExitOk;
}

int cmd_transfer(const Options& opt) {
  const slm::Coefficients c = load_coefficients(opt);
  const slm::TransferMatrix M = slm::transfer(c, opt.z, opt.from, opt.to);
  json j;
  j["from"] = opt.from;
  j["to"] = opt.to;
  j["z"] = opt.z;
  j["matrix"] = {{M.m11, M.m12}, {M.m21, M.m22}};
  j["det"] = M.det();
  emit(opt, j.dump(2));
  return kExitOk;
}

int cmd_seminorm(const Options& opt) {
  const slm::Coefficients c = load_coefficients(opt);
  const slm::Interval I{opt.from, opt.to};
  const double w = slm::seminorm_surrogate(c.potential, I, opt.refine);
  json j;
  j["interval"] = {I.lo, I.hi};
  j["surrogate"] = w;
  j["c_constant"] = slm::c_constant(c.potential);
  j["unif_norm"] = slm::unif_norm(c.potential);
  emit(opt, j.dump(2));
  return kExitOk;
}

int cmd_gordon_scan(const Options& opt) {
  double sampling = 0;
  const slm::Coefficients c = load_coefficients(opt, nullptr, &sampling);
  if (opt.periods.empty())
    throw std::invalid_argument("gordon-scan: --periods required");
  slm::GordonReport rep = slm::gordon_scan(
      c.diffusion, c.potential, opt.periods, opt.C, c, opt.r_grid, opt.tol,
      opt.refine);
  rep.sampling_step = sampling;
  emit(opt, opt.format == "csv" ? slm::gordon_report_csv(rep)
                                : slm::to_json(rep).dump(2));
  return kExitOk;
}

int cmd_bound(const Options& opt) {
  const slm::Coefficients c = load_coefficients(opt);
  const double basic = slm::eigenvalue_bound(opt.C, c);
  const std::vector<double> rg =
      opt.r_grid.empty() ? std::vector<double>{0.25, 0.5, 1.0, 2.0, 4.0}
                         : opt.r_grid;
  const slm::RefinedBound rb = slm::eigenvalue_bound_refined(opt.C, c, rg);
  json j;
  j["C"] = opt.C;
  j["basic"] = basic;
  j["refined_inf"] = {{"value", rb.value}, {"r", rb.argmin_r}};
  j["refined_sup"] = {{"value", rb.sup_value}, {"r", rb.argmax_r}};
  j["r_grid"] = rg;
  emit(opt, j.dump(2));
  return kExitOk;
}

int cmd_verify(const Options& opt) {
  const auto results = slm::verify::run_all_suites(opt.seed, opt.scale);
  int violations = 0;
  std::printf("%-26s %8s %10s %14s\n", "suite", "cases", "violations",
              "worst-slack");
  for (const auto& s : results) {
    std::printf("%-26s %8d %10d %14.3e   %s\n", s.name.c_str(), s.cases,
                s.violations, s.worst_slack, s.note.c_str());
    violations += s.violations;
  }
  std::printf("total violations: %d\n", violations);
  return violations == 0 ? kExitOk : kExitProperty;
}

int cmd_example_quasiperiodic(const Options& opt) {
  const slm::QuasiperiodicSystem sys =
      slm::example_quasiperiodic(opt.B, opt.m_max, opt.h);
  const std::vector<double> Cs =
      opt.C_list.empty() ? std::vector<double>{1.0, 5.0, 25.0} : opt.C_list;
  json out;
  out["B"] = opt.B;
  out["m_max"] = opt.m_max;
  out["h"] = sys.h;
  out["sampling_error_per_unit"] = sys.sampling_error_per_unit;
  out["scan_periods"] = sys.scan_periods;
  out["reports"] = json::array();
  std::string csv;
  for (double C : Cs) {
    slm::GordonReport rep =
        slm::gordon_scan(sys.realized.diffusion, sys.realized.potential,
                         sys.scan_periods, C, sys.realized, opt.r_grid,
                         opt.tol, opt.refine);
    rep.sampling_step = sys.h;
    out["reports"].push_back(slm::to_json(rep));
    csv += slm::gordon_report_csv(rep);
  }
  emit(opt, opt.format == "csv" ? csv : out.dump(2));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sturm-Liouville coefficients with measure-valued weight and "
               "potential: transfer-matrix propagation, seminorms, period "
               "scans and eigenvalue-exclusion bounds"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--input", opt.input, "coefficient-spec JSON path");
  app.add_option("--output", opt.output, "output path (stdout when absent)");
  app.add_option("--format", opt.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--z", opt.z, "spectral parameter (real)");
  app.add_option("--from", opt.from, "left endpoint / anchor s");
  app.add_option("--to", opt.to, "right endpoint / target t");
  app.add_option("--grid", opt.grid, "number of grid points");
  app.add_option("--C", opt.C, "Gordon weight / bound parameter");
  app.add_option("--C-list", opt.C_list,
                 "weights for example-quasiperiodic (default 1 5 25)");
  app.add_option("--periods", opt.periods, "scan periods (strictly increasing)");
  app.add_option("--r-grid", opt.r_grid, "window lengths for the refined bound");
  app.add_option("--seed", opt.seed, "seed for the property suites");
  app.add_option("--tol", opt.tol, "scan verdict tolerance");
  app.add_option("--init-u", opt.init_u, "initial u at the anchor");
  app.add_option("--init-w", opt.init_w, "initial quasi-derivative at the anchor");
  app.add_option("--B", opt.B, "approximation constant of the example");
  app.add_option("--m-max", opt.m_max, "number of certified convergents");
  app.add_option("--step", opt.h, "sampling step of the example");
  app.add_option("--scale", opt.scale, "property-suite size multiplier");
  app.add_option("--refine", opt.refine, "seminorm refinement per unit");

  for (auto* sub :
       {app.add_subcommand("solve", "propagate (u, w) over a grid; CSV of (t, u, w)"),
        app.add_subcommand("transfer", "transfer matrix between --from and --to"),
        app.add_subcommand("seminorm", "potential seminorm surrogate over [--from, --to]"),
        app.add_subcommand("gordon-scan", "distances and weighted values per period"),
        app.add_subcommand("bound", "eigenvalue-exclusion bound (basic and refined)"),
        app.add_subcommand("verify", "run every property suite; nonzero exit on violation"),
        app.add_subcommand("example-quasiperiodic",
                           "build the two-frequency example and scan its "
                           "convergent periods")})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("solve")) return cmd_solve(opt);
    if (app.got_subcommand("transfer")) return cmd_transfer(opt);
    if (app.got_subcommand("seminorm")) return cmd_seminorm(opt);
    if (app.got_subcommand("gordon-scan")) return cmd_gordon_scan(opt);
    if (app.got_subcommand("bound")) return cmd_bound(opt);
    if (app.got_subcommand("verify")) return cmd_verify(opt);
    if (app.got_subcommand("example-quasiperiodic"))
      return cmd_example_quasiperiodic(opt);
  } catch (const std::range_error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
