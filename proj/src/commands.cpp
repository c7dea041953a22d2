#include "fhnx/commands.hpp"

#include "fhnx/config.hpp"
#include "fhnx/report.hpp"
#include "fhnx/simulate.hpp"
#include "fhnx/solutions.hpp"
#include "fhnx/stability.hpp"
#include "fhnx/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace fhnx {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::NonPositiveParameter: return kExitConfigError;
    case ErrorKind::BlowUp:
    case ErrorKind::InsufficientSignal: return kExitVerificationFailure;
    default: return kExitDomainError;
  }
}

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> params;
  bool json = false;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Config file (sectioned key = value)");
  cmd->add_option("--param", o.params, "Override, section.key=value or a unique bare key")
      ->take_all();
  cmd->add_flag("--json", o.json, "Print a JSON document instead of text/CSV");
  cmd->add_option("--out", o.out_dir, "Directory for report and data files");
}

RunConfig load(const CommonOptions& o, std::vector<std::string> extra = {}) {
  std::vector<std::string> overrides = o.params;
  overrides.insert(overrides.end(), extra.begin(), extra.end());
  RunConfig cfg = o.config_path.empty() ? parse_config("", overrides)
                                        : load_config(o.config_path, overrides);
  if (!o.out_dir.empty()) cfg.out_path = o.out_dir;
  return cfg;
}

bool json_mode(const CommonOptions& o, const RunConfig& cfg) {
  return o.json || cfg.format == "json";
}

/// Opens out_dir/name for binary writing, creating the directory.
std::ofstream open_output(const std::string& dir, const std::string& name) {
  const fs::path root = dir.empty() ? fs::path(".") : fs::path(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  std::ofstream f(root / name, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::ConfigError, "cannot write " + (root / name).string());
  return f;
}

void echo_header(std::ostream& out, const RunConfig& cfg) {
  for (const auto& [key, value] : echo_config(cfg)) out << "# " << key << " = " << value << '\n';
}

std::string complex_text(CScalar z) {
  const double re = z.real() + 0.0;  // drop the sign of zero
  const double im = z.imag() + 0.0;
  return format_number(re) + (std::signbit(im) ? " - " : " + ") + format_number(std::abs(im)) + "i";
}

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------

int cmd_list(const std::string& only, bool as_json, std::ostream& out) {
  std::vector<const FamilyInfo*> selected;
  if (only.empty()) {
    for (const auto& info : family_catalog()) selected.push_back(&info);
  } else {
    selected.push_back(&family_info(parse_family_tag(only)));
  }

  if (as_json) {
    json families = json::array();
    for (const FamilyInfo* info : selected) {
      std::string snippet = "[family]\ntag = " + std::string(info->name) + "\n";
      for (auto name : info->constants) snippet += std::string(name) + " = 1\n";
      families.push_back({{"tag", std::string(info->name)},
                          {"formula", std::string(info->formula)},
                          {"domain", std::string(info->domain)},
                          {"constants", std::vector<std::string>(info->constants.begin(),
                                                                 info->constants.end())},
                          {"steady", info->steady},
                          {"config", snippet}});
    }
    out << json{{"command", "list"}, {"families", families}}.dump(2) << '\n';
    return kExitPass;
  }
  for (const FamilyInfo* info : selected) {
    out << info->name << '\n';
    out << "  formula:   " << info->formula << '\n';
    out << "  constants: ";
    if (info->constants.empty()) out << "(none)";
    for (std::size_t i = 0; i < info->constants.size(); ++i) {
      out << (i ? ", " : "") << info->constants[i];
    }
    out << '\n';
    out << "  domain:    " << info->domain << '\n';
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, bool as_json, std::ostream& out) {
  const Params& p = cfg.params;
  const Grid& grid = cfg.grid;
  const SolutionFamily fam = SolutionFamily::make(cfg.family_tag, p, cfg.family);
  const std::string name(fam.name());

  std::vector<CheckRow> rows;
  std::vector<std::string> notes = fam.notes();
  auto push = [&](std::string check, std::string eq, Method m, const ResidualNorms& n,
                  std::size_t samples, double tol) {
    rows.push_back({name, std::move(check), std::move(eq), std::string(to_string(m)), n.linf,
                    n.l2, n.worst_t, n.worst_x, samples, tol});
  };

  for (Method m : {Method::Analytic, Method::FiniteDifference}) {
    const double tol = m == Method::Analytic ? cfg.tol.analytic : cfg.tol.fd;
    const ResidualReport r = residual_system(fam, p, grid, m);
    push("system", "fast", m, r.fast, r.sample_count, tol);
    push("system", "slow", m, r.slow, r.sample_count, tol);
  }
  for (Method m : {Method::Analytic, Method::FiniteDifference}) {
    const double tol = m == Method::Analytic ? cfg.tol.third_order : cfg.tol.fd;
    const ThirdOrderReport r = residual_third_order(fam, p, grid, m);
    push("third_order", "reduced", m, r.norms, r.sample_count, tol);
  }

  const double A = fam.steady() ? 0.0 : -p.epsilon * p.beta / 3.0;
  const double defect = invariant_surface_check(fam, A, 0.0, grid);
  push("invariant_surface", "u_t - A u - B", Method::Analytic, {defect, 0.0, 0.0, 0.0},
       grid.size(), cfg.tol.invariant);
  notes.push_back("invariant surface checked with A=" + format_number(A) + ", B=0");

  if (fam.tag() == FamilyTag::NonClassicalExp) {
    ResidualNorms n;
    double sumsq = 0.0;
    for (int j = 0; j < grid.nt; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const double t = grid.t(j);
        const double x = grid.x(i);
        const Derivatives d = fam.eval_derivs(t, x);
        const double gap = std::abs(d.v - v_from_fast_equation(p, d));
        sumsq += gap * gap;
        if (gap > n.linf) n = {gap, 0.0, t, x};
      }
    }
    n.l2 = std::sqrt(sumsq);
    push("v_consistency", "v - (D u_xx - u_t + g(u))", Method::Analytic, n, grid.size(),
         cfg.tol.analytic);
  }

  {
    // analytic derivatives against the stencil oracle at seeded random points
    std::mt19937_64 gen(cfg.seed);
    const FdSteps h = oversampled_steps(grid);
    ResidualNorms n;
    const int count = 100;
    for (int s = 0; s < count; ++s) {
      const double t = grid.t_min + (grid.t_max - grid.t_min) * uniform01(gen);
      const double x = grid.x_min + (grid.x_max - grid.x_min) * uniform01(gen);
      const Derivatives a = fam.eval_derivs(t, x);
      const Derivatives f = fd_derivatives(fam, t, x, h);
      for (auto [av, fv] : {std::pair{a.u_t, f.u_t}, {a.u_x, f.u_x}, {a.u_xx, f.u_xx},
                            {a.v_t, f.v_t}}) {
        const double rel = std::abs(av - fv) / std::max(1.0, std::abs(av));
        if (rel > n.linf) n = {rel, 0.0, t, x};
      }
    }
    push("derivatives", "analytic vs stencil (relative)", Method::FiniteDifference, n, count,
         cfg.tol.fd);
  }

  bool pass = true;
  for (const CheckRow& r : rows) pass = pass && r.pass();

  if (!cfg.out_path.empty()) {
    std::ofstream f = open_output(cfg.out_path, "verify.csv");
    CsvWriter csv(f, check_columns());
    for (const CheckRow& r : rows) csv.row(check_fields(r));
  }
  if (as_json) {
    json checks = json::array();
    for (const CheckRow& r : rows) checks.push_back(to_json(r));
    out << json{{"command", "verify"}, {"config", config_json(cfg)}, {"family", name},
                {"checks", checks},     {"notes", notes},             {"pass", pass}}
               .dump(2)
        << '\n';
  } else {
    echo_header(out, cfg);
    for (const std::string& note : notes) out << "# note: " << note << '\n';
    CsvWriter csv(out, check_columns());
    for (const CheckRow& r : rows) csv.row(check_fields(r));
    out << "# verdict: " << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? kExitPass : kExitVerificationFailure;
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kStabilityColumns = {
    "u_star", "v_star", "a11", "a12", "a21", "a22", "trace", "det", "disc",
    "re_sigma_1", "im_sigma_1", "re_sigma_2", "im_sigma_2", "classification", "crossings"};

const std::vector<std::string> kDispersionColumns = {"u_star",     "k",          "re_sigma_1",
                                                     "re_sigma_2", "im_sigma_1", "im_sigma_2"};

std::vector<std::string> stability_fields(const StabilityReport& r) {
  const Spectrum& s = r.spectrum;
  std::string crossings;
  for (std::size_t i = 0; i < r.dispersion.crossings.size(); ++i) {
    crossings += (i ? ";" : "") + format_number(r.dispersion.crossings[i]);
  }
  return {format_number(r.u_star),
          format_number(r.v_star),
          format_number(r.jacobian(0, 0)),
          format_number(r.jacobian(0, 1)),
          format_number(r.jacobian(1, 0)),
          format_number(r.jacobian(1, 1)),
          format_number(s.trace),
          format_number(s.det),
          format_number(s.disc),
          format_number(s.eigenvalues[0].real()),
          format_number(s.eigenvalues[0].imag()),
          format_number(s.eigenvalues[1].real()),
          format_number(s.eigenvalues[1].imag()),
          std::string(to_string(s.classification)),
          crossings};
}

void write_dispersion(CsvWriter& csv, const StabilityReport& r) {
  for (const DispersionSample& d : r.dispersion.samples) {
    csv.row({format_number(r.u_star), format_number(d.k), format_number(d.sigma[0].real()),
             format_number(d.sigma[1].real()), format_number(d.sigma[0].imag()),
             format_number(d.sigma[1].imag())});
  }
}

int cmd_stability(const RunConfig& cfg, bool as_json, std::ostream& out) {
  const Params& p = cfg.params;
  std::vector<double> stars;
  if (cfg.u_star == "auto") {
    for (const FixedPoint& fp : fixed_points(p).points) stars.push_back(fp.u);
  } else {
    stars.push_back(std::stod(cfg.u_star));
  }
  std::vector<StabilityReport> reports;
  for (double u : stars) reports.push_back(stability_report(p, u, cfg.k_max, cfg.samples));

  if (!cfg.out_path.empty()) {
    std::ofstream sf = open_output(cfg.out_path, "stability.csv");
    CsvWriter summary(sf, kStabilityColumns);
    for (const auto& r : reports) summary.row(stability_fields(r));
    std::ofstream df = open_output(cfg.out_path, "dispersion.csv");
    CsvWriter disp(df, kDispersionColumns);
    for (const auto& r : reports) write_dispersion(disp, r);
  }
  if (as_json) {
    json points = json::array();
    for (const auto& r : reports) {
      json j = to_json(r);
      json curve = json::array();
      for (const DispersionSample& d : r.dispersion.samples) {
        curve.push_back({d.k, d.sigma[0].real(), d.sigma[1].real(), d.sigma[0].imag(),
                         d.sigma[1].imag()});
      }
      j["dispersion"] = curve;
      points.push_back(j);
    }
    out << json{{"command", "stability"}, {"config", config_json(cfg)},
                {"fixed_points", points}}
               .dump(2)
        << '\n';
  } else {
    echo_header(out, cfg);
    CsvWriter summary(out, kStabilityColumns);
    for (const auto& r : reports) summary.row(stability_fields(r));
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const RunConfig& cfg, bool as_json, std::ostream& out) {
  const Params& p = cfg.params;
  const SolutionFamily fam = SolutionFamily::make(cfg.family_tag, p, cfg.family);
  std::optional<SolutionFamily> boundary;
  if (cfg.bc == Boundary::DirichletFromFamily) boundary = fam;
  const SimConfig sim = SimConfig::create(cfg.grid, cfg.scheme, cfg.bc, p, cfg.cfl, cfg.dt, boundary);
  if (cfg.grid.nt < 2) throw Error(ErrorKind::ConfigError, "simulate needs grid.nt >= 2");

  const RunResult result = run(fam, p, sim);

  std::optional<ConvergenceStudy> study;
  std::string study_note;
  if (cfg.refinements > 0) {
    try {
      study = convergence_study(fam, p, cfg.grid, cfg.refinements, cfg.scheme, cfg.cfl);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InsufficientSignal) throw;
      study_note = e.what();
    }
  }

  const ErrorNorms& worst = result.max_error;
  const bool pass = worst.linf_u <= cfg.tol.simulation && worst.linf_v <= cfg.tol.simulation;

  const std::vector<std::string> error_cols = {"t", "linf_u", "l2_u", "linf_v", "l2_v"};
  auto write_errors = [&](std::ostream& os) {
    CsvWriter csv(os, error_cols);
    for (std::size_t i = 0; i < result.times.size(); ++i) {
      const ErrorNorms& e = result.errors[i];
      csv.row({format_number(result.times[i]), format_number(e.linf_u), format_number(e.l2_u),
               format_number(e.linf_v), format_number(e.l2_v)});
    }
  };
  const std::vector<std::string> conv_cols = {"nx", "dx", "dt", "linf_u", "linf_v", "order"};
  auto write_convergence = [&](std::ostream& os) {
    CsvWriter csv(os, conv_cols);
    for (std::size_t i = 0; i < study->levels.size(); ++i) {
      const ConvergenceLevel& l = study->levels[i];
      csv.row({std::to_string(l.nx), format_number(l.dx), format_number(l.dt),
               format_number(l.linf_u), format_number(l.linf_v),
               i == 0 ? "" : format_number(study->pair_orders[i - 1])});
    }
  };

  if (!cfg.out_path.empty()) {
    std::ofstream traj = open_output(cfg.out_path, "trajectory.csv");
    write_trajectory_csv(traj, result);
    std::ofstream frames = open_output(cfg.out_path, "trajectory.fhn");
    write_frames(frames, result);
    std::ofstream errs = open_output(cfg.out_path, "errors.csv");
    write_errors(errs);
    if (study) {
      std::ofstream conv = open_output(cfg.out_path, "convergence.csv");
      write_convergence(conv);
    }
  }

  const std::string bc_note = "boundary treatment (" + std::string(to_string(cfg.bc)) +
                              ") is a numerical choice; the exact solutions are posed on the "
                              "whole line";
  if (as_json) {
    json errors = json::array();
    for (std::size_t i = 0; i < result.times.size(); ++i) {
      const ErrorNorms& e = result.errors[i];
      errors.push_back({{"t", result.times[i]}, {"linf_u", e.linf_u}, {"l2_u", e.l2_u},
                        {"linf_v", e.linf_v}, {"l2_v", e.l2_v}});
    }
    json conv = nullptr;
    if (study) {
      json levels = json::array();
      for (const auto& l : study->levels) {
        levels.push_back({{"nx", l.nx}, {"dx", l.dx}, {"dt", l.dt}, {"linf_u", l.linf_u},
                          {"linf_v", l.linf_v}});
      }
      conv = {{"levels", levels}, {"pair_orders", study->pair_orders},
              {"observed_order", study->observed_order}};
    }
    json doc = {{"command", "simulate"},
                {"config", config_json(cfg)},
                {"family", std::string(fam.name())},
                {"dt", sim.dt},
                {"steps", result.steps},
                {"max_error",
                 {{"linf_u", worst.linf_u}, {"l2_u", worst.l2_u}, {"linf_v", worst.linf_v},
                  {"l2_v", worst.l2_v}}},
                {"errors", errors},
                {"convergence", conv},
                {"notes", json::array({bc_note})},
                {"pass", pass}};
    if (!study_note.empty()) doc["notes"].push_back("convergence order unavailable: " + study_note);
    out << doc.dump(2) << '\n';
  } else {
    echo_header(out, cfg);
    out << "# note: " << bc_note << '\n';
    out << "# dt = " << format_number(sim.dt) << ", steps = " << result.steps << '\n';
    write_errors(out);
    if (study) {
      out << '\n';
      write_convergence(out);
      out << "# observed order = " << format_number(study->observed_order) << '\n';
    }
    if (!study_note.empty()) out << "# convergence order unavailable: " << study_note << '\n';
    out << "# verdict: " << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? kExitPass : kExitVerificationFailure;
}

// ---------------------------------------------------------------------------

std::string plot_script(int figure, const RunConfig& cfg, const std::string& data_file) {
  const char* var = figure == 1 ? "u" : "v";
  const Params& p = cfg.params;
  std::ostringstream s;
  s << "# gnuplot script: surface " << var << "(t,x) of the separable exponential solution\n"
    << "set datafile separator ','\n"
    << "set title '" << var << "(t,x); c1=" << format_number(cfg.family.c1)
    << ", c2=" << format_number(cfg.family.c2) << ", eps=" << format_number(p.epsilon)
    << ", beta=" << format_number(p.beta) << ", D=" << format_number(p.D)
    << ", c=" << format_number(p.c) << "'\n"
    << "set xlabel 't'\nset ylabel 'x'\nset zlabel '" << var << "'\n"
    << "set dgrid3d " << cfg.grid.nt << "," << cfg.grid.nx << "\n"
    << "set pm3d\nset hidden3d\n"
    << "splot '" << data_file << "' skip 1 using 1:2:3 with pm3d notitle\n"
    << "pause -1\n";
  return s.str();
}

int cmd_figure(RunConfig cfg, int figure, bool as_json, std::ostream& out) {
  bool grid_set = false;
  for (const char* key : {"grid.x_min", "grid.x_max", "grid.nx", "grid.t_min", "grid.t_max",
                          "grid.nt"}) {
    grid_set = grid_set || cfg.is_explicit(key);
  }
  if (!grid_set) cfg.grid = make_grid(-3.0, 3.0, 61, 0.0, 5.0, 51);
  const Grid& grid = cfg.grid;

  const SolutionFamily fam =
      SolutionFamily::make(FamilyTag::NonClassicalExp, cfg.params, cfg.family);
  const std::string stem = "figure" + std::to_string(figure);
  const std::string data_file = stem + ".csv";
  const std::string script_file = stem + ".gp";
  const char* var = figure == 1 ? "u" : "v";

  {
    std::ofstream f = open_output(cfg.out_path, data_file);
    CsvWriter csv(f, {"t", "x", var});
    for (int j = 0; j < grid.nt; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const State s = fam.eval(grid.t(j), grid.x(i));
        csv.row({format_number(grid.t(j)), format_number(grid.x(i)),
                 format_number(figure == 1 ? s.u : s.v)});
      }
    }
    std::ofstream g = open_output(cfg.out_path, script_file);
    g << plot_script(figure, cfg, data_file);
  }

  const State origin = fam.eval(0.0, 0.0);
  const double origin_value = figure == 1 ? origin.u : origin.v;
  const double decay = fam.eval(1.0, 0.0).u / origin.u;
  const fs::path dir = cfg.out_path.empty() ? fs::path(".") : fs::path(cfg.out_path);
  if (as_json) {
    out << json{{"command", "figure"},
                {"config", config_json(cfg)},
                {"figure", figure},
                {"variable", var},
                {"files", {(dir / data_file).string(), (dir / script_file).string()}},
                {"origin_value", origin_value},
                {"decay_ratio", decay}}
               .dump(2)
        << '\n';
  } else {
    echo_header(out, cfg);
    out << "figure " << figure << ": " << var << "(0,0) = " << format_number(origin_value)
        << ", u(t+1,x)/u(t,x) = " << format_number(decay) << '\n';
    out << "wrote " << (dir / data_file).string() << " and " << (dir / script_file).string()
        << '\n';
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------

int cmd_constraints(RunConfig cfg, bool as_json, std::ostream& out) {
  const Params& p = cfg.params;
  if (!cfg.is_explicit("grid.x_min") && !cfg.is_explicit("grid.x_max") &&
      !cfg.is_explicit("grid.nx")) {
    cfg.grid = make_grid(-2.0, 2.0, 401, cfg.grid.t_min, cfg.grid.t_max, cfg.grid.nt);
  }
  const double A = cfg.ansatz_A.value_or(-p.epsilon * p.beta / 3.0);
  const double B = cfg.ansatz_B;
  const Eigen::ArrayXd xs = cfg.grid.x_nodes();
  const AnsatzCheck check = check_ansatz_on_nodes(
      p, A, B, cfg.family.c1, cfg.family.c2, std::span<const double>(xs.data(), xs.size()));
  const CScalar k = nonclassical_k(p).k;

  bool pass = true;
  const std::vector<std::string> cols = {"constraint", "as_printed", "reduced",
                                         "tol_as_printed", "tol_reduced", "pass"};
  std::vector<std::vector<std::string>> rows;
  json items = json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    const double printed = check.as_printed.max_abs[i];
    const double reduced = check.reduced.max_abs[i];
    const bool ok = printed <= cfg.tol.fd && reduced <= cfg.tol.analytic;
    pass = pass && ok;
    rows.push_back({std::string(ConstraintResiduals::kNames[i]), format_number(printed),
                    format_number(reduced), format_number(cfg.tol.fd),
                    format_number(cfg.tol.analytic), ok ? "true" : "false"});
    items.push_back({{"constraint", std::string(ConstraintResiduals::kNames[i])},
                     {"as_printed", printed},
                     {"reduced", reduced},
                     {"pass", ok}});
  }

  if (!cfg.out_path.empty()) {
    std::ofstream f = open_output(cfg.out_path, "constraints.csv");
    CsvWriter csv(f, cols);
    for (const auto& r : rows) csv.row(r);
  }
  if (as_json) {
    out << json{{"command", "constraints"},
                {"config", config_json(cfg)},
                {"A", A},
                {"B", B},
                {"exponent", {{"re", check.exponent.real()}, {"im", check.exponent.imag()}}},
                {"k", {{"re", k.real()}, {"im", k.imag()}}},
                {"constraints", items},
                {"pass", pass}}
               .dump(2)
        << '\n';
  } else {
    echo_header(out, cfg);
    out << "# A = " << format_number(A) << ", B = " << format_number(B) << '\n';
    out << "# F exponent s = " << complex_text(check.exponent) << ", k = " << complex_text(k)
        << '\n';
    CsvWriter csv(out, cols);
    for (const auto& r : rows) csv.row(r);
    out << "# verdict: " << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? kExitPass : kExitVerificationFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fhnx: exact solutions, residual checks, stability and simulation for the "
               "diffusive FitzHugh-Nagumo system"};
  app.require_subcommand(1);

  CommonOptions common;

  std::string list_family;
  auto* list = app.add_subcommand("list", "Catalog of exact solution families");
  list->add_option("--family", list_family, "Show one family tag");
  list->add_flag("--json", common.json, "Machine-readable catalog");

  auto* verify = app.add_subcommand("verify", "Residuals, third-order reduction, invariant surface");
  add_common(verify, common);

  auto* stability = app.add_subcommand(
      "stability", "Jacobian, eigenvalues and dispersion at isolated fixed points");
  add_common(stability, common);

  std::string scheme;
  std::string bc;
  std::optional<double> cfl;
  std::optional<double> dt;
  auto* simulate = app.add_subcommand("simulate", "Method-of-lines run against an exact family");
  add_common(simulate, common);
  simulate->add_option("--scheme", scheme, "rk4 or semi-implicit");
  simulate->add_option("--bc", bc, "dirichlet or periodic");
  simulate->add_option("--cfl", cfl, "Safety factor for dt <= cfl dx^2 / (2D)");
  simulate->add_option("--dt", dt, "Requested time step");

  int figure_number = 1;
  auto* figure = app.add_subcommand("figure", "Surface data and gnuplot script");
  add_common(figure, common);
  figure->add_option("number", figure_number, "1: u surface, 2: v surface")
      ->required()
      ->check(CLI::IsMember({1, 2}));

  auto* constraints =
      app.add_subcommand("constraints", "Constraint system of the conditional-symmetry ansatz");
  add_common(constraints, common);

  app.footer(
      "The sn modulus convention: the second argument of sn(z, k) is the modulus k, not m = k^2.\n"
      "Exit codes: 0 pass, 1 verification failure, 2 config error, 3 domain error.");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("fhnx");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "fhnx: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (list->parsed()) return cmd_list(list_family, common.json, out);

    std::vector<std::string> extra;
    if (!scheme.empty()) extra.push_back("simulate.scheme=" + scheme);
    if (!bc.empty()) extra.push_back("simulate.bc=" + bc);
    if (cfl) extra.push_back("simulate.cfl=" + format_number(*cfl));
    if (dt) extra.push_back("simulate.dt=" + format_number(*dt));
    const RunConfig cfg = load(common, extra);
    const bool as_json = json_mode(common, cfg);

    if (verify->parsed()) return cmd_verify(cfg, as_json, out);
    if (stability->parsed()) return cmd_stability(cfg, as_json, out);
    if (simulate->parsed()) return cmd_simulate(cfg, as_json, out);
    if (figure->parsed()) return cmd_figure(cfg, figure_number, as_json, out);
    if (constraints->parsed()) return cmd_constraints(cfg, as_json, out);
  } catch (const Error& e) {
    err << "fhnx: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "fhnx: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace fhnx
