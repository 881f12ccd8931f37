#include "ssns/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "ssns/config.hpp"
#include "ssns/diagnostics.hpp"
#include "ssns/error.hpp"
#include "ssns/fft.hpp"
#include "ssns/io.hpp"
#include "ssns/validation.hpp"

namespace ssns {

namespace fs = std::filesystem;

namespace {

std::vector<double> split_numbers(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      if (item == "inf" || item == "Inf") out.push_back(std::numeric_limits<double>::infinity());
      else out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError(std::string(what) + ": '" + item + "' is not a number");
    }
  }
  return out;
}

double exponent(const std::string& s, const char* what) {
  const auto v = split_numbers(s, what);
  if (v.size() != 1) throw ValidationError(std::string(what) + ": expected one value");
  return v[0];
}

fs::path report_dir(const std::string& out, const fs::path& fallback) {
  const fs::path dir = out.empty() ? fallback : fs::path(out);
  fs::create_directories(dir);
  return dir;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, std::ostream& out) {
  const RunConfig cfg = load_config(config_path);
  const fs::path root = out_dir.empty() ? fs::path(cfg.directory) : fs::path(out_dir);
  for (const auto& plan : expand_sweeps(cfg)) {
    const fs::path dir = plan.label.empty() ? root : root / plan.label;
    TrajectoryWriter writer(dir, plan.config);
    RunOptions options;
    options.keep_snapshots = false;
    options.on_snapshot = [&writer](const Snapshot& s) { writer.snapshot(s); };
    const VelocityField u0 = sample_u0_alpha(plan.config.grid(), plan.config.data());
    const Trajectory traj = run(u0, plan.config.solver, options);
    writer.finish(traj);
    out << "wrote " << dir.string() << " (" << traj.energy.size() - 1 << " steps)\n";
  }
  return 0;
}

int cmd_scaling(const std::string& traj_dir, int m, double ball, const std::string& out_dir,
                std::ostream& out) {
  const StoredTrajectory st = load_trajectory(traj_dir);
  const CoreBall b = ball > 0.0 ? CoreBall{ball} : CoreBall::defaults(st.trajectory.grid);
  const ScalingResidualReport rep = scaling_residual(st.trajectory, DyadicLadder{m}, b);
  const fs::path dir = report_dir(out_dir, traj_dir);
  CsvWriter csv(dir / "scaling.csv", provenance(st.config, "scaling"), schema::scaling);
  for (const auto& r : rep.rows) csv.row({r.lambda, r.t, r.residual});
  out << "scaling: " << rep.rows.size() << " rows -> " << (dir / "scaling.csv").string() << "\n";
  return 0;
}

int cmd_decay(const std::string& traj_dir, const std::string& window, double ball,
              const std::string& out_dir, std::ostream& out) {
  const StoredTrajectory st = load_trajectory(traj_dir);
  double lo = 0.0, hi = st.config.solver.t_end;
  if (!window.empty()) {
    const auto w = split_numbers(window, "--window");
    if (w.size() != 2) throw ValidationError("--window: expected t_lo,t_hi");
    lo = w[0];
    hi = w[1];
  }
  const CoreBall b = ball > 0.0 ? CoreBall{ball} : CoreBall{st.config.length / 4.0};
  const DecayReport rep = decay_law(st.trajectory, lo, hi, b);
  const fs::path dir = report_dir(out_dir, traj_dir);
  CsvWriter csv(dir / "decay.csv", provenance(st.config, "decay"), schema::decay);
  for (const auto& r : rep.rows) csv.row({r.t, r.sup_norm, r.scaled, rep.fitted_slope});
  out << "decay: slope " << rep.fitted_slope << ", variation " << rep.variation << "\n";
  return 0;
}

int cmd_profile(const std::string& traj_dir, const std::string& times, double radius, int samples,
                const std::string& out_dir, std::ostream& out) {
  const StoredTrajectory st = load_trajectory(traj_dir);
  const auto ts = split_numbers(times, "--times");
  if (ts.size() < 2) throw ValidationError("--times: need at least two times");
  const ProfileCollapse pc = profile_collapse(st.trajectory, ts, radius, samples);
  const fs::path dir = report_dir(out_dir, traj_dir);
  {
    CsvWriter csv(dir / "profile_collapse.csv", provenance(st.config, "profile_collapse"),
                  schema::profile_collapse);
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = 0; j < ts.size(); ++j) csv.row({ts[i], ts[j], pc.at(i, j)});
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Snapshot* s = st.trajectory.find(ts[i]);
    const ProfileField p = extract_profile(s->field, s->t, radius, samples);
    auto prov = provenance(st.config, "profile_field");
    prov["t"] = std::to_string(s->t);
    char name[32];
    std::snprintf(name, sizeof name, "profile_%02zu.csv", i);
    CsvWriter csv(dir / name, prov, schema::profile_field);
    const auto& c = p.sample;
    for (std::size_t z = 0; z < c.side(); ++z)
      for (std::size_t y = 0; y < c.side(); ++y)
        for (std::size_t x = 0; x < c.side(); ++x) {
          const std::size_t k = c.index(x, y, z);
          csv.row({c.offsets[x], c.offsets[y], c.offsets[z], c.values[0][k], c.values[1][k],
                   c.values[2][k]});
        }
  }
  out << "profile: max pairwise distance " << pc.max_off_diagonal() << "\n";
  return 0;
}

int cmd_serrin(const std::string& traj_dir, const std::string& center, double r,
               const std::string& p, const std::string& q, const std::string& out_dir,
               std::ostream& out) {
  const StoredTrajectory st = load_trajectory(traj_dir);
  const auto c = split_numbers(center, "--center");
  if (c.size() != 4) throw ValidationError("--center: expected x,y,z,t");
  const ParabolicCylinder cyl{{c[0], c[1], c[2]}, c[3], r};
  const SerrinNorm s = serrin_norm(st.trajectory, cyl, exponent(p, "--p"), exponent(q, "--q"));
  const fs::path dir = report_dir(out_dir, traj_dir);
  CsvWriter csv(dir / "serrin.csv", provenance(st.config, "serrin"), schema::serrin);
  csv.row({c[0], c[1], c[2], c[3], r, s.p, s.q, s.value, s.admissible ? 1.0 : 0.0, s.volume,
           s.duration});
  out << "serrin: value " << s.value << ", admissible " << (s.admissible ? "yes" : "no") << "\n";
  return 0;
}

int cmd_data_convergence(const std::string& traj_dir, const std::string& annulus,
                         const std::string& out_dir, std::ostream& out) {
  const StoredTrajectory st = load_trajectory(traj_dir);
  const auto a = split_numbers(annulus, "--annulus");
  if (a.size() != 2) throw ValidationError("--annulus: expected r1,r2");
  const Snapshot* initial = st.trajectory.find(0.0);
  if (initial == nullptr) throw ValidationError("data-convergence: trajectory lacks the t = 0 snapshot");
  const auto rows = l2loc_convergence(st.trajectory, initial->field, a[0], a[1]);
  const fs::path dir = report_dir(out_dir, traj_dir);
  CsvWriter csv(dir / "l2loc.csv", provenance(st.config, "l2loc"), schema::l2loc);
  for (const auto& r : rows) csv.row({r.t, r.integral, r.relative});
  out << "data-convergence: " << rows.size() << " rows\n";
  return 0;
}

int cmd_commutation(const std::string& config_path, double lambda, const std::string& out_dir,
                    std::ostream& out) {
  const RunConfig cfg = load_config(config_path);
  CommutationSetup setup;
  setup.n = cfg.n;
  setup.length = cfg.length;
  setup.lambda = lambda;
  setup.epsilon = cfg.solver.epsilon;
  setup.data = cfg.data();
  setup.dt = cfg.solver.dt;
  setup.t_end = cfg.solver.t_end;
  setup.nonlinear = cfg.solver.nonlinear;
  setup.cfl = cfg.solver.cfl;
  const CommutationReport rep = commutation_check(setup);
  const fs::path dir = report_dir(out_dir, cfg.directory);
  auto prov = provenance(cfg, "commutation");
  prov["lambda"] = std::to_string(lambda);
  CsvWriter csv(dir / "commutation.csv", prov, schema::commutation);
  for (const auto& r : rep.rows) csv.row({r.t, r.discrepancy});
  out << "commutation: max discrepancy " << rep.max_discrepancy << "\n";
  return 0;
}

int verdict(std::ostream& out, const char* name, double value, double limit) {
  const bool ok = value <= limit;
  out << name << " = " << value << " (limit " << limit << ") " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 2;
}

int cmd_validate(const std::string& what, int n, std::ostream& out) {
  int rc = 0;
  if (what == "taylor-green") {
    const TaylorGreenReport r = validate_taylor_green(n > 0 ? n : 64);
    rc |= verdict(out, "relative_error", r.relative_error, 1e-6);
    rc |= verdict(out, "max_divergence", r.max_divergence, 1e-10);
    rc |= verdict(out, "energy_balance", r.energy_relative, 1e-6);
    rc |= verdict(out, "order_deviation", std::abs(r.order - 4.0), 0.1);
    out << "order = " << r.order << "\n";
  } else if (what == "heat") {
    const HeatReport r = validate_heat(n > 0 ? n : 32);
    rc |= verdict(out, "heat_vs_semigroup", r.max_error, 1e-12);
    rc |= verdict(out, "semigroup", r.semigroup, 1e-13);
  } else if (what == "projector") {
    const ProjectorReport r = validate_projector(n > 0 ? n : 32);
    rc |= verdict(out, "idempotence", r.idempotence, 1e-12);
    rc |= verdict(out, "annihilation", r.annihilation, 1e-12);
    rc |= verdict(out, "gradient", r.gradient, 1e-12);
    rc |= verdict(out, "orthogonality", r.orthogonality, 1e-10);
  } else {
    throw ValidationError("validate: unknown check '" + what + "'");
  }
  return rc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-similar Navier-Stokes experiments", "ssns"};
  app.require_subcommand(1);
  std::string out_dir;
  std::string path;
  std::function<int()> action;

  auto* run_cmd = app.add_subcommand("run", "Integrate a configured trajectory");
  run_cmd->add_option("config", path, "Config file")->required();
  run_cmd->add_option("--output", out_dir, "Output directory (overrides the config)");
  run_cmd->callback([&] { action = [&] { return cmd_run(path, out_dir, out); }; });

  auto* diag = app.add_subcommand("diagnose", "Diagnostics over a stored trajectory");
  diag->require_subcommand(1);
  int m = 3;
  double ball = 0.0;
  auto* scaling = diag->add_subcommand("scaling", "Scaling residuals over the dyadic ladder");
  scaling->add_option("trajectory", path)->required();
  scaling->add_option("--lambda-max-exp", m, "Largest m in lambda = 2^-m");
  scaling->add_option("--ball", ball, "Core ball radius (default L/8)");
  scaling->add_option("--out", out_dir);
  scaling->callback([&] { action = [&] { return cmd_scaling(path, m, ball, out_dir, out); }; });

  std::string window;
  auto* decay = diag->add_subcommand("decay", "sqrt(t) sup |u| series and fitted slope");
  decay->add_option("trajectory", path)->required();
  decay->add_option("--window", window, "t_lo,t_hi");
  decay->add_option("--ball", ball, "Core ball radius (default L/4)");
  decay->add_option("--out", out_dir);
  decay->callback([&] { action = [&] { return cmd_decay(path, window, ball, out_dir, out); }; });

  std::string times;
  double radius = 2.0;
  int samples = 17;
  auto* profile = diag->add_subcommand("profile", "Similarity profiles and their collapse");
  profile->add_option("trajectory", path)->required();
  profile->add_option("--times", times, "Comma-separated snapshot times")->required();
  profile->add_option("--radius", radius, "Similarity grid radius");
  profile->add_option("--samples", samples, "Samples per axis");
  profile->add_option("--out", out_dir);
  profile->callback(
      [&] { action = [&] { return cmd_profile(path, times, radius, samples, out_dir, out); }; });

  std::string center, p = "inf", q = "inf";
  double r = 0.0;
  auto* serrin = diag->add_subcommand("serrin", "Mixed norm on a parabolic cylinder");
  serrin->add_option("trajectory", path)->required();
  serrin->add_option("--center", center, "x,y,z,t")->required();
  serrin->add_option("--r", r, "Cylinder radius")->required();
  serrin->add_option("--p", p, "Space exponent (inf allowed)");
  serrin->add_option("--q", q, "Time exponent (inf allowed)");
  serrin->add_option("--out", out_dir);
  serrin->callback(
      [&] { action = [&] { return cmd_serrin(path, center, r, p, q, out_dir, out); }; });

  std::string annulus;
  auto* conv = diag->add_subcommand("data-convergence", "int_K |u(t) - u0|^2 on an annulus");
  conv->add_option("trajectory", path)->required();
  conv->add_option("--annulus", annulus, "r1,r2")->required();
  conv->add_option("--out", out_dir);
  conv->callback(
      [&] { action = [&] { return cmd_data_convergence(path, annulus, out_dir, out); }; });

  double lambda = 0.5;
  auto* check = app.add_subcommand("check", "Paired-run checks");
  check->require_subcommand(1);
  auto* comm = check->add_subcommand("commutation", "Mollifier/scaling commutation");
  comm->add_option("config", path)->required();
  comm->add_option("--lambda", lambda);
  comm->add_option("--out", out_dir);
  comm->callback([&] { action = [&] { return cmd_commutation(path, lambda, out_dir, out); }; });

  std::string what;
  int n = 0;
  auto* val = app.add_subcommand("validate", "Closed-form solver checks");
  val->add_option("check", what, "taylor-green | heat | projector")
      ->required()
      ->check(CLI::IsMember({"taylor-green", "heat", "projector"}));
  val->add_option("--n", n, "Grid size");
  val->callback([&] { action = [&] { return cmd_validate(what, n, out); }; });

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  try {
    return action ? action() : 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ssns
