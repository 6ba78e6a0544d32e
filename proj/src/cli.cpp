#include "solitonlab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "solitonlab/analytic.hpp"
#include "solitonlab/config.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/io.hpp"
#include "solitonlab/manifest.hpp"
#include "solitonlab/measure.hpp"
#include "solitonlab/params.hpp"
#include "solitonlab/pde.hpp"
#include "solitonlab/spinmap.hpp"
#include "solitonlab/tw_ode.hpp"

namespace solitonlab {

namespace fs = std::filesystem;

namespace {

struct Context {
  Config cfg;
  fs::path dir;
  std::ostream& out;
  RunManifest manifest;

  void emit(const std::string& name, const Table& table) {
    write_csv(dir / name, table);
    manifest.artifacts.push_back(name);
  }
  void emit_text(const std::string& name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << text;
    manifest.artifacts.push_back(name);
  }
};

System system_of(const Config& cfg) { return parse_system(cfg.text_or("system", "hgpe")); }

PhysicalParams lattice_params(const Config& cfg) {
  PhysicalParams p;
  p.t = cfg.number_or("t", 1.0);
  p.V = cfg.number_or("V", 1.0 / 3.0);
  return p;
}

PhysicalParams hgpe_params(const Config& cfg) {
  PhysicalParams p = lattice_params(cfg);
  p.rho0 = cfg.number_or("rho0", 0.5);
  p.U = cfg.number_or("U", 0.0);
  return p;
}

// Without U and rho0 the GPE side is matched to the half-filled hard-core system.
PhysicalParams gpe_params(const Config& cfg) {
  PhysicalParams p = lattice_params(cfg);
  if (!cfg.has("U") && !cfg.has("rho0")) {
    p.rho0 = 0.5;
    return match_gpe_to_hgpe(p);
  }
  p.U = cfg.number("U");
  p.rho0 = cfg.number_or("rho0", 0.25);
  return p;
}

DerivedGroups groups_for(const Config& cfg, System system) {
  const double vbar = cfg.number_or("vbar", 0.0);
  return system == System::gpe ? derive_groups_vbar(gpe_params(cfg), Side::gpe, vbar)
                               : derive_groups_vbar(hgpe_params(cfg), Side::hgpe, vbar);
}

void record_groups(Context& ctx, const DerivedGroups& d) {
  ctx.manifest.params = d.params;
  ctx.manifest.groups = d;
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------- params

void cmd_params(Context& ctx) {
  const System system = system_of(ctx.cfg);
  const DerivedGroups d = groups_for(ctx.cfg, system);
  record_groups(ctx, d);
  auto line = [&](const char* name, double v) {
    ctx.out << std::left << std::setw(8) << name << " = " << fmt(v) << '\n';
  };
  ctx.out << "side     = " << to_string(d.side) << '\n';
  line("t", d.params.t);
  line("V", d.params.V);
  line("U", d.params.U);
  line("rho0", d.params.rho0);
  line("g", d.g);
  line("mu", d.mu);
  line("h_z", d.h_z);
  line("rho_s0", d.rho_s0);
  line("c_s", d.c_s);
  line("c_g", d.c_g);
  line("c0", d.c0);
  line("Lambda", d.Lambda);
  line("vbar", d.vbar);
  line("v", d.v);
  line("gamma", d.gamma);
  line("zeta", d.zeta);
  line("xi", d.xi);
  line("Gamma_s", d.width_s);
  line("Gamma_g", d.width_g);
}

// ---------------------------------------------------------------- profile

void cmd_profile(Context& ctx) {
  const System system = system_of(ctx.cfg);
  const DerivedGroups d = groups_for(ctx.cfg, system);
  record_groups(ctx, d);
  const Grid1D grid =
      Grid1D::make(ctx.cfg.number_or("grid.length", 64.0), ctx.cfg.count_or("grid.n", 1024));
  const auto x = grid.points();
  ctx.manifest.grid_n = grid.n;
  ctx.manifest.grid_length = grid.length;

  Table t;
  if (system == System::hgpe) {
    const Branch branch = parse_branch(ctx.cfg.text_or("branch", "dark"));
    const Profile rho = sample_hgpe_density(x, d, branch);
    const Profile rho_s = sample_hgpe_condensate(x, d);
    const PhaseProfile phi = hgpe_phase(x, d, branch);
    if (phi.discontinuous) ctx.out << "note: " << phi.note << '\n';
    ctx.out << "phase step = " << fmt(phi.step) << '\n';
    t.header = {"x", "rho", "rho_s", "phi"};
    t.columns = {x, rho.real(), rho_s.real(), phi.phi};
  } else {
    const Profile psi = sample_gpe_wavefunction(x, d);
    const Profile rho = sample_gpe_density(x, d);
    std::vector<double> re(x.size()), im(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      re[i] = psi.complex()[i].real();
      im[i] = psi.complex()[i].imag();
    }
    ctx.out << "phase jump = " << fmt(gpe_phase_jump(d.vbar)) << '\n';
    t.header = {"x", "re_psi", "im_psi", "rho_g"};
    t.columns = {x, re, im, rho.real()};
  }
  ctx.emit("profile.csv", t);
}

// ---------------------------------------------------------------- residual

std::string matrix_text(const ConsistencyMatrix& m) {
  std::ostringstream s;
  std::size_t w0 = 0;
  for (const auto& r : m.rows) w0 = std::max(w0, r.size());
  s << std::left << std::setw(static_cast<int>(w0 + 2)) << "profile \\ ode";
  for (const auto& c : m.columns) s << std::setw(14) << c;
  s << '\n';
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    s << std::setw(static_cast<int>(w0 + 2)) << m.rows[i];
    for (const auto& cell : m.cells[i]) {
      std::ostringstream v;
      if (cell) {
        v << std::scientific << std::setprecision(3) << *cell;
      } else {
        v << "-";
      }
      s << std::setw(14) << v.str();
    }
    s << '\n';
  }
  return s.str();
}

void cmd_residual(Context& ctx) {
  const double vbar = ctx.cfg.number_or("vbar", 0.5);
  const ConsistencyMatrix m = consistency_matrix(vbar);
  ctx.out << "sup-norm residuals at vbar = " << fmt(vbar) << '\n' << matrix_text(m);
  nlohmann::json j;
  j["vbar"] = vbar;
  j["rows"] = m.rows;
  j["columns"] = m.columns;
  j["cells"] = nlohmann::json::array();
  for (const auto& row : m.cells) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(c ? nlohmann::json(*c) : nlohmann::json(nullptr));
    j["cells"].push_back(r);
  }
  ctx.emit_text("residual.json", j.dump(2) + "\n");
  ctx.manifest.scheme["residual"] = "analytic slope, Brent-refined sup";
}

// ---------------------------------------------------------------- evolve

std::string snapshot_name(std::size_t step) {
  std::ostringstream s;
  s << "snapshot_" << std::setw(8) << std::setfill('0') << step << ".csv";
  return s.str();
}

struct Conservation {
  std::vector<double> time, n_total, energy, momentum;
  double constraint = 0.0;

  void add(double t, const Observables& o) {
    time.push_back(t);
    n_total.push_back(o.n_total);
    energy.push_back(o.energy);
    momentum.push_back(o.momentum);
    constraint = std::max(constraint, o.constraint_drift);
  }
  static double drift(const std::vector<double>& v) {
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x - v.front()));
    return v.front() != 0.0 ? worst / std::abs(v.front()) : worst;
  }
};

void cmd_evolve(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const System system = system_of(cfg);
  const double dt = cfg.number("dt");
  const std::size_t steps = cfg.count("steps");
  const Grid1D grid = Grid1D::make(cfg.number("grid.length"), cfg.count("grid.n"));
  const std::size_t every = cfg.count_or("snapshot.every", std::max<std::size_t>(1, steps / 10));
  const std::string init = cfg.text_or("init", "pair");
  if (init != "pair" && init != "uniform" && init != "pulse") {
    throw ConfigError("init", "init must be pair, uniform or pulse");
  }
  const DerivedGroups d = groups_for(cfg, system);
  record_groups(ctx, d);
  ctx.manifest.dt = dt;
  ctx.manifest.grid_n = grid.n;
  ctx.manifest.grid_length = grid.length;
  ctx.manifest.scheme["init"] = init;

  const auto x = grid.points();
  Conservation cons;
  if (system == System::gpe) {
    ctx.manifest.scheme["integrator"] = "strang split-step fourier (fftw3)";
    GpeState s = init == "pair"      ? gpe_soliton_pair(grid, d)
                 : init == "uniform" ? uniform_gpe(grid, d.params)
                                     : gpe_pulse(grid, d.params, cfg.number_or("pulse.eps", 1e-3),
                                                 cfg.number_or("pulse.width", 10.0));
    evolve_gpe(std::move(s), dt, steps,
               [&](const GpeState& st, std::size_t step) {
                 const Observables o = observables(st);
                 cons.add(st.time, o);
                 Table t;
                 std::vector<double> re(grid.n), im(grid.n);
                 for (std::size_t i = 0; i < grid.n; ++i) {
                   re[i] = st.psi[i].real();
                   im[i] = st.psi[i].imag();
                 }
                 t.header = {"x", "re_psi", "im_psi", "rho_g"};
                 t.columns = {x, re, im, o.rho_s};
                 ctx.emit(snapshot_name(step), t);
               },
               every);
  } else {
    const double kappa = kContinuityKappa;
    ctx.manifest.kappa = kappa;
    HgpeState s;
    if (init == "pair") {
      const Branch branch = parse_branch(cfg.text_or("branch", "dark"));
      const TravelingWave tw = parse_traveling_wave(cfg.text_or("tw", "exact"));
      s = hgpe_soliton_pair(grid, d, branch, tw);
      ctx.manifest.scheme["traveling_wave"] = std::string(to_string(tw));
      ctx.manifest.scheme["branch"] = std::string(to_string(branch));
    } else if (init == "uniform") {
      s = uniform_hgpe(grid, d.params);
    } else {
      s = hgpe_pulse(grid, d.params, cfg.number_or("pulse.eps", 1e-3),
                     cfg.number_or("pulse.width", 10.0));
    }
    s.eps_rho = cfg.number_or("eps_rho", 1e-9);
    ctx.manifest.scheme["integrator"] = "rk4, 4th-order centred differences";
    ctx.manifest.scheme["tracking"] = std::string(to_string(s.tracking));
    evolve_hgpe(std::move(s), dt, steps,
                [&](const HgpeState& st, std::size_t step) {
                  const Observables o = observables(st);
                  cons.add(st.time, o);
                  Table t;
                  t.header = {"x", "rho", "phi", "rho_s"};
                  t.columns = {x, st.rho, st.phase(), o.rho_s};
                  ctx.emit(snapshot_name(step), t);
                },
                every);
    ctx.manifest.conservation["constraint_drift"] = cons.constraint;
  }

  Table c;
  c.header = {"time", "n_total", "energy", "momentum"};
  c.columns = {cons.time, cons.n_total, cons.energy, cons.momentum};
  ctx.emit("conservation.csv", c);
  ctx.manifest.conservation["n_total_rel_drift"] = Conservation::drift(cons.n_total);
  ctx.manifest.conservation["energy_rel_drift"] = Conservation::drift(cons.energy);
  ctx.out << "steps " << steps << ", t = " << fmt(cons.time.back())
          << ", particle-number drift = " << fmt(Conservation::drift(cons.n_total))
          << ", energy drift = " << fmt(Conservation::drift(cons.energy)) << '\n';
}

// ---------------------------------------------------------------- fit

void cmd_fit(Context& ctx) {
  const Table in = read_csv(ctx.cfg.require("fit.input"));
  const std::string column = ctx.cfg.text_or("fit.column", "rho_s");
  const Polarity pol = parse_polarity(ctx.cfg.text_or("fit.polarity", "auto"));
  const FitResult f = fit_sech2(in.column("x"), in.column(column), pol);
  ctx.out << "amplitude  = " << fmt(f.amplitude) << '\n'
          << "width      = " << fmt(f.width) << '\n'
          << "center     = " << fmt(f.center) << '\n'
          << "background = " << fmt(f.background) << '\n'
          << "residual   = " << fmt(f.residual) << '\n'
          << "converged  = " << (f.converged ? "yes" : "no") << " after " << f.iterations
          << " iterations\n";
  Table t;
  t.header = {"amplitude", "width", "center", "background", "residual", "converged", "iterations"};
  t.columns = {{f.amplitude}, {f.width}, {f.center}, {f.background}, {f.residual},
               {f.converged ? 1.0 : 0.0}, {static_cast<double>(f.iterations)}};
  ctx.emit("fit.csv", t);
  ctx.manifest.scheme["fit"] = "levenberg-marquardt sech^2";
}

// ---------------------------------------------------------------- sweep

void cmd_sweep(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const PhysicalParams p = hgpe_params(cfg);
  record_groups(ctx, derive_groups_vbar(p, Side::hgpe, 0.0));
  std::vector<double> vbars{0.0, 0.2, 0.4, 0.6, 0.8, 0.95};
  if (cfg.has("sweep.vbar")) vbars = cfg.numbers("sweep.vbar");
  SweepOptions opt;
  opt.mode = parse_sweep_mode(cfg.text_or("sweep.mode", "analytic"));
  if (opt.mode == SweepMode::pde) {
    opt.length = cfg.number_or("grid.length", opt.length);
    opt.n = cfg.count_or("grid.n", opt.n);
    if (cfg.has("steps")) {
      const double dx = opt.length / static_cast<double>(opt.n);
      opt.duration = static_cast<double>(cfg.count("steps")) *
                     cfg.number_or("dt", kCflFactor * dx * dx);
    }
  }
  ctx.manifest.scheme["sweep"] = cfg.text_or("sweep.mode", "analytic");
  const auto rows = contrast_sweep(vbars, p, opt);
  Table t;
  t.header = {"vbar", "gamma", "depth_analytic", "depth_fit", "width_analytic", "width_fit"};
  t.columns.resize(6);
  for (const auto& r : rows) {
    t.columns[0].push_back(r.vbar);
    t.columns[1].push_back(r.gamma);
    t.columns[2].push_back(r.depth_analytic);
    t.columns[3].push_back(r.depth_fit);
    t.columns[4].push_back(r.width_analytic);
    t.columns[5].push_back(r.width_fit);
  }
  ctx.emit("sweep.csv", t);
  ctx.out << to_csv(t);
}

// ---------------------------------------------------------------- sound

void cmd_sound(Context& ctx) {
  const Config& cfg = ctx.cfg;
  const System system = system_of(cfg);
  const PhysicalParams p = system == System::gpe ? gpe_params(cfg) : hgpe_params(cfg);
  record_groups(ctx, derive_groups_vbar(p, system == System::gpe ? Side::gpe : Side::hgpe, 0.0));
  SoundOptions opt;
  opt.length = cfg.number_or("grid.length", opt.length);
  opt.n = cfg.count_or("grid.n", opt.n);
  opt.width = cfg.number_or("pulse.width", opt.width);
  opt.dt = cfg.number_or("dt", 0.0);
  if (cfg.has("steps")) {
    const double dx = opt.length / static_cast<double>(opt.n);
    opt.duration = static_cast<double>(cfg.count("steps")) *
                   (opt.dt > 0.0 ? opt.dt : kCflFactor * dx * dx);
  }
  const double eps = cfg.number_or("pulse.eps", 1e-3);
  const SoundResult r = measure_sound_speed(system, p, eps, opt);
  ctx.out << "speed = " << fmt(r.speed) << " (expected " << fmt(r.expected)
          << ", relative error " << fmt(std::abs(r.speed - r.expected) / r.expected) << ")\n";
  Table t;
  t.header = {"speed", "speed_right", "speed_left", "expected", "asymmetry", "eps"};
  t.columns = {{r.speed}, {r.speed_right}, {r.speed_left}, {r.expected}, {r.asymmetry}, {eps}};
  ctx.emit("sound.csv", t);
  ctx.manifest.scheme["sound"] = "gaussian pulse, half-maximum midpoints";
}

// ---------------------------------------------------------------- spinmap

void cmd_spinmap(Context& ctx) {
  const PhysicalParams p = hgpe_params(ctx.cfg);
  const SpinChainParams sc = spin_chain_params(p);
  ctx.manifest.params = p;
  const Table in = read_csv(ctx.cfg.require("spinmap.input"));
  const auto& x = in.column("x");
  const auto& rho = in.column("rho");
  const SpinField s = to_spins(rho, in.column("phi"));
  const auto m2 = inplane_mag_sq(s);
  double dict = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    dict = std::max(dict, std::abs(m2[i] - rho[i] * (1.0 - rho[i])));
  }
  ctx.out << "exchange t = " << fmt(sc.exchange) << ", anisotropy g = " << fmt(sc.anisotropy)
          << ", h_z = " << fmt(sc.h_z) << ", cone angle = " << fmt(sc.theta0) << '\n'
          << "max ||S| - 1/2| = " << fmt(spin_length_defect(s))
          << ", max |M_perp^2 - rho (1 - rho)| = " << fmt(dict) << '\n';
  Table t;
  t.header = {"x", "sx", "sy", "sz", "mperp2"};
  t.columns = {x, s.sx, s.sy, s.sz, m2};
  ctx.emit("spins.csv", t);
  ctx.manifest.conservation["spin_length_defect"] = spin_length_defect(s);
  ctx.manifest.conservation["dictionary_defect"] = dict;
}

using Command = void (*)(Context&);

const std::vector<std::pair<std::string, Command>>& commands() {
  static const std::vector<std::pair<std::string, Command>> table{
      {"params", cmd_params}, {"profile", cmd_profile}, {"residual", cmd_residual},
      {"evolve", cmd_evolve}, {"fit", cmd_fit},         {"sweep", cmd_sweep},
      {"sound", cmd_sound},   {"spinmap", cmd_spinmap}};
  return table;
}

const char* describe(const std::string& name) {
  if (name == "params") return "print derived dimensionless groups";
  if (name == "profile") return "sample closed-form soliton profiles to CSV";
  if (name == "residual") return "traveling-wave ODE consistency matrix";
  if (name == "evolve") return "time-evolve a GPE or hard-core state";
  if (name == "fit") return "sech^2 fit of a CSV column";
  if (name == "sweep") return "dip depth and width against vbar";
  if (name == "sound") return "measure the sound speed with a small pulse";
  return "spin-chain image of a hard-core snapshot";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"1D soliton laboratory for the GPE and hard-core boson equations", "solitonlab"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> sets;
  std::vector<std::string> positional;
  std::string out_dir;
  for (const auto& [name, fn] : commands()) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    sub->add_option("-c,--config", config_path, "key=value file or a run manifest");
    sub->add_option("-s,--set", sets, "override one key (key=value)")->allow_extra_args(false);
    sub->add_option("-o,--out", out_dir, "output directory");
    sub->add_option("assignments", positional, "key=value overrides");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kConfig);
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
    if (const char* env = std::getenv("SOLITONLAB_OUT"); env && *env) cfg.set("output.dir", env);
    for (const auto& s : sets) cfg.set_assignment(s);
    for (const auto& s : positional) cfg.set_assignment(s);
    if (!out_dir.empty()) cfg.set("output.dir", out_dir);
    if (!cfg.has("output.dir")) cfg.set("output.dir", "solitonlab_out");

    Context ctx{cfg, fs::path(cfg.require("output.dir")), out, {}};
    fs::create_directories(ctx.dir);
    ctx.manifest.subcommand = name;
    ctx.manifest.config = {cfg.values().begin(), cfg.values().end()};
    ctx.manifest.config_hash = config_hash(cfg);

    const auto it = std::find_if(commands().begin(), commands().end(),
                                 [&](const auto& c) { return c.first == name; });
    it->second(ctx);

    ctx.manifest.timestamp = utc_timestamp();
    const auto path = write_manifest(ctx.dir, ctx.manifest);
    out << "manifest: " << path.string() << '\n';
    return static_cast<int>(ExitCode::kSuccess);
  } catch (const ConfigError& e) {
    err << "config error [" << e.key() << "]: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kConfig);
  } catch (const PhysicsError& e) {
    err << "physics precondition violated: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kPhysics);
  } catch (const NumericalError& e) {
    err << "numerical abort: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kNumerical);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kFailure);
  }
}

}  // namespace solitonlab
