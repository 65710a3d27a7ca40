// polarmol command-line front end.
//
//   polarmol validate <dataset>
//   polarmol levels|fcf|alpha|magic|dress|plan|windows [dataset] [options]
//
// The dataset may also be given through POLARMOL_DATASET. Tables are written
// as CSV, reports as JSON, into --out (default: current directory).
// Exit status: 0 ok, 2 usage/config, 3 data, 4 numerical.

#include <CLI11.hpp>
#include <json.hpp>

#include <polarmol/polarmol.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace polarmol;

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// formatting

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// JSON number rounded to 12 significant digits; non-finite values become strings.
json jnum(double x) {
  if (!std::isfinite(x)) return num(x);
  return std::stod(num(x));
}

json jcomplex(std::complex<double> z) { return json{{"re", jnum(z.real())}, {"im", jnum(z.imag())}}; }

// ---------------------------------------------------------------------------
// option parsing helpers

struct Range {
  double lo = 0, hi = 0, step = 0;
};

Range parse_range(const std::string& text, const std::string& what) {
  Range r;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  std::string rest;
  if (!(in >> r.lo >> c1 >> r.hi >> c2 >> r.step) || c1 != ':' || c2 != ':' || (in >> rest))
    throw UsageError(what + ": expected lo:hi:step, got '" + text + "'");
  return r;
}

RadialGrid parse_grid(const std::string& text) {
  Range r = parse_range(text, "--grid");
  if (r.step != std::floor(r.step) || r.step < 16) throw UsageError("--grid: point count must be an integer >= 16");
  RadialGrid g{r.lo, r.hi, static_cast<std::size_t>(r.step)};
  if (!(g.r_min > 0.0) || !(g.r_max > g.r_min)) throw UsageError("--grid: require 0 < r_min < r_max");
  return g;
}

/// Photon energies in cm^-1, ascending. From --nu (cm^-1) or --nm (vacuum nm).
std::vector<double> photon_grid(const std::string& nu_text, const std::string& nm_text) {
  if (!nu_text.empty() && !nm_text.empty()) throw UsageError("--nu and --nm are mutually exclusive");
  if (!nm_text.empty()) {
    Range r = parse_range(nm_text, "--nm");
    if (!(r.lo > 0.0)) throw UsageError("--nm: wavelengths must be positive");
    std::vector<double> lambda;
    try {
      lambda = frequency_grid(r.lo, r.hi, r.step);
    } catch (const ConfigError& e) {
      throw UsageError(std::string("--nm: ") + e.what());
    }
    std::vector<double> nu;
    for (auto it = lambda.rbegin(); it != lambda.rend(); ++it) nu.push_back(units::nm_to_cm1(*it));
    return nu;
  }
  Range r = parse_range(nu_text, "--nu");
  try {
    return frequency_grid(r.lo, r.hi, r.step);
  } catch (const ConfigError& e) {
    throw UsageError(std::string("--nu: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// shared run configuration

struct Common {
  std::string dataset;
  std::string out = ".";
  std::string grid = "4.5:25:800";
  std::size_t max_levels = 400;
  unsigned threads = 1;
  bool plot = false;
};

struct LevelOpts {
  std::string state;
  int v = 0, J = 0, M = 0;
  std::string pol = "sigma_z";
};

struct Context {
  Common common;
  fs::path dataset_dir, out_dir;
  MoleculeDataset ds;
  RadialGrid grid;
  std::unique_ptr<LevelCache> cache;
  std::vector<std::string> written;
};

void add_common(CLI::App* app, Common& c, bool with_grid = true) {
  app->add_option("dataset", c.dataset, "Dataset directory (default: $POLARMOL_DATASET)");
  app->add_option("-o,--out", c.out, "Output directory, created if missing; must differ from the dataset")
      ->capture_default_str();
  if (with_grid) {
    app->add_option("--grid", c.grid, "Radial grid r_min:r_max:n [bohr, bohr, points]")->capture_default_str();
    app->add_option("--max-levels", c.max_levels, "Bound levels kept per (state, J)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }
  app->add_option("--threads", c.threads, "Worker threads for frequency scans (0 = all cores)")
      ->capture_default_str();
  app->add_flag("--plot", c.plot, "Also write plot-ready .dat files");
}

void add_level(CLI::App* app, LevelOpts& l, const std::string& prefix = "") {
  app->add_option("--" + prefix + "state", l.state, "Electronic state of the initial level (default: ground)");
  app->add_option("--" + prefix + "v", l.v, "Vibrational quantum number")->capture_default_str()->check(CLI::NonNegativeNumber);
  app->add_option("--" + prefix + "J", l.J, "Rotational quantum number")->capture_default_str()->check(CLI::NonNegativeNumber);
  app->add_option("--" + prefix + "M", l.M, "Magnetic quantum number, |M| <= J")->capture_default_str();
  app->add_option("--" + prefix + "pol", l.pol, "Polarization: sigma_x, sigma_y, sigma_z (= pi), sigma_plus, sigma_minus")
      ->capture_default_str();
}

bool same_directory(const fs::path& a, const fs::path& b) {
  std::error_code ec;
  if (fs::exists(a, ec) && fs::exists(b, ec)) return fs::equivalent(a, b, ec);
  return fs::weakly_canonical(a, ec) == fs::weakly_canonical(b, ec);
}

Context open_context(const Common& c, bool with_output = true) {
  Context ctx;
  ctx.common = c;
  std::string path = c.dataset;
  if (path.empty()) {
    if (const char* env = std::getenv("POLARMOL_DATASET")) path = env;
  }
  if (path.empty()) throw UsageError("no dataset given (positional argument or POLARMOL_DATASET)");
  ctx.dataset_dir = path;
  ctx.ds = load_dataset(ctx.dataset_dir);

  ctx.grid = parse_grid(c.grid);
  const auto& ground = ctx.ds.state(ctx.ds.ground_label);
  if (ground.rigid_r_e) ctx.grid = RadialGrid::aligned(ctx.grid.r_min, ctx.grid.r_max, ctx.grid.n, *ground.rigid_r_e);
  ctx.grid.validate();
  ctx.cache = std::make_unique<LevelCache>(ctx.ds, ctx.grid, c.max_levels);

  if (with_output) {
    ctx.out_dir = c.out;
    if (same_directory(ctx.out_dir, ctx.dataset_dir))
      throw UsageError("output directory must not be the dataset directory");
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec) throw UsageError("cannot create output directory '" + c.out + "': " + ec.message());
  }
  return ctx;
}

unsigned thread_count(unsigned requested) {
  if (requested == 0) return std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

std::string state_or_ground(const Context& ctx, const std::string& s) {
  const std::string label = s.empty() ? ctx.ds.ground_label : s;
  if (!ctx.ds.has_state(label)) throw UsageError("unknown state '" + label + "'");
  return label;
}

InitialLevel initial_level(const Context& ctx, const LevelOpts& l) {
  if (std::abs(l.M) > l.J) throw UsageError("|M| must not exceed J");
  return {state_or_ground(ctx, l.state), l.v, l.J, l.M};
}

Polarization polarization(const std::string& name) {
  try {
    return Polarization::parse(name);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

json provenance(const Context& ctx, const std::string& command, json options) {
  json p;
  p["tool"] = "polarmol";
  p["version"] = kVersion;
  p["command"] = command;
  p["dataset"] = {{"path", ctx.dataset_dir.string()}, {"name", ctx.ds.name}};
  p["grid"] = {{"r_min_bohr", jnum(ctx.grid.r_min)}, {"r_max_bohr", jnum(ctx.grid.r_max)}, {"n", ctx.grid.n}};
  p["max_levels"] = ctx.common.max_levels;
  p["options"] = std::move(options);
  return p;
}

json level_json(const InitialLevel& l, const Polarization& pol) {
  return {{"state", l.state}, {"v", l.v}, {"J", l.J}, {"M", l.M}, {"polarization", pol.name()}};
}

// ---------------------------------------------------------------------------
// output

class Output {
 public:
  Output(Context& ctx, const std::string& name) : ctx_(ctx), path_(ctx.out_dir / name) {
    fs::create_directories(path_.parent_path());
    out_.open(path_, std::ios::binary | std::ios::trunc);
    if (!out_) throw UsageError("cannot write '" + path_.string() + "'");
  }
  ~Output() {
    out_.close();
    ctx_.written.push_back(fs::relative(path_, ctx_.out_dir).generic_string());
  }
  std::ofstream& stream() { return out_; }
  template <class T>
  Output& operator<<(const T& x) {
    out_ << x;
    return *this;
  }

 private:
  Context& ctx_;
  fs::path path_;
  std::ofstream out_;
};

void write_json(Context& ctx, const std::string& name, const json& j) {
  Output out(ctx, name);
  out << j.dump(2) << "\n";
}

void write_plot(Context& ctx, const std::string& name, const std::string& header,
                const std::vector<std::vector<double>>& rows) {
  Output out(ctx, "plot/" + name);
  out << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? " " : "") << num(row[k]);
    out << "\n";
  }
}

void report_written(const Context& ctx) {
  for (const auto& f : ctx.written) std::cout << "wrote " << (ctx.out_dir / f).generic_string() << "\n";
}

// ---------------------------------------------------------------------------
// spectra

struct SpectrumRun {
  LineList list;
  PolarizabilitySpectrum spectrum;
};

struct WidthOpts {
  double gamma = -1.0;  // < 0: computed natural widths
};

LineListOptions line_options(const WidthOpts& w) {
  LineListOptions o;
  o.compute_gamma = w.gamma < 0.0;
  return o;
}

SpectrumRun run_spectrum(Context& ctx, const InitialLevel& init, const Polarization& pol, const std::vector<double>& nu,
                         const WidthOpts& w) {
  SpectrumRun r;
  r.list = build_line_list(*ctx.cache, init, pol, line_options(w));
  if (w.gamma >= 0.0)
    for (auto& line : r.list.lines) line.gamma_mhz = w.gamma;
  r.spectrum = scan_spectrum(r.list, nu, thread_count(ctx.common.threads));
  return r;
}

json spectrum_json(const SpectrumRun& r, const WidthOpts& w) {
  json j;
  j["initial"] = level_json(r.list.initial, r.list.polarization);
  j["initial_energy_cm1"] = jnum(r.list.initial_level.energy);
  j["line_count"] = r.list.lines.size();
  std::size_t fallback = 0;
  for (const auto& l : r.list.lines) fallback += l.gamma_fallback ? 1 : 0;
  j["linewidth"] = w.gamma >= 0.0 ? json{{"mode", "fixed"}, {"gamma_MHz", jnum(w.gamma)}}
                                   : json{{"mode", "natural"}, {"default_gamma_lines", fallback}};
  json cap = json::array();
  for (const auto& c : r.list.capture)
    cap.push_back({{"state", c.state}, {"J", c.J}, {"fraction", jnum(c.fraction)}});
  j["closure_capture"] = cap;
  j["resonances_in_range"] = r.spectrum.resonances.size();
  j["poles_skipped"] = r.spectrum.poles.size();
  return j;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_validate(const Common& c) {
  Common v = c;
  Context ctx = open_context(v, false);
  std::size_t perm = 0;
  for (const auto& d : ctx.ds.dipoles) perm += d.kind() == DipoleKind::permanent ? 1 : 0;
  std::cout << "dataset " << ctx.ds.name << ": states=" << ctx.ds.states.size()
            << " potentials=" << ctx.ds.potentials.size() << " dipoles=" << ctx.ds.dipoles.size()
            << " (permanent=" << perm << " transition=" << ctx.ds.dipoles.size() - perm << ")"
            << " ground=" << ctx.ds.ground_label << " reduced_mass_amu=" << num(ctx.ds.reduced_mass) << "\n";
  return 0;
}

struct LevelsArgs {
  std::string state;
  int j_min = 0, j_max = 0;
  bool check = false;
};

int cmd_levels(const Common& c, const LevelsArgs& a) {
  Context ctx = open_context(c);
  const std::string state = state_or_ground(ctx, a.state);
  if (a.j_max < a.j_min) throw UsageError("--J-max must be >= --J");
  {
    Output out(ctx, "levels.csv");
    out << "state,v,J,E_cm1\n";
    for (int J = a.j_min; J <= a.j_max; ++J)
      for (const auto& l : ctx.cache->get(state, J).levels)
        out << state << "," << l.v << "," << J << "," << num(l.energy) << "\n";
  }
  if (c.plot) {
    std::vector<std::vector<double>> rows;
    for (int J = a.j_min; J <= a.j_max; ++J)
      for (const auto& l : ctx.cache->get(state, J).levels) rows.push_back({double(l.v), double(J), l.energy});
    write_plot(ctx, "levels.dat", "# v J E[cm^-1]", rows);
  }
  int status = 0;
  std::string reason;
  if (a.check) {
    json rep = provenance(ctx, "levels", {{"state", state}, {"J_min", a.j_min}, {"J_max", a.j_max}});
    json checks = json::array();
    for (int J = a.j_min; J <= a.j_max; ++J) {
      const auto cr = convergence_check(ctx.ds, state, J, ctx.grid, c.max_levels);
      json shifts = json::array();
      for (double s : cr.shifts) shifts.push_back(jnum(s));
      checks.push_back({{"J", J},
                        {"converged", cr.converged},
                        {"tolerance_cm1", jnum(ConvergenceReport::tolerance)},
                        {"refined_grid", {{"r_min_bohr", jnum(cr.refined.r_min)},
                                          {"r_max_bohr", jnum(cr.refined.r_max)},
                                          {"n", cr.refined.n}}},
                        {"missing_levels", cr.missing},
                        {"shifts_cm1", shifts}});
      if (!cr.converged && status == 0) {
        status = 4;
        reason = "grid not converged for state " + state + " J=" + std::to_string(J);
      }
    }
    rep["convergence"] = checks;
    write_json(ctx, "convergence.json", rep);
  }
  report_written(ctx);
  if (status) throw NumericalError(reason);
  return 0;
}

struct FcfArgs {
  std::string from, to;
  int J = 0, Jp = -1, v_max = 10, vp_max = 20;
};

int cmd_fcf(const Common& c, const FcfArgs& a) {
  Context ctx = open_context(c);
  const std::string lower = state_or_ground(ctx, a.from);
  if (a.to.empty()) throw UsageError("--to is required");
  const std::string upper = state_or_ground(ctx, a.to);
  const int Jp = a.Jp < 0 ? a.J : a.Jp;
  const DipoleCurve* dip = ctx.ds.dipole_between(lower, upper);
  const auto& li = ctx.cache->get(lower, a.J).levels;
  const auto& lf = ctx.cache->get(upper, Jp).levels;
  std::vector<double> d_grid;
  if (dip) d_grid = sample_dipole(*dip, ctx.grid);
  Output out(ctx, "fcf.csv");
  out << "v,J,v',J',FCF,d_vib_D\n";
  for (const auto& i : li) {
    if (i.v > a.v_max) break;
    for (const auto& f : lf) {
      if (f.v > a.vp_max) break;
      out << i.v << "," << a.J << "," << f.v << "," << Jp << "," << num(franck_condon(i, f)) << ","
          << (dip ? num(vibronic_dipole(i, f, d_grid)) : std::string()) << "\n";
    }
  }
  return 0;
}

struct ScanArgs {
  LevelOpts level;
  std::string nu, nm;
  WidthOpts width;
};

void add_scan(CLI::App* app, ScanArgs& s, const std::string& default_nu) {
  add_level(app, s.level);
  s.nu = default_nu;
  app->add_option("--nu", s.nu, "Photon energy grid lo:hi:step [cm^-1]")->capture_default_str();
  app->add_option("--nm", s.nm, "Wavelength grid lo:hi:step [nm, vacuum]; replaces --nu");
  app->add_option("--gamma", s.width.gamma,
                  "Fixed linewidth for every line [MHz]; default: natural widths from the dataset, "
                  "falling back to its default_gamma");
}

std::vector<double> scan_grid(const ScanArgs& s) { return photon_grid(s.nm.empty() ? s.nu : "", s.nm); }

int cmd_alpha(const Common& c, const ScanArgs& a) {
  Context ctx = open_context(c);
  const auto nu = scan_grid(a);
  const auto init = initial_level(ctx, a.level);
  const auto pol = polarization(a.level.pol);
  const auto run = run_spectrum(ctx, init, pol, nu, a.width);
  {
    Output out(ctx, "alpha.csv");
    out << "nu_cm1,re_alpha_Hz_per_Wcm2,im_alpha_Hz_per_Wcm2\n";
    for (const auto& p : run.spectrum.points)
      out << num(p.nu) << "," << num(p.value.real()) << "," << num(p.value.imag()) << "\n";
  }
  {
    Output out(ctx, "resonances.csv");
    out << "nu_res,state,v,J,peak\n";
    for (const auto& r : run.spectrum.resonances)
      out << num(r.nu) << "," << r.final_level.state << "," << r.final_level.v << "," << r.final_level.J << ","
          << num(r.peak) << "\n";
  }
  json opts{{"nu", a.nm.empty() ? a.nu : ""}, {"nm", a.nm}};
  json rep = provenance(ctx, "alpha", opts);
  rep["spectrum"] = spectrum_json(run, a.width);
  rep["units"] = {{"nu", "cm^-1"}, {"alpha", "Hz/(W/cm^2)"}, {"peak", "Hz/(W/cm^2)"}};
  write_json(ctx, "alpha.json", rep);
  if (c.plot) {
    std::vector<std::vector<double>> rows;
    for (const auto& p : run.spectrum.points) rows.push_back({p.nu, p.value.real(), p.value.imag()});
    write_plot(ctx, "alpha.dat", "# nu[cm^-1] Re_alpha[Hz/(W/cm^2)] Im_alpha[Hz/(W/cm^2)]", rows);
  }
  report_written(ctx);
  return 0;
}

struct MagicArgs {
  LevelOpts a, b;
  std::string nu = "0:1:0.001", nm;
  WidthOpts width;
};

int cmd_magic(const Common& c, const MagicArgs& m) {
  Context ctx = open_context(c);
  const auto nu = photon_grid(m.nm.empty() ? m.nu : "", m.nm);
  const auto ia = initial_level(ctx, m.a), ib = initial_level(ctx, m.b);
  const auto pa = polarization(m.a.pol), pb = polarization(m.b.pol);
  const auto ra = run_spectrum(ctx, ia, pa, nu, m.width);
  const auto rb = run_spectrum(ctx, ib, pb, nu, m.width);
  const auto roots = find_magic(ra.spectrum, rb.spectrum);

  json rep = provenance(ctx, "magic", {{"nu", m.nm.empty() ? m.nu : ""}, {"nm", m.nm}});
  rep["spectrum_a"] = spectrum_json(ra, m.width);
  rep["spectrum_b"] = spectrum_json(rb, m.width);
  json jr = json::array();
  for (const auto& r : roots)
    jr.push_back({{"nu_cm1", jnum(r.nu)},
                  {"wavelength_nm", jnum(r.nu > 0 ? units::cm1_to_nm(r.nu) : INFINITY)},
                  {"alpha_a_Hz_per_Wcm2", jcomplex(r.alpha_a)},
                  {"alpha_b_Hz_per_Wcm2", jcomplex(r.alpha_b)}});
  rep["roots"] = jr;
  write_json(ctx, "magic.json", rep);
  if (c.plot) {
    std::vector<std::vector<double>> rows, marks;
    for (std::size_t k = 0; k < ra.spectrum.points.size(); ++k)
      rows.push_back({ra.spectrum.points[k].nu, ra.spectrum.points[k].value.real(),
                      rb.spectrum.points[k].value.real()});
    for (const auto& r : roots) marks.push_back({r.nu, r.alpha_a.real()});
    write_plot(ctx, "magic_curves.dat", "# nu[cm^-1] Re_alpha_a[Hz/(W/cm^2)] Re_alpha_b[Hz/(W/cm^2)]", rows);
    write_plot(ctx, "magic_roots.dat", "# nu[cm^-1] Re_alpha[Hz/(W/cm^2)]", marks);
  }
  report_written(ctx);
  return 0;
}

struct DressArgs {
  std::string state;
  int v = 0;
  double d = -1.0, delta_e = -1.0, nu = 0.0, intensity = 100.0, weight = 1.0 / 3.0;
};

/// Permanent dipole <v,J=0|d|v,J=0> [D] and J=0 -> 1 spacing [cm^-1] from the dataset.
std::pair<double, double> rotor_reference(Context& ctx, const std::string& state, int v) {
  const RovibLevel* l0 = ctx.cache->level(state, v, 0);
  const RovibLevel* l1 = ctx.cache->level(state, v, 1);
  if (!l0 || !l1) throw DataError("level " + state + " v=" + std::to_string(v) + " J=0/1 not bound");
  const DipoleCurve* dip = ctx.ds.dipole_between(state, state);
  const double d = dip ? std::abs(vibronic_dipole(*l0, *l0, *dip)) : 0.0;
  return {d, l1->energy - l0->energy};
}

int cmd_dress(const Common& c, const DressArgs& a) {
  Context ctx = open_context(c);
  const std::string state = state_or_ground(ctx, a.state);
  double d = a.d, de = a.delta_e;
  if (d < 0.0 || de < 0.0) {
    const auto ref = rotor_reference(ctx, state, a.v);
    if (d < 0.0) d = ref.first;
    if (de < 0.0) de = ref.second;
  }
  if (!(d > 0.0)) throw DataError("state " + state + " has no permanent dipole; pass --d");
  const auto p = dress(d, de, a.nu, a.intensity, a.weight);
  json rep = provenance(ctx, "dress", {{"state", state}, {"v", a.v}, {"angular_weight", jnum(a.weight)}});
  rep["plan"] = {{"nu_cm1", jnum(p.nu)},
                 {"intensity_W_per_cm2", jnum(p.intensity)},
                 {"transition_cm1", jnum(de)},
                 {"detuning_cm1", jnum(p.detuning)},
                 {"rabi_cm1", jnum(p.rabi)},
                 {"field_V_per_m", jnum(field_amplitude(p.intensity))},
                 {"d_induced_D", jnum(p.d_induced)},
                 {"d_permanent_D", jnum(p.d_permanent_ref)},
                 {"d_induced_perturbative_D", jnum(induced_dipole_perturbative(d, de, a.nu, a.intensity, a.weight))}};
  write_json(ctx, "dress.json", rep);
  report_written(ctx);
  return 0;
}

struct PlanArgs {
  LevelOpts level;
  double wavelength = 810.0, intensity = 1.0e4, d_induced = -1.0;
  WidthOpts width;
};

int cmd_plan(const Common& c, const PlanArgs& a) {
  Context ctx = open_context(c);
  if (!(a.wavelength > 0.0)) throw UsageError("--wavelength must be positive");
  if (!(a.intensity >= 0.0)) throw UsageError("--intensity must be non-negative");
  const auto init = initial_level(ctx, a.level);
  const auto pol = polarization(a.level.pol);
  const double nu = units::nm_to_cm1(a.wavelength);
  const auto run = run_spectrum(ctx, init, pol, {nu}, a.width);
  if (run.spectrum.points.empty()) throw NumericalError("wavelength sits exactly on an undamped resonance");
  const auto lp = lattice_plan(run.spectrum.points[0], a.intensity, a.wavelength);

  double d_ind = a.d_induced;
  std::string d_source = "option";
  if (d_ind < 0.0) {
    d_ind = 0.5 * rotor_reference(ctx, init.state, init.v).first;
    d_source = "resonant dressing, d_permanent/2";
  }
  const auto dd = dd_interaction(d_ind, lp.spacing_nm);

  json rep = provenance(ctx, "plan", {{"wavelength_nm", jnum(a.wavelength)}, {"intensity_W_per_cm2", jnum(a.intensity)}});
  rep["spectrum"] = spectrum_json(run, a.width);
  rep["lattice"] = {{"wavelength_nm", jnum(lp.wavelength_nm)},
                    {"nu_cm1", jnum(nu)},
                    {"intensity_W_per_cm2", jnum(lp.intensity)},
                    {"alpha_Hz_per_Wcm2", jcomplex(run.spectrum.points[0].value)},
                    {"V0_over_h_Hz", jnum(lp.v0_over_h)},
                    {"decoherence_rate_per_s", jnum(lp.decoherence_rate)},
                    {"R_L_nm", jnum(lp.spacing_nm)},
                    {"coherent_ratio", jnum(lp.coherent_ratio)}};
  rep["interaction"] = {{"d_induced_D", jnum(d_ind)},
                        {"d_induced_source", d_source},
                        {"V_dd_over_h_Hz", jnum(dd.v_dd_over_h)},
                        {"delta_t_s", dd.unbounded() ? json("unbounded") : jnum(*dd.delta_t)}};
  write_json(ctx, "plan.json", rep);
  report_written(ctx);
  return 0;
}

struct WindowArgs {
  ScanArgs scan;
  double min_width = 10.0, flatness = 1.0e-3, ratio_floor = 1.0e6;
};

int cmd_windows(const Common& c, const WindowArgs& a) {
  Context ctx = open_context(c);
  const auto nu = scan_grid(a.scan);
  const auto init = initial_level(ctx, a.scan.level);
  const auto pol = polarization(a.scan.level.pol);
  const auto run = run_spectrum(ctx, init, pol, nu, a.scan.width);
  const auto ws = find_windows(run.spectrum, a.min_width, a.flatness, a.ratio_floor);
  {
    Output out(ctx, "windows.csv");
    out << "nu_lo_cm1,nu_hi_cm1,wavelength_lo_nm,wavelength_hi_nm,max_log_slope_per_cm1,min_coherent_ratio\n";
    for (const auto& w : ws)
      out << num(w.nu_lo) << "," << num(w.nu_hi) << "," << num(w.wavelength_lo_nm) << "," << num(w.wavelength_hi_nm)
          << "," << num(w.max_log_slope) << "," << num(w.min_ratio) << "\n";
  }
  json rep = provenance(ctx, "windows", {{"nu", a.scan.nm.empty() ? a.scan.nu : ""},
                                         {"nm", a.scan.nm},
                                         {"min_width_cm1", jnum(a.min_width)},
                                         {"flatness_cap_per_cm1", jnum(a.flatness)},
                                         {"ratio_floor", jnum(a.ratio_floor)}});
  rep["spectrum"] = spectrum_json(run, a.scan.width);
  json jw = json::array();
  for (const auto& w : ws) {
    json ex = json::array();
    for (double r : w.resonances_excluded) ex.push_back(jnum(r));
    jw.push_back({{"nu_lo_cm1", jnum(w.nu_lo)},
                  {"nu_hi_cm1", jnum(w.nu_hi)},
                  {"wavelength_lo_nm", jnum(w.wavelength_lo_nm)},
                  {"wavelength_hi_nm", jnum(w.wavelength_hi_nm)},
                  {"max_log_slope_per_cm1", jnum(w.max_log_slope)},
                  {"min_coherent_ratio", jnum(w.min_ratio)},
                  {"neighbouring_resonances_cm1", ex}});
  }
  rep["windows"] = jw;
  write_json(ctx, "windows.json", rep);
  if (c.plot) {
    std::vector<std::vector<double>> rows;
    for (const auto& w : ws) rows.push_back({w.nu_lo, w.nu_hi});
    write_plot(ctx, "windows.dat", "# nu_lo[cm^-1] nu_hi[cm^-1]", rows);
    std::vector<std::vector<double>> ratio;
    for (const auto& p : run.spectrum.points) ratio.push_back({p.nu, coherent_ratio(p.value)});
    write_plot(ctx, "coherent_ratio.dat", "# nu[cm^-1] |Re_alpha|/|Im_alpha|[1]", ratio);
  }
  report_written(ctx);
  return 0;
}

std::string one_line(std::string s) {
  for (char& ch : s)
    if (ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

int fail(int status, const char* kind, const std::string& msg) {
  std::cerr << "polarmol: error: " << kind << ": " << one_line(msg) << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rovibrational levels, Franck-Condon factors and dynamic polarizabilities of polar diatomics"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  auto* validate = app.add_subcommand("validate", "Load and check a dataset directory");
  validate->add_option("dataset", common.dataset, "Dataset directory (default: $POLARMOL_DATASET)");

  auto* levels = app.add_subcommand("levels", "Bound rovibrational levels -> levels.csv");
  add_common(levels, common);
  LevelsArgs la;
  levels->add_option("--state", la.state, "Electronic state (default: ground)");
  levels->add_option("--J", la.j_min, "Rotational quantum number (first of the range)")->capture_default_str();
  levels->add_option("--J-max", la.j_max, "Last rotational quantum number (default: --J)");
  levels->add_flag("--check", la.check,
                   "Grid convergence check (n -> 2n, r_max -> 1.5 r_max, tolerance 1e-3 cm^-1) -> convergence.json; "
                   "exit 4 if not converged");

  auto* fcf = app.add_subcommand("fcf", "Franck-Condon factors and vibronic dipoles -> fcf.csv");
  add_common(fcf, common);
  FcfArgs fa;
  fcf->add_option("--from", fa.from, "Lower electronic state (default: ground)");
  fcf->add_option("--to", fa.to, "Upper electronic state")->required();
  fcf->add_option("--J", fa.J, "Rotational quantum number of the lower levels")->capture_default_str();
  fcf->add_option("--Jp", fa.Jp, "Rotational quantum number of the upper levels (default: --J)");
  fcf->add_option("--v-max", fa.v_max, "Highest lower vibrational level")->capture_default_str();
  fcf->add_option("--vp-max", fa.vp_max, "Highest upper vibrational level")->capture_default_str();

  auto* alpha = app.add_subcommand("alpha", "Dynamic polarizability scan -> alpha.csv, resonances.csv, alpha.json");
  add_common(alpha, common);
  ScanArgs sa;
  add_scan(alpha, sa, "0:17000:1");

  auto* magic = app.add_subcommand("magic", "Magic frequencies between two levels -> magic.json");
  add_common(magic, common);
  MagicArgs ma;
  ma.b.J = 1;
  add_level(magic, ma.a, "a-");
  add_level(magic, ma.b, "b-");
  magic->add_option("--nu", ma.nu, "Photon energy grid lo:hi:step [cm^-1]")->capture_default_str();
  magic->add_option("--nm", ma.nm, "Wavelength grid lo:hi:step [nm, vacuum]; replaces --nu");
  magic->add_option("--gamma", ma.width.gamma, "Fixed linewidth for every line [MHz] (default: natural widths)");

  auto* dress_cmd = app.add_subcommand("dress", "Microwave-induced dipole of J=0 -> dress.json");
  add_common(dress_cmd, common);
  DressArgs da;
  dress_cmd->add_option("--state", da.state, "Electronic state (default: ground)");
  dress_cmd->add_option("--v", da.v, "Vibrational level")->capture_default_str();
  dress_cmd->add_option("--d", da.d, "Permanent dipole [D] (default: <v,J=0|d|v,J=0> from the dataset)");
  dress_cmd->add_option("--delta-e", da.delta_e, "J=0 -> 1 transition energy [cm^-1] (default: from levels)");
  dress_cmd->add_option("--nu", da.nu, "Drive photon energy [cm^-1]")->capture_default_str();
  dress_cmd->add_option("--intensity", da.intensity, "Drive intensity [W/cm^2]")->capture_default_str()->check(CLI::NonNegativeNumber);
  dress_cmd->add_option("--weight", da.weight, "Angular weight of the drive [1]")->capture_default_str()->check(CLI::Range(0.0, 1.0));

  auto* plan = app.add_subcommand("plan", "Lattice depth, decoherence and dipole-dipole time -> plan.json");
  add_common(plan, common);
  PlanArgs pa;
  add_level(plan, pa.level);
  plan->add_option("--wavelength", pa.wavelength, "Lattice wavelength [nm, vacuum]")->capture_default_str();
  plan->add_option("--intensity", pa.intensity, "Lattice intensity [W/cm^2]")->capture_default_str();
  plan->add_option("--d-induced", pa.d_induced, "Induced dipole [D] (default: half the permanent dipole)");
  plan->add_option("--gamma", pa.width.gamma, "Fixed linewidth for every line [MHz] (default: natural widths)");

  auto* windows = app.add_subcommand("windows", "Low-loss frequency windows -> windows.csv, windows.json");
  add_common(windows, common);
  WindowArgs wa;
  add_scan(windows, wa.scan, "0:17000:1");
  windows->add_option("--min-width", wa.min_width, "Minimum window width [cm^-1]")->capture_default_str();
  windows->add_option("--flatness", wa.flatness, "Cap on |d ln|alpha| / d nu| [1/cm^-1]")->capture_default_str();
  windows->add_option("--ratio-floor", wa.ratio_floor, "Minimum |Re alpha|/|Im alpha| [1]")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  try {
    if (*validate) return cmd_validate(common);
    if (*levels) {
      if (levels->count("--J-max") == 0) la.j_max = la.j_min;
      return cmd_levels(common, la);
    }
    if (*fcf) return cmd_fcf(common, fa);
    if (*alpha) return cmd_alpha(common, sa);
    if (*magic) return cmd_magic(common, ma);
    if (*dress_cmd) return cmd_dress(common, da);
    if (*plan) return cmd_plan(common, pa);
    if (*windows) return cmd_windows(common, wa);
  } catch (const UsageError& e) {
    return fail(2, "usage", e.what());
  } catch (const ConfigError& e) {
    return fail(2, "config", e.what());
  } catch (const DataError& e) {
    return fail(3, "data", e.what());
  } catch (const NumericalError& e) {
    return fail(4, "numerical", e.what());
  } catch (const std::exception& e) {
    return fail(4, "numerical", e.what());
  }
  return 0;
}
