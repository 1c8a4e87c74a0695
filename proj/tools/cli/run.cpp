#include "run.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "circq/angle.hpp"
#include "circq/cylinder.hpp"
#include "circq/quantize.hpp"
#include "circq/semiclassics.hpp"
#include "circq/version.hpp"

namespace circq::cli {

namespace {

using json = nlohmann::ordered_json;

const std::map<std::string, Command>& command_table() {
  static const std::map<std::string, Command> table{
      {"moments", Command::Moments},         {"angle-spectrum", Command::AngleSpectrum},
      {"angle-profile", Command::AngleProfile}, {"lower-symbol", Command::LowerSymbol},
      {"commutator", Command::Commutator},   {"uncertainty", Command::Uncertainty},
      {"fourier-table", Command::FourierTable}, {"cylinder", Command::Cylinder},
      {"compare", Command::Compare},
  };
  return table;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return out;
}

std::vector<double> circle_grid(int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = two_pi * i / n;
  return out;
}

FiducialSpec fiducial(const RunConfig& cfg, double epsilon, double delta) {
  FiducialSpec s;
  s.epsilon = epsilon;
  s.delta = delta;
  s.gamma = cfg.gamma;
  s.zeta = cfg.zeta;
  s.lambda = cfg.lambda;
  s.kappa_mode = cfg.kappa_mode;
  return s;
}

CylinderModel cylinder_model(const RunConfig& cfg) {
  CylinderModel m;
  m.sigma = cfg.sigma;
  m.n_max = cfg.n_max;
  m.validate();
  return m;
}

Table moments_table(const RunConfig& cfg, const CoherentFamily& fam) {
  Table t;
  t.columns = {"nu", "c_nu"};
  const std::vector<double> nus = cfg.nu.empty() ? default_nu_range() : cfg.nu;
  for (double nu : nus) {
    const auto it = fam.table.c_nu.find(nu);
    const double c = it != fam.table.c_nu.end() ? it->second
                                                : moment_c(fam.eta, nu, fam.spec().gamma, fam.cfg);
    t.rows.push_back({nu, c});
  }
  t.summary["kappa"] = fam.table.kappa;
  t.summary["c_eta"] = fam.table.c_eta;
  t.summary["c_const"] = fam.table.c_const;
  t.summary["a_const"] = fam.table.a_const;
  return t;
}

Table spectrum_table(const CoherentFamily& fam) {
  const AngleProfile ap = angle_operator(fam);
  const auto& s = fam.spec();
  Table t;
  t.summary["epsilon"] = s.epsilon;
  t.summary["delta"] = s.delta;
  t.summary["m"] = ap.m_value;
  t.summary["lo"] = ap.spectrum_lo;
  t.summary["hi"] = ap.spectrum_hi;
  t.summary["mean_q"] = ap.mean_q;
  t.summary["argmin"] = ap.argmin;
  t.columns = {"epsilon", "delta", "m_rad", "lo_rad", "hi_rad"};
  std::vector<double> row{s.epsilon, s.delta, ap.m_value, ap.spectrum_lo, ap.spectrum_hi};
  if (s.standard_section()) {
    const double root = spectrum_extremum(s.epsilon, s.delta, fam.cfg);
    const double m_root = spectrum_halfwidth(s.epsilon, s.delta, fam.cfg);
    t.summary["alpha_star"] = root;
    t.summary["m_root"] = m_root;
    t.columns.insert(t.columns.end(), {"alpha_star_rad", "m_root_rad"});
    row.insert(row.end(), {root, m_root});
  }
  t.rows.push_back(row);
  return t;
}

Table profile_table(const RunConfig& cfg, const CoherentFamily& fam) {
  const AngleProfile ap = angle_operator(fam);
  const PeriodicProfile f = F_profile(fam);
  const PeriodicProfile e = density_E(fam);
  Table t;
  t.columns = {"alpha_rad", "eta_per_sqrt_rad", "sawtooth_rad",
               "F_rad",     "multiplier_rad",   "density_E_per_rad"};
  for (double a : circle_grid(cfg.grid))
    t.rows.push_back({a, fam.eta(a), angle_function(a), f(a), ap.multiplier(a), e(a)});
  t.summary["m"] = ap.m_value;
  t.summary["lo"] = ap.spectrum_lo;
  t.summary["hi"] = ap.spectrum_hi;
  return t;
}

Table lower_symbol_table(const RunConfig& cfg, const CoherentFamily& fam) {
  Table t;
  if (cfg.observable == "p") {
    t.columns = {"p", "p_check"};
    for (double p : linspace(cfg.p_range.first, cfg.p_range.second, cfg.grid))
      t.rows.push_back({p, lower_symbol_p(p, fam)});
    t.summary["slope"] = lower_symbol_p(1.0, fam) - lower_symbol_p(0.0, fam);
    return t;
  }
  const AngleContext ctx = make_angle_context(fam, cfg.cache_grid);
  const bool standard = fam.spec().standard_section();
  t.columns = {"q_rad", "q_check_rad", "multiplier_rad", "sawtooth_rad"};
  double worst = 0.0;
  const double d = fam.spec().delta;
  for (double q : circle_grid(cfg.grid)) {
    const double qc = standard ? lower_symbol_angle(q, ctx) : lower_symbol_angle_convolution(q, ctx);
    t.rows.push_back({q, qc, ctx.multiplier(q), angle_function(q)});
    if (q >= d && q <= two_pi - d) worst = std::max(worst, std::abs(qc - angle_function(q)));
  }
  t.summary["max_deviation_window"] = worst;
  return t;
}

Table commutator_table(const RunConfig& cfg, const CoherentFamily& fam) {
  const PeriodicProfile comm = commutator_profile(fam);
  const PeriodicProfile e = density_E(fam);
  Table t;
  t.columns = {"alpha_rad", "minus_i_commutator", "density_E_per_rad"};
  for (double a : circle_grid(cfg.grid)) t.rows.push_back({a, comm(a), e(a)});
  t.summary["c_const"] = fam.table.c_const;
  return t;
}

Table uncertainty_table(const RunConfig& cfg, const CoherentFamily& fam) {
  const AngleContext ctx = make_angle_context(fam, cfg.cache_grid);
  const auto ps = linspace(cfg.p_range.first, cfg.p_range.second, cfg.grid);
  const auto qs = circle_grid(cfg.grid);
  const auto points = uncertainty_grid(ctx, ps, qs);
  Table t;
  t.columns = {"p", "q_rad", "delta_a_rad", "delta_p", "rhs", "product", "ratio"};
  double slack = std::numeric_limits<double>::infinity();
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& pt : points) {
    const double ratio = pt.rhs > 0.0 ? pt.product / pt.rhs : std::numeric_limits<double>::infinity();
    t.rows.push_back({pt.p, pt.q, pt.delta_a, pt.delta_p, pt.rhs, pt.product, ratio});
    slack = std::min(slack, pt.product - pt.rhs);
    if (pt.q >= pi / 2 && pt.q <= 1.5 * pi) min_ratio = std::min(min_ratio, ratio);
  }
  t.summary["min_slack"] = slack;
  t.summary["min_ratio_central"] = min_ratio;
  t.summary["dispersion_p_squared_at_0"] = dispersion_p_squared(0.0, fam);
  t.summary["kinetic_integral"] = kinetic_energy_integral(fam);
  t.summary["dispersion_p_squared_operator"] = dispersion_p_operator(fam);
  return t;
}

Table fourier_table(const RunConfig& cfg, double delta) {
  std::vector<double> eps = cfg.epsilon;
  std::sort(eps.begin(), eps.end());
  Table t;
  t.columns = {"epsilon", "mean_rad", "mean_square_rad2", "dispersion_rad", "dispersion_p",
               "uniform_reference_rad"};
  for (const auto& r : fourier_eigenstate_table(eps, delta))
    t.rows.push_back({r.epsilon, r.mean, r.mean_square, r.dispersion, r.dispersion_p,
                      uniform_angle_dispersion()});
  t.summary["delta"] = delta;
  t.summary["uniform_reference"] = uniform_angle_dispersion();
  return t;
}

Table cylinder_table(const RunConfig& cfg) {
  const CylinderModel model = cylinder_model(cfg);
  Table t;
  t.summary["sigma"] = model.sigma;
  t.summary["n_max"] = model.n_max;
  t.summary["N_p0"] = normalization_N(cfg.p0, model);
  t.summary["N_p0_poisson"] = normalization_N_poisson(cfg.p0, model);
  t.summary["w_10"] = overlap(1, 0, model);
  if (cfg.quantity == "matrix") {
    const OperatorMatrix angle = op_angle(model);
    const OperatorMatrix comm = commutator_matrix(model);
    t.columns = {"n", "n_prime", "overlap", "angle_re", "angle_im", "commutator_re",
                 "commutator_im"};
    for (int n = -model.n_max; n <= model.n_max; ++n)
      for (int k = -model.n_max; k <= model.n_max; ++k)
        t.rows.push_back({double(n), double(k), overlap(n, k, model), angle.at(n, k).real(),
                          angle.at(n, k).imag(), comm.at(n, k).real(), comm.at(n, k).imag()});
    t.summary["angle_hermitian"] = angle.hermitian;
  } else if (cfg.quantity == "symbol") {
    t.columns = {"q0_rad", "commutator_re", "commutator_im", "cos_symbol"};
    const FourierCoefficients cos_c = [](int m) {
      return std::abs(m) == 1 ? std::complex<double>(0.5) : std::complex<double>{};
    };
    for (double q : circle_grid(cfg.grid)) {
      const auto c = lower_symbol_commutator(cfg.p0, q, model);
      t.rows.push_back({q, c.real(), c.imag(), lower_symbol_cylinder(cos_c, cfg.p0, q, model).real()});
    }
  } else if (cfg.quantity == "dm") {
    t.columns = {"m", "d_m", "overlap_0m"};
    for (int m = -model.n_max; m <= model.n_max; ++m)
      t.rows.push_back({double(m), d_m(m, cfg.p0, model), overlap(0, m, model)});
  } else {
    throw ConfigError("cylinder: unknown quantity '" + cfg.quantity + "'");
  }
  return t;
}

Table compare_table(const RunConfig& cfg, const CoherentFamily& fam) {
  const CylinderModel model = cylinder_model(cfg);
  Table t;
  t.columns = {"p", "n", "abs_c_n", "abs_c_0_shifted", "deviation", "cylinder_probability"};
  double worst = 0.0;
  for (double p : linspace(cfg.p_range.first, cfg.p_range.second, cfg.grid)) {
    const auto cn = cs_fourier_coefficients(p, 0.0, -cfg.n_max, cfg.n_max, fam);
    const double norm = normalization_N(p, model);
    for (int n = -cfg.n_max; n <= cfg.n_max; ++n) {
      const double a = std::abs(cn[static_cast<std::size_t>(n + cfg.n_max)]);
      const double b = std::abs(cs_fourier_coefficients(p - n, 0.0, 0, 0, fam).front());
      worst = std::max(worst, std::abs(a - b));
      t.rows.push_back({p, double(n), a, b, std::abs(a - b), model.w(n, p) / norm});
    }
  }
  t.summary["shift_violation"] = worst;
  return t;
}

std::string file_stem(const RunConfig& cfg, double eps, double delta, bool sweep) {
  std::string stem = command_name(cfg.command);
  if (!sweep) return stem;
  if (sweeps_epsilon(cfg.command)) stem += "_eps" + format_number(eps);
  return stem + "_delta" + format_number(delta);
}

void write(const RunConfig& cfg, const Table& t, std::ostream& os) {
  if (cfg.format == Format::Csv)
    write_csv(t, os);
  else
    write_json(t, os);
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [name, cmd] : command_table())
    if (cmd == c) return name;
  return "unknown";
}

bool uses_fiducial(Command c) { return c != Command::Cylinder; }
bool sweeps_epsilon(Command c) { return uses_fiducial(c) && c != Command::FourierTable; }

void RunConfig::validate() const {
  if (grid < 16) throw ConfigError("grid must be >= 16");
  if (!(p_range.first < p_range.second)) throw ConfigError("p-range must be increasing");
  if (epsilon.empty() || delta.empty()) throw ConfigError("epsilon and delta need a value");
  for (double e : epsilon)
    if (!(e > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (n_max < 0) throw ConfigError("n-max must be >= 0");
  if (cache_grid != 0 && cache_grid < 16) throw ConfigError("cache-grid must be 0 or >= 16");
  if (observable != "angle" && observable != "p")
    throw ConfigError("observable must be 'angle' or 'p'");
}

Table compute(const RunConfig& cfg, double epsilon, double delta) {
  if (cfg.command == Command::Cylinder) return cylinder_table(cfg);
  if (cfg.command == Command::FourierTable) return fourier_table(cfg, delta);
  const CoherentFamily fam = make_family(fiducial(cfg, epsilon, delta));
  switch (cfg.command) {
    case Command::Moments: return moments_table(cfg, fam);
    case Command::AngleSpectrum: return spectrum_table(fam);
    case Command::AngleProfile: return profile_table(cfg, fam);
    case Command::LowerSymbol: return lower_symbol_table(cfg, fam);
    case Command::Commutator: return commutator_table(cfg, fam);
    case Command::Uncertainty: return uncertainty_table(cfg, fam);
    case Command::Compare: return compare_table(cfg, fam);
    default: break;
  }
  throw ConfigError("unhandled command");
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  json j = t.summary;
  if (!t.columns.empty()) {
    j["columns"] = t.columns;
    j["rows"] = t.rows;
  }
  os << j.dump(2) << '\n';
}

json config_json(const RunConfig& cfg) {
  json j;
  j["command"] = command_name(cfg.command);
  j["epsilon"] = cfg.epsilon;
  j["delta"] = cfg.delta;
  j["gamma"] = cfg.gamma;
  j["zeta"] = cfg.zeta;
  j["lambda"] = cfg.lambda;
  j["kappa_mode"] = cfg.kappa_mode == KappaMode::Ratio ? "ratio" : "unit";
  j["grid"] = cfg.grid;
  j["p_range"] = {cfg.p_range.first, cfg.p_range.second};
  j["sigma"] = cfg.sigma;
  j["n_max"] = cfg.n_max;
  j["out_path"] = cfg.out_path;
  j["format"] = cfg.format == Format::Csv ? "csv" : "json";
  j["nu"] = cfg.nu;
  j["observable"] = cfg.observable;
  j["quantity"] = cfg.quantity;
  j["p0"] = cfg.p0;
  j["cache_grid"] = cfg.cache_grid;
  return j;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    cfg.validate();
    std::vector<std::pair<double, double>> combos;
    std::vector<double> eps = cfg.epsilon, dels = cfg.delta;
    std::sort(eps.begin(), eps.end());
    std::sort(dels.begin(), dels.end());
    if (!sweeps_epsilon(cfg.command)) eps.resize(1);
    if (!uses_fiducial(cfg.command)) dels.resize(1);
    for (double e : eps)
      for (double d : dels) combos.emplace_back(e, d);
    const bool sweep = combos.size() > 1;
    const bool to_stdout = cfg.out_path == "-";
    if (sweep && to_stdout) throw ConfigError("parameter sweeps need --out DIR");

    const std::string ext = cfg.format == Format::Csv ? ".csv" : ".json";
    namespace fs = std::filesystem;
    if (!to_stdout) fs::create_directories(cfg.out_path);

    json manifest;
    manifest["version"] = circq::version;
    manifest["config"] = config_json(cfg);
    manifest["tolerances"] = {{"abs_tol", precise_quadrature.abs_tol},
                              {"rel_tol", precise_quadrature.rel_tol},
                              {"max_subdivisions", precise_quadrature.max_subdivisions}};
    json outputs = json::array();
    std::ostringstream index;
    index << "epsilon,delta,file\n";
    for (const auto& [e, d] : combos) {
      const Table t = compute(cfg, e, d);
      json entry{{"epsilon", e}, {"delta", d}, {"summary", t.summary}};
      if (to_stdout) {
        write(cfg, t, out);
      } else {
        const std::string name = file_stem(cfg, e, d, sweep) + ext;
        std::ofstream f(fs::path(cfg.out_path) / name, std::ios::binary);
        if (!f) throw ConfigError("cannot write " + name);
        write(cfg, t, f);
        entry["file"] = name;
        index << format_number(e) << ',' << format_number(d) << ',' << name << '\n';
      }
      outputs.push_back(entry);
    }
    if (sweep) {
      std::ofstream f(fs::path(cfg.out_path) / "index.csv", std::ios::binary);
      f << index.str();
    }
    manifest["outputs"] = outputs;
    manifest["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (to_stdout) {
      err << manifest.dump(2) << '\n';
    } else {
      std::ofstream f(fs::path(cfg.out_path) / "manifest.json", std::ios::binary);
      f << manifest.dump(2) << '\n';
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure in " << e.operation() << ": " << e.what() << '\n';
    return 3;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Coherent-state quantisation of the circle: angle, momentum and uncertainty"};
  RunConfig cfg;
  std::string command;
  std::string kappa = "ratio", format = "csv";
  std::vector<double> p_range{cfg.p_range.first, cfg.p_range.second};

  std::vector<std::string> names;
  for (const auto& kv : command_table()) names.push_back(kv.first);
  app.add_option("command", command, "What to compute")->required()->check(CLI::IsMember(names));
  app.add_option("--epsilon", cfg.epsilon, "Bump decay rate(s), comma separated")
      ->delimiter(',');
  app.add_option("--delta", cfg.delta, "Support half-width(s) in (0, pi/2), comma separated")
      ->delimiter(',');
  app.add_option("--gamma", cfg.gamma, "Section angle gamma (rad)");
  app.add_option("--zeta", cfg.zeta, "Section angle zeta (rad)");
  app.add_option("--lambda", cfg.lambda, "Section offset lambda");
  app.add_option("--kappa-mode", kappa, "ratio (kappa = c2/c1) or unit (kappa = 1)")
      ->check(CLI::IsMember({"ratio", "unit"}));
  app.add_option("--grid", cfg.grid, "Sample count per axis (>= 16)");
  app.add_option("--p-range", p_range, "Momentum range LO,HI")->delimiter(',')->expected(2);
  app.add_option("--sigma", cfg.sigma, "Cylinder weight width");
  app.add_option("--n-max", cfg.n_max, "Basis truncation |n| <= n_max");
  app.add_option("--p0", cfg.p0, "Momentum of cylinder lower symbols");
  app.add_option("--nu", cfg.nu, "Moment orders for 'moments'")->delimiter(',');
  app.add_option("--observable", cfg.observable, "lower-symbol: angle or p");
  app.add_option("--quantity", cfg.quantity, "cylinder: matrix, symbol or dm");
  app.add_option("--cache-grid", cfg.cache_grid, "Tabulate the angle multiplier on N points");
  app.add_option("--out", cfg.out_path, "Output directory, or - for stdout");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.set_version_flag("--version", std::string(circq::version));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.command = command_table().at(command);
  cfg.kappa_mode = kappa == "unit" ? KappaMode::Unit : KappaMode::Ratio;
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  cfg.p_range = {p_range.at(0), p_range.at(1)};
  return run(cfg, std::cout, std::cerr);
}

}  // namespace circq::cli
