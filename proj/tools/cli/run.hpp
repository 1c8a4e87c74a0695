#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "circq/fiducial.hpp"

namespace circq::cli {

enum class Command {
  Moments,
  AngleSpectrum,
  AngleProfile,
  LowerSymbol,
  Commutator,
  Uncertainty,
  FourierTable,
  Cylinder,
  Compare,
};

enum class Format { Csv, Json };

struct RunConfig {
  Command command = Command::Moments;
  std::vector<double> epsilon{1.0};
  std::vector<double> delta{0.3};
  double gamma = pi / 2;
  double zeta = 0.0;
  double lambda = 0.0;
  KappaMode kappa_mode = KappaMode::Ratio;
  int grid = 256;
  std::pair<double, double> p_range{-5.0, 5.0};
  double sigma = 1.0;
  int n_max = 16;
  std::string out_path = "-";
  Format format = Format::Csv;

  std::vector<double> nu;          // moments: empty means the default range
  std::string observable = "angle";// lower-symbol: angle | p
  std::string quantity = "matrix"; // cylinder: matrix | symbol | dm
  double p0 = 0.0;                 // cylinder lower symbols
  int cache_grid = 0;              // tabulate the angle multiplier in sweeps

  void validate() const;
};

/// Result of one (epsilon, delta) evaluation.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

std::string command_name(Command c);
bool sweeps_epsilon(Command c);
bool uses_fiducial(Command c);

Table compute(const RunConfig& cfg, double epsilon, double delta);

/// 12 significant digits, '.' decimal separator.
std::string format_number(double v);
void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);

nlohmann::ordered_json config_json(const RunConfig& cfg);

/// Execute, writing data files (or stdout for out_path "-") and the manifest.
/// Returns the process exit status: 0, 2 (configuration) or 3 (numerics).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parse argv and run.
int main_entry(int argc, char** argv);

}  // namespace circq::cli
