// qcorr: correlation ledger of a two-qubit state leaking into its environment.
//
//   qcorr sweep --channel ad|pd ... --out records.csv
//   qcorr discord --input state.json
//   qcorr tomo --counts counts.csv --out state.json
//   qcorr counts --input state.json --n0 500 --seed 1 --out counts.csv
//   qcorr noise-study --p 0.5 --q-steps 11 --out noise.csv
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/errors.hpp"
#include "qcorr/experiments.hpp"
#include "qcorr/state_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr const char* kExploratoryNote =
    "qcorr: note: correlated B-E dephasing is an exploratory noise model, not a fit to data\n";

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qcorr::ConfigError("cannot open " + path + " for writing");
  out << text;
}

qcorr::Orientations parse_orientations(const std::string& s) {
  if (s == "both") return qcorr::Orientations::kBoth;
  if (s == "first") return qcorr::Orientations::kFirst;
  throw qcorr::ConfigError("--orientations: expected both or first");
}

// Amplitudes typed on the command line are rescaled if they are within 1e-6
// of unit norm; anything further off is rejected.
qcorr::InitialState initial_from_flags(double alpha, double beta, double gamma, double delta) {
  const double norm2 = alpha * alpha + beta * beta + gamma * gamma + delta * delta;
  if (!(std::abs(norm2 - 1.0) <= 1e-6)) {
    std::ostringstream os;
    os << "--alpha/--beta/--gamma/--delta: squared amplitudes sum to " << norm2 << ", expected 1";
    throw qcorr::ConfigError(os.str());
  }
  const double s = 1.0 / std::sqrt(norm2);
  return {alpha * s, beta * s, gamma * s, delta * s};
}

struct SweepFlags {
  std::string config_path;
  std::string channel = "pd";
  std::optional<double> alpha, beta, gamma, delta;
  int p_steps = 21;
  double noise_white = 0.0;
  double noise_zz = 0.0;
  std::optional<double> tomo_n0;
  int tomo_mc = 100;
  std::uint64_t seed = 1;
  std::string analysis = "direct";
  std::string format = "csv";
  std::string out;
  std::string gnuplot;
  bool skip_discord = false;
  bool bits = false;
  int grid = 24;
  double refine_tol = 1e-8;
  std::string orientations = "both";
};

int run_sweep_command(const SweepFlags& f, const CLI::App& cmd) {
  qcorr::SweepConfig config;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw qcorr::ConfigError("cannot open config " + f.config_path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw qcorr::ConfigError(std::string("config: ") + e.what());
    }
    config = qcorr::parse_sweep_config(j);
  }
  auto given = [&](const char* name) { return cmd.count(name) > 0; };

  if (given("--channel") || f.config_path.empty()) {
    config.channel = qcorr::parse_channel(f.channel);
    if (config.channel == qcorr::ChannelKind::kCustom) {
      throw qcorr::ConfigError("--channel custom: supply the Kraus entries through --config");
    }
  }
  if (f.alpha || f.beta || f.gamma || f.delta) {
    config.initial = initial_from_flags(f.alpha.value_or(0.0), f.beta.value_or(0.0), f.gamma.value_or(0.0),
                                        f.delta.value_or(0.0));
  } else if (f.config_path.empty() && config.channel == qcorr::ChannelKind::kAd) {
    config.initial = qcorr::InitialState(0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0);
  }
  if (given("--p-steps") || config.p_grid.empty()) config.p_grid = qcorr::default_p_grid(f.p_steps);
  if (given("--noise-white")) config.noise.white = f.noise_white;
  if (given("--noise-zz")) config.noise.correlated = f.noise_zz;
  if (f.tomo_n0) {
    qcorr::TomographyConfig t = config.tomography.value_or(qcorr::TomographyConfig{});
    t.n0 = *f.tomo_n0;
    if (given("--tomo-mc")) t.resamples = f.tomo_mc;
    if (given("--seed")) t.seed = f.seed;
    config.tomography = t;
  } else if (config.tomography) {
    if (given("--tomo-mc")) config.tomography->resamples = f.tomo_mc;
    if (given("--seed")) config.tomography->seed = f.seed;
  }
  if (given("--analysis")) config.analysis = qcorr::parse_analysis(f.analysis);
  if (f.skip_discord) config.skip_discord = true;
  if (given("--grid")) config.discord.grid = f.grid;
  if (given("--refine-tol")) config.discord.refine_tol = f.refine_tol;
  if (given("--orientations")) config.discord.orientations = parse_orientations(f.orientations);

  config.validate();
  if (config.noise.correlated > 0.0) std::cerr << kExploratoryNote;
  const auto records = qcorr::run_sweep(config);
  const qcorr::EmitOptions emit{f.bits};
  if (f.format == "csv") {
    write_text(f.out, qcorr::format_csv(records, emit));
  } else if (f.format == "json") {
    write_text(f.out, qcorr::to_json(records, emit).dump(2) + "\n");
  } else {
    throw qcorr::ConfigError("--format: expected csv or json");
  }
  if (!f.gnuplot.empty()) write_text(f.gnuplot, qcorr::gnuplot_script(f.out.empty() ? "records.csv" : f.out));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation ledger of a two-qubit system and its environment"};
  app.require_subcommand(1);

  SweepFlags sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the channel strength p and emit correlation records");
  sweep_cmd->add_option("--config", sweep.config_path, "JSON sweep configuration (flags override it)");
  sweep_cmd->add_option("--channel", sweep.channel, "ad | pd");
  sweep_cmd->add_option("--alpha", sweep.alpha, "amplitude of |11>_AB");
  sweep_cmd->add_option("--beta", sweep.beta, "amplitude of |10>_AB");
  sweep_cmd->add_option("--gamma", sweep.gamma, "amplitude of |01>_AB");
  sweep_cmd->add_option("--delta", sweep.delta, "amplitude of |00>_AB");
  sweep_cmd->add_option("--p-steps", sweep.p_steps, "uniform grid points on [0,1]")->capture_default_str();
  sweep_cmd->add_option("--noise-white", sweep.noise_white, "white-noise weight eps");
  sweep_cmd->add_option("--noise-zz", sweep.noise_zz, "correlated Z_B Z_E dephasing q (exploratory model)");
  sweep_cmd->add_option("--tomo-n0", sweep.tomo_n0, "enable simulated tomography with this exposure");
  sweep_cmd->add_option("--tomo-mc", sweep.tomo_mc, "Monte Carlo resamples for error bars")->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "tomography seed")->capture_default_str();
  sweep_cmd->add_option("--analysis", sweep.analysis, "direct | quasi-pure | both")->capture_default_str();
  sweep_cmd->add_option("--format", sweep.format, "csv | json")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "output path (default stdout)");
  sweep_cmd->add_option("--gnuplot", sweep.gnuplot, "also write a gnuplot script here");
  sweep_cmd->add_flag("--skip-discord", sweep.skip_discord, "tangles and witnesses only");
  sweep_cmd->add_flag("--bits", sweep.bits, "report entropic quantities in bits");
  sweep_cmd->add_option("--grid", sweep.grid, "discord grid points per angle")->capture_default_str();
  sweep_cmd->add_option("--refine-tol", sweep.refine_tol, "discord refinement tolerance")->capture_default_str();
  sweep_cmd->add_option("--orientations", sweep.orientations, "both | first")->capture_default_str();

  std::string discord_input, discord_out, discord_orient = "both";
  int discord_grid = 24;
  double discord_tol = 1e-8;
  bool discord_bits = false;
  auto* discord_cmd = app.add_subcommand("discord", "Full discord report for a three-qubit state file");
  discord_cmd->add_option("--input", discord_input, "state file")->required();
  discord_cmd->add_option("--grid", discord_grid, "grid points per angle")->capture_default_str();
  discord_cmd->add_option("--refine-tol", discord_tol, "refinement tolerance")->capture_default_str();
  discord_cmd->add_option("--orientations", discord_orient, "both | first")->capture_default_str();
  discord_cmd->add_option("--out", discord_out, "output path (default stdout)");
  discord_cmd->add_flag("--bits", discord_bits, "report in bits");

  std::string tomo_counts, tomo_out;
  auto* tomo_cmd = app.add_subcommand("tomo", "Reconstruct a density matrix from a counts file");
  tomo_cmd->add_option("--counts", tomo_counts, "counts CSV")->required();
  tomo_cmd->add_option("--out", tomo_out, "state file to write (default stdout)");

  std::string counts_input, counts_out;
  double counts_n0 = 500.0;
  std::uint64_t counts_seed = 1;
  auto* counts_cmd = app.add_subcommand("counts", "Simulate Poissonian tomography counts for a state file");
  counts_cmd->add_option("--input", counts_input, "state file")->required();
  counts_cmd->add_option("--n0", counts_n0, "expected coincidences per unit probability")->capture_default_str();
  counts_cmd->add_option("--seed", counts_seed, "random seed")->capture_default_str();
  counts_cmd->add_option("--out", counts_out, "counts CSV to write (default stdout)");

  double noise_p = 0.5, noise_q_max = 0.5, noise_white = 0.0;
  int noise_steps = 11;
  std::string noise_out;
  auto* noise_cmd = app.add_subcommand("noise-study", "3-tangle induced by correlated B-E dephasing on the AD trajectory");
  noise_cmd->add_option("--p", noise_p, "amplitude-damping strength")->capture_default_str();
  noise_cmd->add_option("--q-max", noise_q_max, "largest dephasing strength q")->capture_default_str();
  noise_cmd->add_option("--q-steps", noise_steps, "grid points on [0, q-max]")->capture_default_str();
  noise_cmd->add_option("--noise-white", noise_white, "additional white noise")->capture_default_str();
  noise_cmd->add_option("--out", noise_out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sweep_cmd) return run_sweep_command(sweep, *sweep_cmd);

    if (*discord_cmd) {
      qcorr::DiscordOptions opts;
      opts.grid = discord_grid;
      opts.refine_tol = discord_tol;
      opts.orientations = parse_orientations(discord_orient);
      const qcorr::DensityMatrix rho = qcorr::as_density_matrix(qcorr::read_state(discord_input));
      qcorr::DiscordReport report = qcorr::genuine_discord(rho, opts);
      if (discord_bits) report = qcorr::discord_report_bits(report);
      nlohmann::json j = qcorr::to_json(report);
      j["entropy_unit"] = discord_bits ? "bits" : "nats";
      write_text(discord_out, j.dump(2) + "\n");
      return 0;
    }

    if (*tomo_cmd) {
      const qcorr::DensityMatrix rho = qcorr::reconstruct(qcorr::read_counts(tomo_counts));
      write_text(tomo_out, qcorr::format_state(rho));
      return 0;
    }

    if (*counts_cmd) {
      const qcorr::DensityMatrix rho = qcorr::as_density_matrix(qcorr::read_state(counts_input));
      write_text(counts_out, qcorr::format_counts(qcorr::simulate_counts(rho, counts_n0, counts_seed)));
      return 0;
    }

    if (*noise_cmd) {
      if (noise_steps < 2) throw qcorr::ConfigError("--q-steps: need at least 2 points");
      qcorr::NoiseStudyConfig config;
      config.p = noise_p;
      config.white = noise_white;
      std::cerr << kExploratoryNote;
      for (int i = 0; i < noise_steps; ++i) config.q_grid.push_back(noise_q_max * i / (noise_steps - 1));
      write_text(noise_out, qcorr::format_noise_csv(qcorr::noise_study(config)));
      return 0;
    }
  } catch (const qcorr::NumericalError& e) {
    std::cerr << "qcorr: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qcorr: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "qcorr: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
