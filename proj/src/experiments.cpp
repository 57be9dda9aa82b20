#include "qcorr/experiments.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "qcorr/entanglement.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

namespace {

bool finite_in(double x, double lo, double hi) { return std::isfinite(x) && x >= lo && x <= hi; }

KrausPair channel_for(const SweepConfig& config, double p) {
  switch (config.channel) {
    case ChannelKind::kAd: return amplitude_damping(ChannelParameter(p));
    case ChannelKind::kPd: return phase_damping(ChannelParameter(p));
    case ChannelKind::kCustom: return *config.custom;
  }
  throw ConfigError("channel: unknown kind");
}

std::vector<double> effective_grid(const SweepConfig& config) {
  if (config.channel == ChannelKind::kCustom) return {config.custom_p};
  return config.p_grid.empty() ? default_p_grid() : config.p_grid;
}

void fill_tangles(CorrelationRecord& r, const TangleSet& t) {
  r.c2_ab = t.c2_ab;
  r.c2_ae = t.c2_ae;
  r.c2_be = t.c2_be;
  r.tau = t.tau;
  r.invariant_e0 = t.invariant;
}

cplx complex_from_json(const nlohmann::json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(field + ": expected a number or [re, im]");
}

// NaN marks a column that was not computed.
void write_number(std::ostream& os, double x) {
  if (std::isnan(x)) {
    os << "nan";
  } else {
    os << x;
  }
}

}  // namespace

void SweepConfig::validate() const {
  if (channel == ChannelKind::kCustom) {
    if (!custom) throw ConfigError("kraus: custom channel needs eight complex Kraus entries");
    custom->validate();
    if (!finite_in(custom_p, 0.0, 1.0)) throw ConfigError("p: must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (!finite_in(p_grid[i], 0.0, 1.0)) throw ConfigError("p_grid: values must lie in [0, 1]");
    if (i > 0 && p_grid[i] < p_grid[i - 1]) throw ConfigError("p_grid: values must be sorted");
  }
  if (!finite_in(noise.white, 0.0, 1.0)) throw ConfigError("noise.white: must lie in [0, 1]");
  if (!finite_in(noise.correlated, 0.0, 0.5)) throw ConfigError("noise.correlated: must lie in [0, 1/2]");
  if (tomography) {
    if (!(tomography->n0 > 0.0) || !std::isfinite(tomography->n0)) throw ConfigError("tomography.n0: must be positive");
    if (tomography->resamples < 2) throw ConfigError("tomography.resamples: must be at least 2");
  }
  if (discord.grid < 2) throw ConfigError("discord.grid: must be at least 2");
  if (!(discord.refine_tol > 0.0)) throw ConfigError("discord.refine_tol: must be positive");
}

std::vector<double> default_p_grid(int steps) {
  if (steps < 2) throw ConfigError("p_steps: need at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (steps - 1);
  return grid;
}

StateVector sweep_state(const SweepConfig& config, double p) { return dilate(config.initial, channel_for(config, p)); }

DensityMatrix noisy_state(const SweepConfig& config, double p) {
  DensityMatrix rho = sweep_state(config, p).projector();
  if (config.noise.correlated > 0.0) rho = correlated_be_dephasing(rho, config.noise.correlated);
  if (config.noise.white > 0.0) rho = white_noise(rho, config.noise.white);
  return rho;
}

CorrelationRecord analyze_state(const DensityMatrix& rho, double p, Analysis analysis, bool skip_discord,
                                const DiscordOptions& discord) {
  if (analysis == Analysis::kBoth) throw ConfigError("analyze_state: pick direct or quasi-pure");
  CorrelationRecord r;
  r.p = p;
  r.analysis = analysis;
  r.purity = purity(rho);
  const DominantEigenvector dominant = dominant_eigenvector(rho);
  r.mu_max = dominant.eigenvalue;

  if (analysis == Analysis::kDirect) {
    fill_tangles(r, tangle_set(rho));
    r.f_w = witness_w(rho).fidelity;
    r.f_ghz = witness_ghz(rho).fidelity;
    if (!skip_discord) {
      const DiscordReport report = genuine_discord(rho, discord);
      r.d3 = report.genuine;
      r.tqd = report.total_discord;
    }
  } else {
    const StateVector& psi = dominant.state;
    const DensityMatrix pure = psi.projector();
    fill_tangles(r, tangle_set(psi));
    r.f_w = witness_w(pure).fidelity;
    r.f_ghz = witness_ghz(pure).fidelity;
    if (!skip_discord) {
      r.d3 = pure_genuine_discord(psi).value;
      r.tqd = total_discord(pure, discord);
    }
  }
  return r;
}

Statistic statistic_by_name(const std::string& name, Analysis analysis, const DiscordOptions& discord) {
  if (analysis == Analysis::kBoth) throw ConfigError("statistic: pick direct or quasi-pure");
  static const std::vector<std::string> known{"c2_ab", "c2_ae", "c2_be", "tau", "invariant_e0", "f_w",
                                              "f_ghz", "d3", "tqd", "purity", "mu_max"};
  if (std::find(known.begin(), known.end(), name) == known.end()) {
    throw ConfigError("statistic: unknown field '" + name + "'");
  }
  const bool needs_discord = name == "d3" || name == "tqd";
  return [name, analysis, discord, needs_discord](const DensityMatrix& rho) {
    const CorrelationRecord r = analyze_state(rho, 0.0, analysis, !needs_discord, discord);
    if (name == "c2_ab") return r.c2_ab;
    if (name == "c2_ae") return r.c2_ae;
    if (name == "c2_be") return r.c2_be;
    if (name == "tau") return r.tau;
    if (name == "invariant_e0") return r.invariant_e0;
    if (name == "f_w") return r.f_w;
    if (name == "f_ghz") return r.f_ghz;
    if (name == "d3") return r.d3;
    if (name == "tqd") return r.tqd;
    if (name == "purity") return r.purity;
    return r.mu_max;
  };
}

std::vector<CorrelationRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<double> grid = effective_grid(config);
  std::vector<Analysis> analyses;
  if (config.analysis == Analysis::kBoth) {
    analyses = {Analysis::kDirect, Analysis::kQuasiPure};
  } else {
    analyses = {config.analysis};
  }

  std::vector<CorrelationRecord> out;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const double p = grid[idx];
    DensityMatrix rho = noisy_state(config, p);
    std::uint64_t mc_seed = 0;
    if (config.tomography) {
      Rng derive = make_stream(config.tomography->seed, idx);
      const std::uint64_t counts_seed = derive();
      mc_seed = derive();
      rho = reconstruct(simulate_counts(rho, config.tomography->n0, counts_seed));
    }
    for (Analysis a : analyses) {
      CorrelationRecord r = analyze_state(rho, p, a, config.skip_discord, config.discord);
      if (config.tomography) {
        std::vector<Statistic> stats;
        for (const char* name : {"c2_ab", "c2_ae", "c2_be", "tau"}) stats.push_back(statistic_by_name(name, a));
        const auto err = monte_carlo_errors(rho, config.tomography->n0, config.tomography->resamples, mc_seed, stats);
        r.c2_ab_err = err[0].std;
        r.c2_ae_err = err[1].std;
        r.c2_be_err = err[2].std;
        r.tau_err = err[3].std;
      }
      out.push_back(r);
    }
  }
  return out;
}

std::string format_csv(const std::vector<CorrelationRecord>& records, const EmitOptions& opts) {
  const bool mixed = std::any_of(records.begin(), records.end(),
                                 [&](const CorrelationRecord& r) { return r.analysis != records.front().analysis; });
  const double entropy_scale = opts.bits ? 1.0 / std::numbers::ln2 : 1.0;
  std::ostringstream os;
  os << std::setprecision(12);
  os << "p,c2_ab,c2_ae,c2_be,tau,tau_err,invariant_e0,f_w,f_ghz,d3,tqd,purity,mu_max";
  if (mixed) os << ",analysis";
  os << '\n';
  for (const auto& r : records) {
    for (double x : {r.p, r.c2_ab, r.c2_ae, r.c2_be, r.tau, r.tau_err, r.invariant_e0, r.f_w, r.f_ghz,
                     r.d3 * entropy_scale, r.tqd * entropy_scale, r.purity}) {
      write_number(os, x);
      os << ',';
    }
    write_number(os, r.mu_max);
    if (mixed) os << ',' << analysis_name(r.analysis);
    os << '\n';
  }
  return os.str();
}

nlohmann::json to_json(const std::vector<CorrelationRecord>& records, const EmitOptions& opts) {
  const double entropy_scale = opts.bits ? 1.0 / std::numbers::ln2 : 1.0;
  auto num = [](double x) -> nlohmann::json {
    if (std::isnan(x)) return nullptr;
    return x;
  };
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : records) {
    out.push_back({{"p", r.p},
                   {"analysis", analysis_name(r.analysis)},
                   {"c2_ab", r.c2_ab},
                   {"c2_ae", r.c2_ae},
                   {"c2_be", r.c2_be},
                   {"tau", r.tau},
                   {"c2_ab_err", num(r.c2_ab_err)},
                   {"c2_ae_err", num(r.c2_ae_err)},
                   {"c2_be_err", num(r.c2_be_err)},
                   {"tau_err", num(r.tau_err)},
                   {"invariant_e0", r.invariant_e0},
                   {"f_w", r.f_w},
                   {"f_ghz", r.f_ghz},
                   {"d3", num(r.d3 * entropy_scale)},
                   {"tqd", num(r.tqd * entropy_scale)},
                   {"purity", r.purity},
                   {"mu_max", r.mu_max},
                   {"entropy_unit", opts.bits ? "bits" : "nats"}});
  }
  return out;
}

void emit_csv(const std::vector<CorrelationRecord>& records, const std::filesystem::path& path,
              const EmitOptions& opts) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << format_csv(records, opts);
}

void emit_json(const std::vector<CorrelationRecord>& records, const std::filesystem::path& path,
               const EmitOptions& opts) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << to_json(records, opts).dump(2) << '\n';
}

std::string gnuplot_script(const std::string& csv_path) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set xlabel 'p'\n"
     << "set xrange [0:1]\n"
     << "plot '" << csv_path << "' using 1:2 with linespoints, \\\n"
     << "     '' using 1:3 with linespoints, \\\n"
     << "     '' using 1:4 with linespoints, \\\n"
     << "     '' using 1:5 with linespoints, \\\n"
     << "     '' using 1:7 with lines\n";
  return os.str();
}

std::vector<NoiseStudyRecord> noise_study(const NoiseStudyConfig& config) {
  if (!finite_in(config.p, 0.0, 1.0)) throw ConfigError("p: must lie in [0, 1]");
  if (!finite_in(config.white, 0.0, 1.0)) throw ConfigError("noise.white: must lie in [0, 1]");
  const DensityMatrix clean = dilate(config.initial, amplitude_damping(ChannelParameter(config.p))).projector();
  std::vector<NoiseStudyRecord> out;
  for (double q : config.q_grid) {
    if (!finite_in(q, 0.0, 0.5)) throw ConfigError("q_grid: values must lie in [0, 1/2]");
    DensityMatrix rho = correlated_be_dephasing(clean, q);
    if (config.white > 0.0) rho = white_noise(rho, config.white);
    const QuasiPure qp = quasi_pure_pipeline(rho);
    out.push_back({q, three_tangle_mixed_estimate(rho), three_tangle_ckw(qp.psi), qp.mu_max, purity(rho)});
  }
  return out;
}

std::string format_noise_csv(const std::vector<NoiseStudyRecord>& records) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "q,tau_mixed,tau_quasi_pure,mu_max,purity\n";
  for (const auto& r : records) {
    os << r.q << ',' << r.tau_mixed << ',' << r.tau_quasi_pure << ',' << r.mu_max << ',' << r.purity << '\n';
  }
  return os.str();
}

std::string analysis_name(Analysis a) {
  switch (a) {
    case Analysis::kDirect: return "direct";
    case Analysis::kQuasiPure: return "quasi-pure";
    case Analysis::kBoth: return "both";
  }
  return "direct";
}

Analysis parse_analysis(const std::string& name) {
  if (name == "direct") return Analysis::kDirect;
  if (name == "quasi-pure" || name == "quasi_pure") return Analysis::kQuasiPure;
  if (name == "both") return Analysis::kBoth;
  throw ConfigError("analysis: expected direct, quasi-pure or both, got '" + name + "'");
}

std::string channel_name(ChannelKind c) {
  switch (c) {
    case ChannelKind::kAd: return "ad";
    case ChannelKind::kPd: return "pd";
    case ChannelKind::kCustom: return "custom";
  }
  return "ad";
}

ChannelKind parse_channel(const std::string& name) {
  if (name == "ad") return ChannelKind::kAd;
  if (name == "pd") return ChannelKind::kPd;
  if (name == "custom") return ChannelKind::kCustom;
  throw ConfigError("channel: expected ad, pd or custom, got '" + name + "'");
}

SweepConfig parse_sweep_config(const nlohmann::json& j) {
  SweepConfig c;
  try {
    if (j.contains("channel")) c.channel = parse_channel(j.at("channel").get<std::string>());
    if (c.channel == ChannelKind::kAd) c.initial = InitialState(0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0);
    if (j.contains("initial")) {
      const auto& in = j.at("initial");
      auto amp = [&](const char* key) { return in.contains(key) ? complex_from_json(in.at(key), std::string("initial.") + key) : cplx(0.0); };
      c.initial = InitialState(amp("alpha"), amp("beta"), amp("gamma"), amp("delta"));
    }
    if (c.channel == ChannelKind::kCustom) {
      if (!j.contains("kraus")) throw ConfigError("kraus: custom channel needs eight complex Kraus entries");
      const auto& k = j.at("kraus");
      if (!k.is_array() || k.size() != 8) throw ConfigError("kraus: expected eight [re, im] entries");
      KrausPair pair;
      for (int i = 0; i < 4; ++i) {
        pair.k0(i / 2, i % 2) = complex_from_json(k[static_cast<std::size_t>(i)], "kraus");
        pair.k1(i / 2, i % 2) = complex_from_json(k[static_cast<std::size_t>(i + 4)], "kraus");
      }
      c.custom = pair;
      c.custom_p = j.value("p", 0.0);
    } else if (j.contains("p")) {
      c.p_grid = {j.at("p").get<double>()};
    }
    if (j.contains("p_grid")) c.p_grid = j.at("p_grid").get<std::vector<double>>();
    if (j.contains("p_steps")) c.p_grid = default_p_grid(j.at("p_steps").get<int>());
    if (j.contains("noise")) {
      c.noise.white = j.at("noise").value("white", 0.0);
      c.noise.correlated = j.at("noise").value("correlated", 0.0);
    }
    if (j.contains("tomography")) {
      TomographyConfig t;
      const auto& tj = j.at("tomography");
      t.n0 = tj.value("n0", t.n0);
      t.resamples = tj.value("resamples", t.resamples);
      t.seed = tj.value("seed", t.seed);
      c.tomography = t;
    }
    if (j.contains("analysis")) c.analysis = parse_analysis(j.at("analysis").get<std::string>());
    c.skip_discord = j.value("skip_discord", false);
    if (j.contains("discord")) {
      const auto& dj = j.at("discord");
      c.discord.grid = dj.value("grid", c.discord.grid);
      c.discord.refine_tol = dj.value("refine_tol", c.discord.refine_tol);
      const std::string orient = dj.value("orientations", std::string("both"));
      if (orient == "both") {
        c.discord.orientations = Orientations::kBoth;
      } else if (orient == "first") {
        c.discord.orientations = Orientations::kFirst;
      } else {
        throw ConfigError("discord.orientations: expected both or first");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

DiscordReport discord_report_bits(DiscordReport r) {
  const double s = 1.0 / std::numbers::ln2;
  for (double* x : {&r.total_information, &r.classical, &r.total_discord, &r.bipartite, &r.genuine,
                    &r.max_mutual_information, &r.max_pair_classical, &r.max_pair_discord}) {
    *x *= s;
  }
  return r;
}

nlohmann::json to_json(const DiscordReport& r) {
  auto angles = [](const ProjectivePair& pp) { return nlohmann::json{{"theta", pp.theta}, {"phi", pp.phi}}; };
  return {{"total_information", r.total_information},
          {"classical", r.classical},
          {"total_discord", r.total_discord},
          {"bipartite", r.bipartite},
          {"genuine", r.genuine},
          {"max_mutual_information", r.max_mutual_information},
          {"mutual_information_pair", r.mutual_information_pair},
          {"max_pair_classical", r.max_pair_classical},
          {"classical_pair", r.classical_pair},
          {"max_pair_discord", r.max_pair_discord},
          {"discord_pair", r.discord_pair},
          {"permutation", {party_name(r.permutation[0]), party_name(r.permutation[1]), party_name(r.permutation[2])}},
          {"best_single", angles(r.best_single)},
          {"best_pair", {angles(r.best_pair_first), angles(r.best_pair_second)}},
          {"refinement_iterations", r.refinement_iterations}};
}

}  // namespace qcorr
