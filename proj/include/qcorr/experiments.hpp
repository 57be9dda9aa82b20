#pragma once

// Parameter sweeps over the channel strength p, producing one correlation
// record per point, plus the correlated-noise study of the 3-tangle.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcorr/channels.hpp"
#include "qcorr/discord.hpp"
#include "qcorr/tomography.hpp"

namespace qcorr {

enum class ChannelKind { kAd, kPd, kCustom };
enum class Analysis { kDirect, kQuasiPure, kBoth };

struct NoiseConfig {
  double white = 0.0;       // eps of (1 - eps) rho + eps I/8
  double correlated = 0.0;  // q of the joint Z_B Z_E dephasing
};

struct TomographyConfig {
  double n0 = 500.0;
  int resamples = 100;
  std::uint64_t seed = 1;
};

struct SweepConfig {
  ChannelKind channel = ChannelKind::kPd;
  InitialState initial{1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)};
  std::vector<double> p_grid;  // empty -> default_p_grid()
  std::optional<KrausPair> custom;  // required for ChannelKind::kCustom
  double custom_p = 0.0;            // label written for the custom channel's single point
  NoiseConfig noise;
  std::optional<TomographyConfig> tomography;
  Analysis analysis = Analysis::kDirect;
  bool skip_discord = false;
  DiscordOptions discord;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

std::vector<double> default_p_grid(int steps = 21);

struct CorrelationRecord {
  double p = 0.0;
  Analysis analysis = Analysis::kDirect;
  double c2_ab = 0.0, c2_ae = 0.0, c2_be = 0.0, tau = 0.0;
  // Monte Carlo standard deviations; NaN without tomography.
  double c2_ab_err = std::numeric_limits<double>::quiet_NaN();
  double c2_ae_err = std::numeric_limits<double>::quiet_NaN();
  double c2_be_err = std::numeric_limits<double>::quiet_NaN();
  double tau_err = std::numeric_limits<double>::quiet_NaN();
  double invariant_e0 = 0.0;  // c2_ab + tau
  double f_w = 0.0, f_ghz = 0.0;
  // Genuine and total discord in nats; NaN when discord is skipped.
  double d3 = std::numeric_limits<double>::quiet_NaN();
  double tqd = std::numeric_limits<double>::quiet_NaN();
  double purity = 0.0;
  double mu_max = 0.0;
};

// The A,B,E state at channel strength p, before noise.
StateVector sweep_state(const SweepConfig& config, double p);
// With the configured noise applied.
DensityMatrix noisy_state(const SweepConfig& config, double p);

// Measures of one state. Direct uses the mixed-state estimators on rho;
// quasi-pure evaluates the dominant eigenvector of rho with the pure-state
// formulas. purity and mu_max always describe rho itself.
CorrelationRecord analyze_state(const DensityMatrix& rho, double p, Analysis analysis, bool skip_discord,
                                const DiscordOptions& discord = {});

std::vector<CorrelationRecord> run_sweep(const SweepConfig& config);

// Monte Carlo statistic for a record field: c2_ab, c2_ae, c2_be, tau,
// invariant_e0, f_w, f_ghz, d3, tqd, purity, mu_max.
Statistic statistic_by_name(const std::string& name, Analysis analysis,
                            const DiscordOptions& discord = {});

struct EmitOptions {
  bool bits = false;  // report d3 and tqd in bits instead of nats
};

// Header p,c2_ab,c2_ae,c2_be,tau,tau_err,invariant_e0,f_w,f_ghz,d3,tqd,purity,mu_max
// (plus a trailing analysis column when records mix analyses); 12 significant digits.
std::string format_csv(const std::vector<CorrelationRecord>& records, const EmitOptions& opts = {});
nlohmann::json to_json(const std::vector<CorrelationRecord>& records, const EmitOptions& opts = {});
void emit_csv(const std::vector<CorrelationRecord>& records, const std::filesystem::path& path,
              const EmitOptions& opts = {});
void emit_json(const std::vector<CorrelationRecord>& records, const std::filesystem::path& path,
               const EmitOptions& opts = {});

// Gnuplot script plotting the tangle columns of a sweep CSV.
std::string gnuplot_script(const std::string& csv_path);

struct NoiseStudyConfig {
  InitialState initial{0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0};
  double p = 0.5;  // amplitude-damping strength
  std::vector<double> q_grid;
  double white = 0.0;
};

struct NoiseStudyRecord {
  double q;
  double tau_mixed;       // three_tangle_mixed_estimate on the noisy state
  double tau_quasi_pure;  // CKW 3-tangle of its dominant eigenvector
  double mu_max;
  double purity;
};

std::vector<NoiseStudyRecord> noise_study(const NoiseStudyConfig& config);
std::string format_noise_csv(const std::vector<NoiseStudyRecord>& records);

std::string analysis_name(Analysis a);
Analysis parse_analysis(const std::string& name);
std::string channel_name(ChannelKind c);
ChannelKind parse_channel(const std::string& name);

// Sweep configuration from a JSON config file body. Channel keys:
// {"channel": "ad"|"pd"|"custom", "p": x, "kraus": [[re, im] x 8]}
// where "kraus" lists K0 then K1 row-major.
SweepConfig parse_sweep_config(const nlohmann::json& j);

DiscordReport discord_report_bits(DiscordReport report);
nlohmann::json to_json(const DiscordReport& report);

}  // namespace qcorr
