#include "qcorr/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "qcorr/errors.hpp"
#include "qcorr/random.hpp"

namespace qcorr {

namespace {

using Matrix2 = Eigen::Matrix2cd;

Eigen::Vector2cd projector_ket(Projector p) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (p) {
    case Projector::kP0: return {1.0, 0.0};
    case Projector::kP1: return {0.0, 1.0};
    case Projector::kPlus: return {r, r};
    case Projector::kPlusI: return {cplx(r, 0.0), cplx(0.0, r)};
  }
  throw ConfigError("unknown projector");
}

std::array<Matrix2, 4> paulis() {
  std::array<Matrix2, 4> s;
  s[0] << 1, 0, 0, 1;
  s[1] << 0, 1, 1, 0;
  s[2] << 0, cplx(0, -1), cplx(0, 1), 0;
  s[3] << 1, 0, 0, -1;
  return s;
}

// Design matrix rows = settings, columns = Pauli strings (16 i + 4 j + k):
// Tr(rho Pi_s) = sum_sigma A(s, sigma) Tr(rho sigma).
struct LinearInversion {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> solver;
  std::array<Matrix, kNumSettings> pauli_strings;

  LinearInversion() {
    const auto sig = paulis();
    // weight(l, m) = Tr(Pi_l sigma_m) / 2.
    Eigen::Matrix4d weight;
    for (int l = 0; l < 4; ++l) {
      const Eigen::Vector2cd v = projector_ket(static_cast<Projector>(l));
      for (int m = 0; m < 4; ++m) weight(l, m) = 0.5 * (v.adjoint() * sig[m] * v)(0, 0).real();
    }
    Eigen::MatrixXd design(64, 64);
    for (int s = 0; s < 64; ++s) {
      for (int c = 0; c < 64; ++c) design(s, c) = weight(s / 16, c / 16) * weight((s / 4) % 4, (c / 4) % 4) * weight(s % 4, c % 4);
    }
    solver.compute(design);
    if (solver.rank() != 64) throw NumericalError("tomography design matrix is singular");
    for (int c = 0; c < 64; ++c) {
      Matrix m(8, 8);
      for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
          m(i, j) = sig[c / 16](i >> 2, j >> 2) * sig[(c / 4) % 4]((i >> 1) & 1, (j >> 1) & 1) * sig[c % 4](i & 1, j & 1);
        }
      }
      pauli_strings[static_cast<std::size_t>(c)] = std::move(m);
    }
  }
};

const LinearInversion& inversion() {
  static const LinearInversion inv;
  return inv;
}

std::vector<CountRecord> simulate_with(const DensityMatrix& rho, double n0, Rng& rng) {
  const auto probs = setting_probabilities(rho);
  std::vector<CountRecord> out;
  out.reserve(kNumSettings);
  for (std::size_t s = 0; s < kNumSettings; ++s) {
    const double mean = n0 * std::max(probs[s], 0.0);
    std::uint64_t counts = 0;
    if (mean > 0.0) counts = std::poisson_distribution<std::uint64_t>(mean)(rng);
    out.push_back({TomographySetting::from_index(s), counts, n0});
  }
  return out;
}

}  // namespace

TomographySetting TomographySetting::from_index(std::size_t index) {
  if (index >= kNumSettings) throw ConfigError("setting index out of range");
  return {{static_cast<Projector>(index / 16), static_cast<Projector>((index / 4) % 4),
           static_cast<Projector>(index % 4)}};
}

std::size_t TomographySetting::index() const {
  return 16 * static_cast<std::size_t>(labels[0]) + 4 * static_cast<std::size_t>(labels[1]) +
         static_cast<std::size_t>(labels[2]);
}

Vector TomographySetting::projector_state() const {
  const Eigen::Vector2cd a = projector_ket(labels[0]);
  const Eigen::Vector2cd b = projector_ket(labels[1]);
  const Eigen::Vector2cd e = projector_ket(labels[2]);
  Vector out(8);
  for (int i = 0; i < 8; ++i) out(i) = a(i >> 2) * b((i >> 1) & 1) * e(i & 1);
  return out;
}

std::string projector_label(Projector p) {
  switch (p) {
    case Projector::kP0: return "Z0";
    case Projector::kP1: return "Z1";
    case Projector::kPlus: return "X0";
    case Projector::kPlusI: return "Y0";
  }
  throw ConfigError("unknown projector");
}

Projector parse_projector_label(const std::string& label) {
  if (label == "Z0") return Projector::kP0;
  if (label == "Z1") return Projector::kP1;
  if (label == "X0") return Projector::kPlus;
  if (label == "Y0") return Projector::kPlusI;
  throw ConfigError("unknown setting label '" + label + "' (expected Z0, Z1, X0 or Y0)");
}

std::array<TomographySetting, kNumSettings> full_design() {
  std::array<TomographySetting, kNumSettings> out;
  for (std::size_t s = 0; s < kNumSettings; ++s) out[s] = TomographySetting::from_index(s);
  return out;
}

std::array<double, kNumSettings> setting_probabilities(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2, 2}) throw ConfigError("tomography expects a three-qubit state");
  std::array<double, kNumSettings> out{};
  for (std::size_t s = 0; s < kNumSettings; ++s) {
    const Vector v = TomographySetting::from_index(s).projector_state();
    out[s] = v.dot(rho.matrix() * v).real();
  }
  return out;
}

std::vector<CountRecord> simulate_counts(const DensityMatrix& rho, double n0, std::uint64_t seed) {
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw ConfigError("N0 must be positive");
  Rng rng = make_stream(seed, 0);
  return simulate_with(rho, n0, rng);
}

DensityMatrix reconstruct_from_frequencies(const std::array<double, kNumSettings>& frequencies) {
  const LinearInversion& inv = inversion();
  const Eigen::Map<const Eigen::VectorXd> p(frequencies.data(), static_cast<Eigen::Index>(kNumSettings));
  const Eigen::VectorXd expectations = inv.solver.solve(p);

  Matrix raw = Matrix::Zero(8, 8);
  for (std::size_t c = 0; c < kNumSettings; ++c) raw += expectations(static_cast<Eigen::Index>(c)) * inv.pauli_strings[c];
  raw /= 8.0;
  raw = 0.5 * (raw + raw.adjoint());

  Eigen::SelfAdjointEigenSolver<Matrix> es(raw);
  Eigen::VectorXd mu = es.eigenvalues().cwiseMax(0.0);
  const double total = mu.sum();
  if (!(total > 0.0)) throw NumericalError("reconstruction has no positive spectral weight");
  mu /= total;
  Matrix rho = es.eigenvectors() * mu.asDiagonal() * es.eigenvectors().adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix::unchecked({2, 2, 2}, std::move(rho));
}

DensityMatrix reconstruct(const std::vector<CountRecord>& records) {
  std::array<double, kNumSettings> freq{};
  std::array<bool, kNumSettings> seen{};
  for (const auto& r : records) {
    const std::size_t s = r.setting.index();
    if (seen[s]) throw ConfigError("duplicate tomography setting " + std::to_string(s));
    if (!(r.n0 > 0.0)) throw ConfigError("N0 must be positive");
    seen[s] = true;
    freq[s] = static_cast<double>(r.counts) / r.n0;
  }
  const auto missing = std::count(seen.begin(), seen.end(), false);
  if (missing > 0) throw ConfigError(std::to_string(missing) + " tomography settings missing");
  return reconstruct_from_frequencies(freq);
}

MonteCarloEstimate monte_carlo_errors(const DensityMatrix& rho_hat, double n0, int resamples, std::uint64_t seed,
                                      const Statistic& statistic) {
  return monte_carlo_errors(rho_hat, n0, resamples, seed, std::vector<Statistic>{statistic}).front();
}

std::vector<MonteCarloEstimate> monte_carlo_errors(const DensityMatrix& rho_hat, double n0, int resamples,
                                                   std::uint64_t seed, const std::vector<Statistic>& statistics) {
  if (resamples < 2) throw ConfigError("Monte Carlo needs at least 2 resamples");
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw ConfigError("N0 must be positive");
  const std::size_t k = statistics.size();
  std::vector<std::vector<double>> samples(k, std::vector<double>(static_cast<std::size_t>(resamples)));
  for (int m = 0; m < resamples; ++m) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(m) + 1);
    const DensityMatrix rho = reconstruct(simulate_with(rho_hat, n0, rng));
    for (std::size_t s = 0; s < k; ++s) samples[s][static_cast<std::size_t>(m)] = statistics[s](rho);
  }
  std::vector<MonteCarloEstimate> out(k);
  for (std::size_t s = 0; s < k; ++s) {
    const auto& xs = samples[s];
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(resamples);
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    out[s] = {mean, std::sqrt(var / static_cast<double>(resamples - 1))};
  }
  return out;
}

QuasiPure quasi_pure_pipeline(const DensityMatrix& rho_hat) {
  const DominantEigenvector d = dominant_eigenvector(rho_hat);
  return {d.state, d.eigenvalue, d.degenerate};
}

std::string format_counts(const std::vector<CountRecord>& records) {
  std::ostringstream os;
  os.precision(17);
  os << "setting_a,setting_b,setting_e,counts,N0\n";
  for (const auto& r : records) {
    os << projector_label(r.setting.labels[0]) << ',' << projector_label(r.setting.labels[1]) << ','
       << projector_label(r.setting.labels[2]) << ',' << r.counts << ',' << r.n0 << '\n';
  }
  return os.str();
}

std::vector<CountRecord> parse_counts(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("counts file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "setting_a,setting_b,setting_e,counts,N0") throw ConfigError("counts file: unexpected header '" + line + "'");
  std::vector<CountRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 5) throw ConfigError("counts file line " + std::to_string(line_no) + ": expected 5 fields");
    CountRecord r;
    for (int q = 0; q < 3; ++q) r.setting.labels[static_cast<std::size_t>(q)] = parse_projector_label(fields[static_cast<std::size_t>(q)]);
    try {
      std::size_t used = 0;
      const long long c = std::stoll(fields[3], &used);
      if (used != fields[3].size() || c < 0) throw std::invalid_argument("counts");
      r.counts = static_cast<std::uint64_t>(c);
      r.n0 = std::stod(fields[4], &used);
      if (used != fields[4].size()) throw std::invalid_argument("N0");
    } catch (const std::exception&) {
      throw ConfigError("counts file line " + std::to_string(line_no) + ": bad counts or N0");
    }
    out.push_back(r);
  }
  return out;
}

void write_counts(const std::filesystem::path& path, const std::vector<CountRecord>& records) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << format_counts(records);
}

std::vector<CountRecord> read_counts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_counts(buf.str());
}

}  // namespace qcorr
