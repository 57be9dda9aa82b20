#include "qcorr/discord.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qcorr/entanglement.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/simplex.hpp"

namespace qcorr {

namespace {

using Matrix2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

constexpr double kPi = std::numbers::pi;
constexpr double kOutcomeFloor = 1e-12;
constexpr double kTieTol = 1e-10;

void require_two_qubits(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw ConfigError("expected a two-qubit state");
}

void require_abe(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2, 2}) throw ConfigError("expected a three-qubit A,B,E state");
}

// p S(sigma / p) for an unnormalized 2x2 conditional state with p = Tr sigma.
double weighted_entropy(const Matrix2& s) {
  const double t = s(0, 0).real() + s(1, 1).real();
  if (t < kOutcomeFloor) return 0.0;
  const double half_gap = 0.5 * (s(0, 0).real() - s(1, 1).real());
  const double disc = std::sqrt(half_gap * half_gap + std::norm(s(0, 1)));
  double out = 0.0;
  for (double lambda : {0.5 * t + disc, 0.5 * t - disc}) {
    if (lambda > 0.0) out -= lambda * std::log(lambda / t);
  }
  return std::max(out, 0.0);
}

// Reorders qubits so that new position s holds old qubit order[s].
Matrix permute_qubits(const Matrix& rho, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<Eigen::Index> old_index(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index o = 0;
    for (int s = 0; s < n; ++s) {
      const Eigen::Index bit = (i >> (n - 1 - s)) & 1;
      o |= bit << (n - 1 - order[static_cast<std::size_t>(s)]);
    }
    old_index[static_cast<std::size_t>(i)] = o;
  }
  Matrix out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      out(i, j) = rho(old_index[static_cast<std::size_t>(i)], old_index[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

// Sum_ab conj(u_a) u_b blocks[a][b].
Matrix2 contract(const std::array<std::array<Matrix2, 2>, 2>& blocks, const Vec2& u) {
  Matrix2 out = Matrix2::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) out += (std::conj(u(a)) * u(b)) * blocks[a][b];
  }
  return out;
}

struct Grid {
  std::vector<ProjectivePair> pairs;
  std::vector<Vec2> vectors;
  double theta_step;
  double phi_step;

  explicit Grid(int n) {
    if (n < 2) throw ConfigError("discord grid needs at least 2 points per angle");
    theta_step = kPi / (n - 1);
    phi_step = 2.0 * kPi / n;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        ProjectivePair pp{a * theta_step, b * phi_step};
        pairs.push_back(pp);
        vectors.push_back(pp.plus_vector());
      }
    }
  }
};

// Keeps the k lowest (value, index) entries seen so far.
class BestCells {
 public:
  explicit BestCells(int k) : k_(static_cast<std::size_t>(std::max(k, 1))) {}

  void offer(double value, std::size_t index) {
    if (cells_.size() == k_ && value >= cells_.back().first) return;
    auto pos = std::upper_bound(cells_.begin(), cells_.end(), std::make_pair(value, index));
    cells_.insert(pos, {value, index});
    if (cells_.size() > k_) cells_.pop_back();
  }

  const std::vector<std::pair<double, std::size_t>>& cells() const { return cells_; }

 private:
  std::size_t k_;
  std::vector<std::pair<double, std::size_t>> cells_;
};

// Conditional entropy of qubit 1 after measuring qubit 0 of a 4x4 matrix.
class SingleObjective {
 public:
  explicit SingleObjective(const Matrix& rho) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) blocks_[a][b] = rho.block<2, 2>(2 * a, 2 * b);
    }
    target_ = blocks_[0][0] + blocks_[1][1];
  }

  double operator()(const Vec2& u) const {
    const Matrix2 plus = contract(blocks_, u);
    return weighted_entropy(plus) + weighted_entropy(target_ - plus);
  }

 private:
  std::array<std::array<Matrix2, 2>, 2> blocks_;
  Matrix2 target_;
};

// Conditional entropy of qubit 2 after measuring qubits 0 and 1 of an 8x8 matrix.
class PairObjective {
 public:
  explicit PairObjective(const Matrix& rho) {
    for (int r = 0; r < 4; ++r) {
      for (int s = 0; s < 4; ++s) blocks_[r][s] = rho.block<2, 2>(2 * r, 2 * s);
    }
    for (int a = 0; a < 2; ++a) {
      for (int c = 0; c < 2; ++c) only_first_[a][c] = blocks_[2 * a][2 * c] + blocks_[2 * a + 1][2 * c + 1];
    }
    target_ = only_first_[0][0] + only_first_[1][1];
  }

  // Qubit-0 blocks after contracting qubit 1 with v.
  std::array<std::array<Matrix2, 2>, 2> second_contracted(const Vec2& v) const {
    std::array<std::array<Matrix2, 2>, 2> out;
    for (int a = 0; a < 2; ++a) {
      for (int c = 0; c < 2; ++c) {
        Matrix2 acc = Matrix2::Zero();
        for (int x = 0; x < 2; ++x) {
          for (int y = 0; y < 2; ++y) acc += (std::conj(v(x)) * v(y)) * blocks_[2 * a + x][2 * c + y];
        }
        out[a][c] = acc;
      }
    }
    return out;
  }

  Matrix2 first_only(const Vec2& u) const { return contract(only_first_, u); }

  double evaluate(const Vec2& u, const std::array<std::array<Matrix2, 2>, 2>& v_blocks,
                  const Matrix2& first_plus) const {
    const Matrix2 pp = contract(v_blocks, u);
    const Matrix2 second_plus = v_blocks[0][0] + v_blocks[1][1];
    return weighted_entropy(pp) + weighted_entropy(first_plus - pp) + weighted_entropy(second_plus - pp) +
           weighted_entropy(target_ - first_plus - second_plus + pp);
  }

  double operator()(const Vec2& u, const Vec2& v) const {
    return evaluate(u, second_contracted(v), first_only(u));
  }

 private:
  std::array<std::array<Matrix2, 4>, 4> blocks_;
  std::array<std::array<Matrix2, 2>, 2> only_first_;
  Matrix2 target_;
};

Vec2 bloch_vector(double theta, double phi) {
  return Vec2(std::cos(0.5 * theta), std::polar(1.0, phi) * std::sin(0.5 * theta));
}

ConditionalEntropy minimize_single(const Matrix& reordered, const DiscordOptions& opts) {
  const SingleObjective objective(reordered);
  const Grid grid(opts.grid);
  BestCells best(opts.refine_starts);
  for (std::size_t i = 0; i < grid.pairs.size(); ++i) best.offer(objective(grid.vectors[i]), i);

  ConditionalEntropy result{best.cells().front().first, grid.pairs[best.cells().front().second], 0};
  const auto f = [&](const std::vector<double>& x) { return objective(bloch_vector(x[0], x[1])); };
  for (const auto& [value, index] : best.cells()) {
    const ProjectivePair& start = grid.pairs[index];
    const auto run = nelder_mead(f, {start.theta, start.phi}, {0.5 * grid.theta_step, 0.5 * grid.phi_step},
                                 {opts.refine_tol, opts.max_iterations});
    result.iterations += run.iterations;
    if (run.value < result.value) {
      result.value = run.value;
      result.best = ProjectivePair{run.x[0], run.x[1]}.canonical();
    }
  }
  return result;
}

// S(j|i) for every ordered pair, plus S(k|ij) for every target k.
struct ConditionalTable {
  std::array<std::array<ConditionalEntropy, 3>, 3> one{};  // [measured][target]
  std::array<ConditionalEntropyTwo, 3> two{};               // [target]
  std::array<double, 3> marginal{};                        // S(rho_i)
  std::array<std::array<double, 3>, 3> pair_entropy{};     // S(rho_ij)
  int iterations = 0;
};

ConditionalTable build_table(const DensityMatrix& rho, const DiscordOptions& opts) {
  ConditionalTable t;
  for (int i = 0; i < 3; ++i) t.marginal[static_cast<std::size_t>(i)] = von_neumann_entropy(partial_trace(rho, {i}));
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const DensityMatrix rij = partial_trace(rho, {i, j});
      const double s = von_neumann_entropy(rij);
      t.pair_entropy[i][j] = t.pair_entropy[j][i] = s;
      t.one[i][j] = conditional_entropy_one(rij, Side::kFirst, opts);
      t.one[j][i] = conditional_entropy_one(rij, Side::kSecond, opts);
      t.iterations += t.one[i][j].iterations + t.one[j][i].iterations;
    }
  }
  for (int k = 0; k < 3; ++k) {
    const int i = (k == 0) ? 1 : 0;
    const int j = (k == 2) ? 1 : 2;
    t.two[static_cast<std::size_t>(k)] = conditional_entropy_two(rho, i, j, opts);
    t.iterations += t.two[static_cast<std::size_t>(k)].iterations;
  }
  return t;
}

constexpr std::array<std::array<int, 3>, 6> kPermutations{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

ClassicalCorrelation classical_from_table(const ConditionalTable& t) {
  ClassicalCorrelation best{-std::numeric_limits<double>::infinity(), kPermutations[0]};
  for (const auto& perm : kPermutations) {
    const auto [i, j, k] = perm;
    const double value = t.marginal[j] - t.one[i][j].value + t.marginal[k] - t.two[k].value;
    if (value > best.value + kTieTol) best = {value, perm};
  }
  return best;
}

double total_information_from(const DensityMatrix& rho, const ConditionalTable& t) {
  return t.marginal[0] + t.marginal[1] + t.marginal[2] - von_neumann_entropy(rho);
}

}  // namespace

// ---------------------------------------------------------------------------

Eigen::Vector2cd ProjectivePair::plus_vector() const { return bloch_vector(theta, phi); }

Eigen::Matrix2cd ProjectivePair::plus() const {
  const Vec2 u = plus_vector();
  return u * u.adjoint();
}

Eigen::Matrix2cd ProjectivePair::minus() const { return Matrix2::Identity() - plus(); }

ProjectivePair ProjectivePair::canonical() const {
  const double x = std::sin(theta) * std::cos(phi);
  const double y = std::sin(theta) * std::sin(phi);
  const double z = std::cos(theta);
  double ph = std::atan2(y, x);
  if (ph < 0.0) ph += 2.0 * kPi;
  if (ph >= 2.0 * kPi) ph = 0.0;
  return {std::acos(std::clamp(z, -1.0, 1.0)), ph};
}

std::string party_name(int party) {
  static const char* names[] = {"A", "B", "E"};
  if (party < 0 || party > 2) throw ConfigError("party index out of range");
  return names[party];
}

ConditionalEntropy conditional_entropy_one(const DensityMatrix& rho_ij, Side measured, const DiscordOptions& opts) {
  require_two_qubits(rho_ij);
  const Matrix reordered = measured == Side::kFirst ? rho_ij.matrix() : permute_qubits(rho_ij.matrix(), {1, 0});
  return minimize_single(reordered, opts);
}

ConditionalEntropyTwo conditional_entropy_two(const DensityMatrix& rho, int measured_a, int measured_b,
                                              const DiscordOptions& opts) {
  require_abe(rho);
  if (measured_a < 0 || measured_a > 2 || measured_b < 0 || measured_b > 2 || measured_a == measured_b) {
    throw ConfigError("conditional_entropy_two: need two distinct measured parties");
  }
  const int lo = std::min(measured_a, measured_b);
  const int hi = std::max(measured_a, measured_b);
  const int target = 3 - lo - hi;
  const PairObjective objective(permute_qubits(rho.matrix(), {lo, hi, target}));
  const Grid grid(opts.grid);
  const std::size_t cells = grid.pairs.size();

  std::vector<Matrix2> first_plus(cells);
  for (std::size_t i = 0; i < cells; ++i) first_plus[i] = objective.first_only(grid.vectors[i]);

  BestCells best(opts.refine_starts);
  for (std::size_t jv = 0; jv < cells; ++jv) {
    const auto v_blocks = objective.second_contracted(grid.vectors[jv]);
    for (std::size_t iu = 0; iu < cells; ++iu) {
      best.offer(objective.evaluate(grid.vectors[iu], v_blocks, first_plus[iu]), iu * cells + jv);
    }
  }

  const auto& top = best.cells().front();
  ConditionalEntropyTwo result{top.first, grid.pairs[top.second / cells], grid.pairs[top.second % cells], 0};
  const auto f = [&](const std::vector<double>& x) {
    return objective(bloch_vector(x[0], x[1]), bloch_vector(x[2], x[3]));
  };
  for (const auto& [value, index] : best.cells()) {
    const ProjectivePair& u = grid.pairs[index / cells];
    const ProjectivePair& v = grid.pairs[index % cells];
    const double ts = 0.5 * grid.theta_step;
    const double ps = 0.5 * grid.phi_step;
    const auto run = nelder_mead(f, {u.theta, u.phi, v.theta, v.phi}, {ts, ps, ts, ps},
                                 {opts.refine_tol, opts.max_iterations});
    result.iterations += run.iterations;
    if (run.value < result.value) {
      result.value = run.value;
      result.first = ProjectivePair{run.x[0], run.x[1]}.canonical();
      result.second = ProjectivePair{run.x[2], run.x[3]}.canonical();
    }
  }
  return result;
}

double total_information(const DensityMatrix& rho) {
  require_abe(rho);
  double t = -von_neumann_entropy(rho);
  for (int i = 0; i < 3; ++i) t += von_neumann_entropy(partial_trace(rho, {i}));
  return t;
}

ClassicalCorrelation classical_correlation(const DensityMatrix& rho, const DiscordOptions& opts) {
  require_abe(rho);
  return classical_from_table(build_table(rho, opts));
}

double total_discord(const DensityMatrix& rho, const DiscordOptions& opts) {
  require_abe(rho);
  const ConditionalTable t = build_table(rho, opts);
  return total_information_from(rho, t) - classical_from_table(t).value;
}

double bipartite_discord(const DensityMatrix& rho_ij, Side measured, const DiscordOptions& opts) {
  require_two_qubits(rho_ij);
  const int measured_index = static_cast<int>(measured);
  const double s_measured = von_neumann_entropy(partial_trace(rho_ij, {measured_index}));
  return s_measured - von_neumann_entropy(rho_ij) + conditional_entropy_one(rho_ij, measured, opts).value;
}

DiscordReport genuine_discord(const DensityMatrix& rho, const DiscordOptions& opts) {
  require_abe(rho);
  const ConditionalTable t = build_table(rho, opts);
  DiscordReport r;
  r.total_information = total_information_from(rho, t);
  const ClassicalCorrelation j = classical_from_table(t);
  r.classical = j.value;
  r.total_discord = r.total_information - r.classical;
  r.permutation = j.permutation;
  r.best_single = t.one[j.permutation[0]][j.permutation[1]].best;
  r.best_pair_first = t.two[j.permutation[2]].first;
  r.best_pair_second = t.two[j.permutation[2]].second;
  r.refinement_iterations = t.iterations;

  r.max_mutual_information = -std::numeric_limits<double>::infinity();
  r.max_pair_classical = -std::numeric_limits<double>::infinity();
  r.max_pair_discord = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    for (int k = i + 1; k < 3; ++k) {
      const double mutual = t.marginal[i] + t.marginal[k] - t.pair_entropy[i][k];
      if (mutual > r.max_mutual_information + kTieTol) {
        r.max_mutual_information = mutual;
        r.mutual_information_pair = party_name(i) + party_name(k);
      }
      // Orientation (m measured, o observed).
      for (const auto& [m, o] : {std::pair{i, k}, std::pair{k, i}}) {
        if (opts.orientations == Orientations::kFirst && m != i) continue;
        const double classical = t.marginal[o] - t.one[m][o].value;
        const double discord = mutual - classical;
        const std::string label = party_name(m) + "->" + party_name(o);
        if (classical > r.max_pair_classical + kTieTol) {
          r.max_pair_classical = classical;
          r.classical_pair = label;
        }
        if (discord > r.max_pair_discord + kTieTol) {
          r.max_pair_discord = discord;
          r.discord_pair = label;
        }
      }
    }
  }
  r.bipartite = r.max_mutual_information - r.max_pair_classical;
  r.genuine = r.total_discord - r.bipartite;
  return r;
}

PureGenuineDiscord pure_genuine_discord(const StateVector& psi) {
  if (psi.dims() != Dims{2, 2, 2}) throw ConfigError("expected a three-qubit A,B,E state");
  const DensityMatrix rho = psi.projector();
  std::array<double, 3> s{};
  for (int i = 0; i < 3; ++i) s[static_cast<std::size_t>(i)] = von_neumann_entropy(partial_trace(rho, {i}));
  const double lowest = *std::min_element(s.begin(), s.end());
  PureGenuineDiscord out{lowest, -1, false};
  for (int i = 0; i < 3; ++i) {
    if (s[static_cast<std::size_t>(i)] > lowest + 1e-12) continue;
    if (out.argmin < 0) {
      out.argmin = i;
      out.value = s[static_cast<std::size_t>(i)];
    } else {
      out.tie = true;
    }
  }
  return out;
}

MonogamyCheck discord_entanglement_monogamy_check(const StateVector& psi) {
  if (three_tangle_ckw(psi) >= 1e-6) {
    throw ConfigError("monogamy check requires a W-class state (3-tangle below 1e-6)");
  }
  const TangleSet t = tangle_set(psi);
  const std::array<double, 3> one_vs_rest{tangle_one_vs_rest(psi, kA), tangle_one_vs_rest(psi, kB),
                                          tangle_one_vs_rest(psi, kE)};
  const std::array<double, 3> pair_sums{t.c2_ab + t.c2_ae, t.c2_ab + t.c2_be, t.c2_ae + t.c2_be};
  return {*std::min_element(one_vs_rest.begin(), one_vs_rest.end()),
          *std::min_element(pair_sums.begin(), pair_sums.end())};
}

}  // namespace qcorr
