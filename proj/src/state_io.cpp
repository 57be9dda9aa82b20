#include "qcorr/state_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

void write_header(std::ostream& os, const char* kind, const Dims& dims) {
  os << "{\n  \"kind\": \"" << kind << "\",\n  \"dims\": [";
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? ", " : "") << dims[i];
  os << "],\n  \"entries\": [";
}

void write_entry(std::ostream& os, cplx z, bool first) {
  os << (first ? "\n    [" : ",\n    [") << z.real() << ", " << z.imag() << "]";
}

}  // namespace

std::string format_state(const StateVector& psi) {
  std::ostringstream os;
  os << std::setprecision(17);
  write_header(os, "state_vector", psi.dims());
  for (std::size_t i = 0; i < psi.size(); ++i) write_entry(os, psi[i], i == 0);
  os << "\n  ]\n}\n";
  return os.str();
}

std::string format_state(const DensityMatrix& rho) {
  std::ostringstream os;
  os << std::setprecision(17);
  write_header(os, "density_matrix", rho.dims());
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    for (std::size_t c = 0; c < rho.dim(); ++c) write_entry(os, rho(r, c), r == 0 && c == 0);
  }
  os << "\n  ]\n}\n";
  return os.str();
}

AnyState parse_state(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("state file: ") + e.what());
  }
  try {
    const auto kind = j.at("kind").get<std::string>();
    const auto dims = j.at("dims").get<Dims>();
    const auto& entries = j.at("entries");
    std::vector<cplx> values;
    values.reserve(entries.size());
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("state file: entries must be [re, im] pairs");
      values.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    const std::size_t n = total_dim(dims);
    if (kind == "state_vector") {
      if (values.size() != n) throw ConfigError("state file: expected " + std::to_string(n) + " entries");
      Vector v(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = values[i];
      return StateVector(dims, std::move(v));
    }
    if (kind == "density_matrix") {
      if (values.size() != n * n) throw ConfigError("state file: expected " + std::to_string(n * n) + " entries");
      Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * n + c];
        }
      }
      return DensityMatrix(dims, std::move(m));
    }
    throw ConfigError("state file: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("state file: ") + e.what());
  }
}

void write_state(const std::filesystem::path& path, const StateVector& psi) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << format_state(psi);
}

void write_state(const std::filesystem::path& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << format_state(rho);
}

AnyState read_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

DensityMatrix as_density_matrix(const AnyState& state) {
  if (const auto* psi = std::get_if<StateVector>(&state)) return psi->projector();
  return std::get<DensityMatrix>(state);
}

}  // namespace qcorr
