#pragma once

// Textual state files:
//   {"kind": "density_matrix" | "state_vector",
//    "dims": [2, 2, 2],
//    "entries": [[re, im], ...]}   (row-major for density matrices)
// Numbers are written with 17 significant digits.

#include <filesystem>
#include <string>
#include <variant>

#include "qcorr/core.hpp"

namespace qcorr {

using AnyState = std::variant<StateVector, DensityMatrix>;

std::string format_state(const StateVector& psi);
std::string format_state(const DensityMatrix& rho);
AnyState parse_state(const std::string& text);

void write_state(const std::filesystem::path& path, const StateVector& psi);
void write_state(const std::filesystem::path& path, const DensityMatrix& rho);
AnyState read_state(const std::filesystem::path& path);

// Pure states are promoted to their projector.
DensityMatrix as_density_matrix(const AnyState& state);

}  // namespace qcorr
