#pragma once

#include <stdexcept>
#include <string>

namespace wecfarm {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// CSV/config structure problems (missing column, bad row, ...).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-year probability mass does not sum to one.
struct NormalizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateBinError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Infeasible or inconsistent body geometry (overlap, draft >= depth, ...).
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear-system or iteration failure in a hydrodynamic or motion solve.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A climate bin is not covered by the power-matrix grid.
struct CoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wecfarm
