#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmdyn/field.hpp"
#include "tmdyn/nda.hpp"

namespace tmdyn {

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// Compiled-NDA artifact: JSON with a fixed key order, the coding table first,
/// then one record per branch. Rationals are "num/den" strings.
std::string write_nda_artifact(const NdaMachine& nda);
/// Throws FormatError.
NdaMachine read_nda_artifact(const std::string& text);

/// step,x_lo,x_hi,y_lo,y_hi,cell,halted. `cell` is the branch index, -1 in
/// the terminated region; `halted` is 1 on the row where the run stopped.
std::string write_macro_csv(const MacroTrajectory& run);

struct MacroRow {
  std::size_t step = 0;
  Rect rect;
  long cell = -1;
  bool halted = false;
};

std::vector<MacroRow> read_macro_csv(const std::string& text);

/// step,x,y,cell,halted with rational coordinates.
std::string write_point_csv(const PointTrajectory& run);

/// iy,ix,mass in flat index order (k = iy * n + ix).
template <class T>
std::string write_density_csv(const GridDensity<T>& u);

/// Binary 8-bit PGM scaled to the largest mass; the top image row is the
/// highest y.
std::string write_density_pgm(const FloatDensity& u);

/// `target source value` lines sorted by (target, source).
template <class T>
std::string write_transfer_coo(const TransferMatrix<T>& m);

}  // namespace tmdyn
