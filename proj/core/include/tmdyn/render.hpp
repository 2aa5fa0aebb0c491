#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tmdyn/io.hpp"
#include "tmdyn/nda.hpp"

namespace tmdyn {

class TrajectoryMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RenderOptions {
  int size = 800;    // square side in pixels
  int margin = 40;
};

/// Symbologram: partition cells outlined and labeled (a,q[,a1]), every
/// trajectory row shaded and annotated with its step. Byte-for-byte
/// deterministic. Throws TrajectoryMismatchError when a row's rectangle does
/// not sit in the cell it names.
std::string render_svg(const NdaMachine& nda, const std::vector<MacroRow>& trajectory,
                       const RenderOptions& options = {});

}  // namespace tmdyn
