#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmdyn/geometry.hpp"
#include "tmdyn/goedel.hpp"
#include "tmdyn/gshift.hpp"

namespace tmdyn {

/// nu = (head symbol, state[, next symbol]) of a partition cell.
struct CellIndex {
  Symbol head;
  State state;
  std::optional<Symbol> next;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

struct PartitionCell {
  CellIndex index;
  Rect rect;
};

/// (x, y) ↦ (translation_x + scale_x x, translation_y + scale_y y) on one cell.
struct AffineBranch {
  PartitionCell cell;
  Rational scale_x{1};
  Rational translation_x;
  Rational scale_y{1};
  Rational translation_y;

  Point apply(const Point& p) const;
  /// Image of a rectangle inside the cell. Throws OutOfUnitSquareError.
  Rect image(const Rect& r) const;
  bool is_identity() const;
};

class SingularBranchError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The unique zero of x - (offset + scale x'): x' = (x - offset) / scale.
Rational branch_preimage(const Rational& scale, const Rational& offset, const Rational& x);
Point branch_preimage(const AffineBranch& branch, const Point& p);

class PartitionConsistencyError : public std::runtime_error {
 public:
  explicit PartitionConsistencyError(const std::string& message, std::optional<std::size_t> step = std::nullopt);

  /// Trajectory step at which the violation occurred, when known.
  std::optional<std::size_t> step() const { return step_; }

 private:
  std::optional<std::size_t> step_;
};

/// Piecewise affine map on the unit square together with its coding. Points
/// outside every cell form the terminated region, where the map is the
/// identity.
class NdaMachine {
 public:
  /// Throws std::invalid_argument for overlapping cells and
  /// OutOfUnitSquareError when a cell's image leaves the unit square.
  NdaMachine(GoedelCoding coding, std::vector<AffineBranch> branches,
             std::shared_ptr<const TuringMachine> source = nullptr);

  const GoedelCoding& coding() const { return coding_; }
  const std::vector<AffineBranch>& branches() const { return branches_; }
  /// Machine the NDA was compiled from; null when loaded from an artifact.
  const std::shared_ptr<const TuringMachine>& source() const { return source_; }

  /// Branch whose cell contains p; nullopt in the terminated region.
  std::optional<std::size_t> locate(const Point& p) const;
  /// Branch whose cell contains r; nullopt when r meets no cell. Throws
  /// PartitionConsistencyError when r is not inside a single cell.
  std::optional<std::size_t> locate(const Rect& r) const;

 private:
  GoedelCoding coding_;
  std::vector<AffineBranch> branches_;
  std::shared_ptr<const TuringMachine> source_;
};

/// Affine branch representing one shift rule: the DoD cylinder rectangle as
/// cell, and the composite of the DoE substitution (a translation) with the
/// dot moves (each one a fixed affine map of the crossing letter).
AffineBranch derive_branch(const GoedelCoding& coding, const ShiftRule& rule);

/// Throws CodingError when the coding does not belong to the machine.
NdaMachine compile_nda(const TuringMachine& m, const GoedelCoding& coding);
NdaMachine compile_nda(std::shared_ptr<const TuringMachine> m, const GoedelCoding& coding);

Point nda_point_step(const NdaMachine& nda, const Point& p);

Rect macrostep(const NdaMachine& nda, const Rect& r);

/// Cells used along a trajectory: entry t is the branch containing state t,
/// nullopt for the terminated region.
struct MacroTrajectory {
  std::vector<Rect> rects;
  std::vector<std::optional<std::size_t>> cells;
  bool halted = false;

  std::size_t steps() const { return rects.size() - 1; }
};

/// Iterates macrostep until t_max or until the rectangle sits in the
/// terminated region or on an identity branch.
MacroTrajectory run_macro(const NdaMachine& nda, const Rect& r0, std::size_t t_max);

struct PointTrajectory {
  std::vector<Point> points;
  std::vector<std::optional<std::size_t>> cells;
  bool halted = false;

  std::size_t steps() const { return points.size() - 1; }
};

PointTrajectory run_points(const NdaMachine& nda, const Point& p0, std::size_t t_max);

std::string format_cell_index(const GoedelCoding& coding, const CellIndex& index);

}  // namespace tmdyn
