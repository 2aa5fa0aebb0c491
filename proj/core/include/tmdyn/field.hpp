#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "tmdyn/geometry.hpp"
#include "tmdyn/nda.hpp"

namespace tmdyn {

enum class ArithmeticMode { Exact, Float };

std::string to_string(ArithmeticMode mode);

/// n × n tiling of the unit square; cell (i, j) = [i/n,(i+1)/n) × [j/n,(j+1)/n).
/// Flat index is row-major with y as the row: k = j * n + i.
class Grid {
 public:
  explicit Grid(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t size() const { return n_ * n_; }
  std::size_t index(std::size_t i, std::size_t j) const { return j * n_ + i; }
  Rect cell(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_;
};

/// Probability mass per grid cell.
template <class T>
struct GridDensity {
  std::size_t n = 0;
  std::vector<T> mass;

  T total() const;
};

using ExactDensity = GridDensity<Rational>;
using FloatDensity = GridDensity<double>;

class DimensionMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ulam discretization of the Frobenius–Perron operator: entry
/// (target, source) is the fraction of the source cell's area that the NDA
/// maps into the target cell. Column-stochastic; stored by column.
template <class T>
class TransferMatrix {
 public:
  struct Entry {
    std::uint32_t target;
    T value;
  };

  TransferMatrix(std::size_t n, std::vector<std::vector<Entry>> columns);

  std::size_t n() const { return n_; }
  std::size_t size() const { return n_ * n_; }
  const std::vector<Entry>& column(std::size_t source) const { return columns_.at(source); }
  T column_sum(std::size_t source) const;
  std::size_t nonzeros() const;
  std::size_t max_column_nonzeros() const;

  /// (target, source, value) sorted lexicographically.
  std::vector<std::tuple<std::uint32_t, std::uint32_t, T>> triplets() const;

 private:
  std::size_t n_;
  std::vector<std::vector<Entry>> columns_;
};

/// Cell geometry is intersected and mapped exactly; entries are then stored
/// in T. Source cells are split across `threads` workers (0 = hardware
/// concurrency). The result does not depend on the thread count.
template <class T>
TransferMatrix<T> build_transfer(const NdaMachine& nda, std::size_t n, unsigned threads = 0);

/// u' = M u.
template <class T>
GridDensity<T> fp_step(const TransferMatrix<T>& m, const GridDensity<T>& u);

enum class Activation { Identity, Logistic };

class NotImplementedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Euler step of the Amari field with Δt = tau and kernel w(x, x') =
/// δ(x − Φ(x')): u(t + tau) = ∫ w f(u). Only tau = 1 with the identity
/// activation is supported; there it coincides with fp_step.
template <class T>
GridDensity<T> amari_euler_step(const TransferMatrix<T>& m, const GridDensity<T>& u, double tau, Activation f);

/// Uniform density on r integrated over grid cells: area(cell ∩ r) / area(r).
/// Throws std::invalid_argument for zero-measure rectangles.
template <class T>
GridDensity<T> rasterize_rect(const Rect& r, std::size_t n);

template <class T>
T l1_distance(const GridDensity<T>& u, const GridDensity<T>& v);

FloatDensity to_float(const ExactDensity& u);
TransferMatrix<double> to_float(const TransferMatrix<Rational>& m);

}  // namespace tmdyn
