#pragma once

#include <optional>
#include <vector>

#include "sphereiso/errors.hpp"
#include "sphereiso/numeric.hpp"

namespace sphereiso::intlinalg {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Int& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  void swap_cols(int i, int j);
  void negate_col(int j);
  /// column[dst] += factor * column[src]
  void add_col(int dst, int src, const Int& factor);
  void swap_rows(int i, int j);

  std::vector<Int> column(int j) const;

  bool operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> a_;
};

struct HnfResult {
  IntMatrix hnf;        // same shape as the input
  IntMatrix transform;  // unimodular, input * transform == hnf
};

/// Column-style Hermite normal form: nonzero columns first with strictly
/// increasing pivot rows, positive pivots, entries left of a pivot in its
/// row reduced into [0, pivot). Unique for the column span, so it is
/// idempotent and serves as a lattice normal form.
HnfResult hermite_normal_form(const IntMatrix& a);

/// Exact determinant of a square matrix (Bareiss; division-free result).
Int determinant(const IntMatrix& a);

/// Floor division helper: rounds toward minus infinity, divisor != 0.
Int floor_div(const Int& a, const Int& b);

/// A subgroup of Z^k x (Z/2)^m presented by generators, normalized to a
/// Hermite basis. Coordinates with modulus 2 implicitly carry the relation
/// 2 e_i = 0; modulus 0 marks a free coordinate.
class LatticeBasis {
 public:
  LatticeBasis() = default;

  static LatticeBasis build(int ambient, std::vector<int> moduli,
                            const std::vector<std::vector<Int>>& generators);

  int ambient() const { return ambient_; }
  const std::vector<int>& moduli() const { return moduli_; }
  /// Nonzero Hermite columns spanning the subgroup (relations included).
  const IntMatrix& columns() const { return cols_; }
  const std::vector<int>& pivot_rows() const { return pivot_rows_; }

  /// Exact membership. On success returns the integer coefficients over
  /// columns() reproducing x; nullopt means x is not in the subgroup.
  std::optional<std::vector<Int>> membership(const std::vector<Int>& x) const;

  /// The unique coset representative with each pivot coordinate reduced
  /// into [0, pivot). Two vectors get equal residues iff they differ by a
  /// subgroup element.
  std::vector<Int> canonical_residue(std::vector<Int> x) const;

  bool operator==(const LatticeBasis& other) const {
    return ambient_ == other.ambient_ && moduli_ == other.moduli_ &&
           cols_ == other.cols_;
  }

 private:
  int ambient_ = 0;
  std::vector<int> moduli_;
  IntMatrix cols_;
  std::vector<int> pivot_rows_;
};

}  // namespace sphereiso::intlinalg
