#include "sphereiso/intlinalg.hpp"

#include <algorithm>
#include <utility>

namespace sphereiso::intlinalg {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

void IntMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::negate_col(int j) {
  for (int r = 0; r < rows_; ++r) at(r, j) = -at(r, j);
}

void IntMatrix::add_col(int dst, int src, const Int& factor) {
  if (factor == 0) return;
  for (int r = 0; r < rows_; ++r) at(r, dst) += factor * at(r, src);
}

void IntMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

std::vector<Int> IntMatrix::column(int j) const {
  std::vector<Int> out;
  out.reserve(rows_);
  for (int r = 0; r < rows_; ++r) out.push_back(at(r, j));
  return out;
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

HnfResult hermite_normal_form(const IntMatrix& a) {
  using boost::multiprecision::abs;
  HnfResult out{a, IntMatrix::identity(a.cols())};
  IntMatrix& h = out.hnf;
  IntMatrix& u = out.transform;
  int col = 0;
  for (int row = 0; row < h.rows() && col < h.cols(); ++row) {
    // Euclidean sweep: shrink entries of this row across columns >= col
    // until at most one survives, parked at position col.
    while (true) {
      int best = -1;
      for (int j = col; j < h.cols(); ++j) {
        if (h.at(row, j) == 0) continue;
        if (best < 0 || abs(h.at(row, j)) < abs(h.at(row, best))) best = j;
      }
      if (best < 0) break;
      h.swap_cols(best, col);
      u.swap_cols(best, col);
      bool survivors = false;
      for (int j = col + 1; j < h.cols(); ++j) {
        if (h.at(row, j) == 0) continue;
        Int q = h.at(row, j) / h.at(row, col);
        h.add_col(j, col, -q);
        u.add_col(j, col, -q);
        if (h.at(row, j) != 0) survivors = true;
      }
      if (!survivors) break;
    }
    if (h.at(row, col) == 0) continue;  // no pivot in this row
    if (h.at(row, col) < 0) {
      h.negate_col(col);
      u.negate_col(col);
    }
    for (int j = 0; j < col; ++j) {
      Int q = floor_div(h.at(row, j), h.at(row, col));
      h.add_col(j, col, -q);
      u.add_col(j, col, -q);
    }
    ++col;
  }
  return out;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  const int n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int sign = 1;
  Int prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i) {
        if (m.at(i, k) != 0) {
          swap = i;
          break;
        }
      }
      if (swap < 0) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

LatticeBasis LatticeBasis::build(int ambient, std::vector<int> moduli,
                                 const std::vector<std::vector<Int>>& generators) {
  if (ambient < 0) throw DimensionMismatch("negative ambient dimension");
  if (moduli.size() != static_cast<size_t>(ambient))
    throw DimensionMismatch("one modulus per coordinate required");
  for (int m : moduli)
    if (m != 0 && m != 2) throw DimensionMismatch("coordinate moduli must be 0 or 2");

  int relation_count = 0;
  for (int m : moduli)
    if (m == 2) ++relation_count;

  IntMatrix a(ambient, static_cast<int>(generators.size()) + relation_count);
  for (size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].size() != static_cast<size_t>(ambient))
      throw DimensionMismatch("generator has wrong length");
    for (int r = 0; r < ambient; ++r) a.at(r, static_cast<int>(j)) = generators[j][r];
  }
  int col = static_cast<int>(generators.size());
  for (int r = 0; r < ambient; ++r) {
    if (moduli[r] == 2) a.at(r, col++) = 2;
  }

  auto result = hermite_normal_form(a);

  LatticeBasis out;
  out.ambient_ = ambient;
  out.moduli_ = std::move(moduli);
  // keep the nonzero columns and note their pivot rows
  int keep = 0;
  for (int j = 0; j < result.hnf.cols(); ++j) {
    bool zero = true;
    for (int r = 0; r < ambient; ++r)
      if (result.hnf.at(r, j) != 0) {
        zero = false;
        break;
      }
    if (zero) break;  // zero columns are trailing by construction
    ++keep;
  }
  out.cols_ = IntMatrix(ambient, keep);
  for (int j = 0; j < keep; ++j) {
    int pivot = -1;
    for (int r = 0; r < ambient; ++r) {
      out.cols_.at(r, j) = result.hnf.at(r, j);
      if (pivot < 0 && result.hnf.at(r, j) != 0) pivot = r;
    }
    out.pivot_rows_.push_back(pivot);
  }
  return out;
}

std::optional<std::vector<Int>> LatticeBasis::membership(const std::vector<Int>& x) const {
  if (x.size() != static_cast<size_t>(ambient_))
    throw DimensionMismatch("vector length does not match the ambient dimension");
  std::vector<Int> residual = x;
  std::vector<Int> coeff(pivot_rows_.size(), Int(0));
  for (size_t j = 0; j < pivot_rows_.size(); ++j) {
    const int pr = pivot_rows_[j];
    const Int& pivot = cols_.at(pr, static_cast<int>(j));
    if (residual[pr] % pivot != 0) return std::nullopt;
    Int q = residual[pr] / pivot;
    if (q != 0) {
      for (int r = pr; r < ambient_; ++r) residual[r] -= q * cols_.at(r, static_cast<int>(j));
    }
    coeff[j] = std::move(q);
  }
  for (const Int& v : residual)
    if (v != 0) return std::nullopt;
  return coeff;
}

std::vector<Int> LatticeBasis::canonical_residue(std::vector<Int> x) const {
  if (x.size() != static_cast<size_t>(ambient_))
    throw DimensionMismatch("vector length does not match the ambient dimension");
  for (size_t j = 0; j < pivot_rows_.size(); ++j) {
    const int pr = pivot_rows_[j];
    const Int& pivot = cols_.at(pr, static_cast<int>(j));
    Int q = floor_div(x[pr], pivot);
    if (q != 0) {
      for (int r = pr; r < ambient_; ++r) x[r] -= q * cols_.at(r, static_cast<int>(j));
    }
  }
  return x;
}

}  // namespace sphereiso::intlinalg
