#include "blockcalc/snf.hpp"

#include <cstdlib>

namespace blockcalc {

namespace {

IntMat identity(int n) {
  IntMat m(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

SmithResult smith_normal_form(IntMat a) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  IntMat u = identity(rows), v = identity(cols);

  auto swap_rows = [&](int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](int i, int j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  };
  auto add_row = [&](int dst, int src, const Int& f) {  // row[dst] += f*row[src]
    for (int k = 0; k < cols; ++k) a[dst][k] += f * a[src][k];
    for (int k = 0; k < rows; ++k) u[dst][k] += f * u[src][k];
  };
  auto add_col = [&](int dst, int src, const Int& f) {
    for (int i = 0; i < rows; ++i) a[i][dst] += f * a[i][src];
    for (int i = 0; i < cols; ++i) v[i][dst] += f * v[i][src];
  };

  int n = std::min(rows, cols);
  int k = 0;
  for (; k < n; ++k) {
    // Pivot: entry of least absolute value in the remaining block.
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = k; i < rows; ++i)
      for (int j = k; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        Int v2 = abs(a[i][j]);
        if (pi < 0 || v2 < best) {
          best = v2;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // all zero
    if (pi != k) swap_rows(k, pi);
    if (pj != k) swap_cols(k, pj);

    bool again = true;
    while (again) {
      again = false;
      for (int i = k + 1; i < rows; ++i) {
        if (a[i][k] == 0) continue;
        Int q = a[i][k] / a[k][k];
        add_row(i, k, -q);
        if (a[i][k] != 0) {
          swap_rows(k, i);
          again = true;
        }
      }
      for (int j = k + 1; j < cols; ++j) {
        if (a[k][j] == 0) continue;
        Int q = a[k][j] / a[k][k];
        add_col(j, k, -q);
        if (a[k][j] != 0) {
          swap_cols(k, j);
          again = true;
        }
      }
    }
    if (a[k][k] < 0) {
      for (int i = 0; i < rows; ++i) a[i][k] = -a[i][k];
      for (int i = 0; i < cols; ++i) v[i][k] = -v[i][k];
    }
  }

  SmithResult s;
  s.rows = rows;
  s.cols = cols;
  s.rank = k;
  s.diag.assign(n, 0);
  for (int i = 0; i < k; ++i) s.diag[i] = a[i][i];
  s.U = std::move(u);
  s.V = std::move(v);
  return s;
}

namespace {

std::vector<Int> mat_vec(const IntMat& m, const std::vector<Int>& x) {
  std::vector<Int> r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) r[i] += m[i][j] * x[j];
  return r;
}

}  // namespace

std::optional<std::vector<Int>> solve_integer(const SmithResult& s, const std::vector<Int>& b) {
  std::vector<Int> y = mat_vec(s.U, b);
  std::vector<Int> z(s.cols, 0);
  for (int i = 0; i < s.rows; ++i) {
    if (i < s.rank) {
      if (y[i] % s.diag[i] != 0) return std::nullopt;
      z[i] = y[i] / s.diag[i];
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return mat_vec(s.V, z);
}

std::optional<Int> least_multiple_in_image(const SmithResult& s, const std::vector<Int>& b) {
  std::vector<Int> y = mat_vec(s.U, b);
  Int m = 1;
  for (int i = 0; i < s.rows; ++i) {
    if (i < s.rank) {
      Int g = gcd(s.diag[i], y[i]);
      Int need = g == 0 ? s.diag[i] : s.diag[i] / g;
      m = lcm(m, need);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return m;
}

}  // namespace blockcalc
