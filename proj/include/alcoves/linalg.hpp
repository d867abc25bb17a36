#pragma once

#include <optional>
#include <vector>

#include "alcoves/rat.hpp"

namespace alcoves {

using VecI = std::vector<Int>;
using VecQ = std::vector<Rat>;

inline VecQ to_q(const VecI& v) {
  VecQ r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

inline VecI add(const VecI& a, const VecI& b) {
  VecI r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = detail::add_checked(a[i], b[i]);
  return r;
}
inline VecI sub(const VecI& a, const VecI& b) {
  VecI r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = detail::add_checked(a[i], -b[i]);
  return r;
}
inline VecI neg(const VecI& a) {
  VecI r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}
inline VecI scale(Int c, const VecI& a) {
  VecI r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = detail::mul_checked(c, a[i]);
  return r;
}
inline bool is_zero(const VecI& a) {
  for (Int x : a)
    if (x != 0) return false;
  return true;
}

inline VecQ add(const VecQ& a, const VecQ& b) {
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline VecQ sub(const VecQ& a, const VecQ& b) {
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline VecQ scale(const Rat& c, const VecQ& a) {
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Int dot(const VecI& a, const VecI& b) {
  __int128 s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  return detail::checked_cast(s, "dot");
}
inline Rat dot(const VecI& a, const VecQ& b) {
  Rat s;
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}
inline Rat dot(const VecQ& a, const VecQ& b) {
  Rat s;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Square integer matrix, row-major.
struct MatI {
  int n = 0;
  VecI a;

  static MatI identity(int n) {
    MatI m;
    m.n = n;
    m.a.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  Int& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  Int at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  friend MatI operator*(const MatI& x, const MatI& y) {
    MatI r;
    r.n = x.n;
    r.a.assign(x.a.size(), 0);
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k) {
        Int xi = x.at(i, k);
        if (xi == 0) continue;
        for (int j = 0; j < x.n; ++j)
          r.at(i, j) = detail::add_checked(r.at(i, j),
                                           detail::mul_checked(xi, y.at(k, j)));
      }
    return r;
  }

  // column action: (M v)_i = sum_j M_ij v_j
  VecI apply(const VecI& v) const {
    VecI r(n, 0);
    for (int i = 0; i < n; ++i) {
      __int128 s = 0;
      for (int j = 0; j < n; ++j) s += static_cast<__int128>(at(i, j)) * v[j];
      r[i] = detail::checked_cast(s, "MatI::apply");
    }
    return r;
  }
  VecQ apply(const VecQ& v) const {
    VecQ r(n);
    for (int i = 0; i < n; ++i) {
      Rat s;
      for (int j = 0; j < n; ++j) s += Rat(at(i, j)) * v[j];
      r[i] = s;
    }
    return r;
  }

  // row action: (v M)_j = sum_i v_i M_ij ; this is how functionals transform
  VecI apply_row(const VecI& v) const {
    VecI r(n, 0);
    for (int j = 0; j < n; ++j) {
      __int128 s = 0;
      for (int i = 0; i < n; ++i) s += static_cast<__int128>(v[i]) * at(i, j);
      r[j] = detail::checked_cast(s, "MatI::apply_row");
    }
    return r;
  }

  friend bool operator==(const MatI& x, const MatI& y) {
    return x.n == y.n && x.a == y.a;
  }
  friend bool operator!=(const MatI& x, const MatI& y) { return !(x == y); }
  friend bool operator<(const MatI& x, const MatI& y) { return x.a < y.a; }
};

// Solve sum_j c_j * cols[j] = target for rational c, by Gaussian elimination.
// Returns nullopt when inconsistent. When the columns are linearly dependent
// the free coefficients are set to zero.
inline std::optional<VecQ> solve_in_span(const std::vector<VecI>& cols,
                                         const VecQ& target) {
  size_t m = cols.size();
  size_t dim = target.size();
  // augmented matrix rows: dim x (m+1)
  std::vector<VecQ> aug(dim, VecQ(m + 1));
  for (size_t i = 0; i < dim; ++i) {
    for (size_t j = 0; j < m; ++j) aug[i][j] = Rat(cols[j][i]);
    aug[i][m] = target[i];
  }
  std::vector<int> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < m && row < dim; ++col) {
    size_t p = row;
    while (p < dim && aug[p][col].is_zero()) ++p;
    if (p == dim) continue;
    std::swap(aug[p], aug[row]);
    Rat inv = Rat(1) / aug[row][col];
    for (size_t j = col; j <= m; ++j) aug[row][j] *= inv;
    for (size_t i = 0; i < dim; ++i) {
      if (i == row || aug[i][col].is_zero()) continue;
      Rat f = aug[i][col];
      for (size_t j = col; j <= m; ++j) aug[i][j] -= f * aug[row][j];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  for (size_t i = row; i < dim; ++i)
    if (!aug[i][m].is_zero()) return std::nullopt;
  VecQ c(m, Rat(0));
  for (size_t r = 0; r < pivot_col.size(); ++r) c[pivot_col[r]] = aug[r][m];
  return c;
}

// Minimal-norm solution of <rows[i], v> = rhs[i]. Dependent-but-consistent
// systems are reduced first; inconsistent ones give nullopt. Uses the normal
// equations on an independent subset, so the Gram matrix is invertible.
inline std::optional<VecQ> min_norm_solution(const std::vector<VecI>& rows,
                                             const VecQ& rhs, int dim) {
  // Row-reduce (rows | rhs) to find an independent subset.
  std::vector<VecQ> work;
  std::vector<size_t> kept;
  std::vector<VecQ> reduced;  // echelon form of kept rows
  for (size_t i = 0; i < rows.size(); ++i) {
    VecQ r(dim + 1);
    for (int j = 0; j < dim; ++j) r[j] = Rat(rows[i][j]);
    r[dim] = rhs[i];
    for (const VecQ& e : reduced) {
      int lead = 0;
      while (lead < dim && e[lead].is_zero()) ++lead;
      if (lead < dim && !r[lead].is_zero()) {
        Rat f = r[lead] / e[lead];
        for (int j = 0; j <= dim; ++j) r[j] -= f * e[j];
      }
    }
    bool zero = true;
    for (int j = 0; j < dim; ++j)
      if (!r[j].is_zero()) {
        zero = false;
        break;
      }
    if (zero) {
      if (!r[dim].is_zero()) return std::nullopt;
      continue;
    }
    reduced.push_back(r);
    kept.push_back(i);
  }
  size_t k = kept.size();
  if (k == 0) return VecQ(dim, Rat(0));
  // Solve (A A^T) y = b on the kept rows, then v = A^T y.
  std::vector<VecQ> gram(k, VecQ(k + 1));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j)
      gram[i][j] = Rat(dot(rows[kept[i]], rows[kept[j]]));
    gram[i][k] = rhs[kept[i]];
  }
  for (size_t col = 0; col < k; ++col) {
    size_t p = col;
    while (p < k && gram[p][col].is_zero()) ++p;
    if (p == k) throw std::logic_error("min_norm_solution: singular Gram");
    std::swap(gram[p], gram[col]);
    Rat inv = Rat(1) / gram[col][col];
    for (size_t j = col; j <= k; ++j) gram[col][j] *= inv;
    for (size_t i = 0; i < k; ++i) {
      if (i == col || gram[i][col].is_zero()) continue;
      Rat f = gram[i][col];
      for (size_t j = col; j <= k; ++j) gram[i][j] -= f * gram[col][j];
    }
  }
  VecQ v(dim, Rat(0));
  for (size_t i = 0; i < k; ++i)
    for (int j = 0; j < dim; ++j) v[j] += gram[i][k] * Rat(rows[kept[i]][j]);
  return v;
}

inline Rat det_q(std::vector<VecQ> m) {
  size_t n = m.size();
  Rat d(1);
  for (size_t col = 0; col < n; ++col) {
    size_t p = col;
    while (p < n && m[p][col].is_zero()) ++p;
    if (p == n) return Rat(0);
    if (p != col) {
      std::swap(m[p], m[col]);
      d = -d;
    }
    d *= m[col][col];
    Rat inv = Rat(1) / m[col][col];
    for (size_t i = col + 1; i < n; ++i) {
      if (m[i][col].is_zero()) continue;
      Rat f = m[i][col] * inv;
      for (size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  return d;
}

inline Int det(const MatI& m) {
  std::vector<VecQ> q(m.n, VecQ(m.n));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) q[i][j] = Rat(m.at(i, j));
  Rat d = det_q(q);
  if (!d.is_integer()) throw std::logic_error("det: non-integer result");
  return d.num();
}

// Inverse of an integer matrix that is invertible over the integers
// (|det| need not be 1 here; we require the inverse itself to be integral).
inline MatI inverse_integer(const MatI& m) {
  int n = m.n;
  std::vector<VecQ> aug(n, VecQ(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = Rat(m.at(i, j));
    aug[i][n + i] = Rat(1);
  }
  for (int col = 0; col < n; ++col) {
    int p = col;
    while (p < n && aug[p][col].is_zero()) ++p;
    if (p == n) throw std::domain_error("inverse_integer: singular matrix");
    std::swap(aug[p], aug[col]);
    Rat inv = Rat(1) / aug[col][col];
    for (int j = 0; j < 2 * n; ++j) aug[col][j] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || aug[i][col].is_zero()) continue;
      Rat f = aug[i][col];
      for (int j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[col][j];
    }
  }
  MatI r;
  r.n = n;
  r.a.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!aug[i][n + j].is_integer())
        throw std::domain_error("inverse_integer: inverse not integral");
      r.at(i, j) = aug[i][n + j].num();
    }
  return r;
}

}  // namespace alcoves
