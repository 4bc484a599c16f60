#include "pcone/vec.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace pcone {

bool solve_linear(Mat A, Vec b, Vec& x, double tol) {
  const std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < tol) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double m = A[r][col] / A[col][col];
      if (m == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) A[r][c] -= m * A[col][c];
      b[r] -= m * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t ri = n; ri-- > 0;) {
    double s = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) s -= A[ri][c] * x[c];
    x[ri] = s / A[ri][ri];
  }
  return true;
}

int matrix_rank(Mat rows, double tol) {
  if (rows.empty()) return 0;
  const std::size_t ncol = rows[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncol && row < rows.size(); ++col) {
    std::size_t piv = row;
    for (std::size_t r = row + 1; r < rows.size(); ++r)
      if (std::abs(rows[r][col]) > std::abs(rows[piv][col])) piv = r;
    if (std::abs(rows[piv][col]) < tol) continue;
    std::swap(rows[piv], rows[row]);
    for (std::size_t r = row + 1; r < rows.size(); ++r) {
      const double m = rows[r][col] / rows[row][col];
      for (std::size_t c = col; c < ncol; ++c) rows[r][c] -= m * rows[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

int affine_rank(const std::vector<Vec>& points, double tol) {
  if (points.size() <= 1) return 0;
  Mat diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i)
    diffs.push_back(sub(points[i], points[0]));
  return matrix_rank(std::move(diffs), tol);
}

Vec orthogonal_complement_1d(const Mat& rows, double tol) {
  if (rows.empty()) return {};
  const std::size_t n = rows[0].size();
  Mat m = rows;
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m.size(); ++col) {
    std::size_t piv = row;
    for (std::size_t r = row + 1; r < m.size(); ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < tol) continue;
    std::swap(m[piv], m[row]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row) continue;
      const double f = m[r][col] / m[row][col];
      for (std::size_t c = 0; c < n; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (pivot_col.size() != n - 1) return {};
  // the single free column determines the kernel direction
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  Vec w(n, 0.0);
  w[free_col] = 1.0;
  for (std::size_t r = 0; r < pivot_col.size(); ++r)
    w[pivot_col[r]] = -m[r][free_col] / m[r][pivot_col[r]];
  return normalized(w);
}

double simplex_volume(const std::vector<Vec>& vertices) {
  const std::size_t d = vertices.size() - 1;
  if (d == 0) return 0.0;
  Mat edges;
  edges.reserve(d);
  for (std::size_t i = 1; i <= d; ++i) edges.push_back(sub(vertices[i], vertices[0]));
  // Gram determinant by Cholesky-style elimination
  Mat g(d, Vec(d, 0.0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g[i][j] = dot(edges[i], edges[j]);
  double det = 1.0;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
    if (std::abs(g[piv][col]) <= 0.0) return 0.0;
    if (piv != col) {
      std::swap(g[piv], g[col]);
      det = -det;
    }
    det *= g[col][col];
    for (std::size_t r = col + 1; r < d; ++r) {
      const double m = g[r][col] / g[col][col];
      for (std::size_t c = col; c < d; ++c) g[r][c] -= m * g[col][c];
    }
  }
  if (det <= 0.0) return 0.0;
  double fact = 1.0;
  for (std::size_t i = 2; i <= d; ++i) fact *= static_cast<double>(i);
  return std::sqrt(det) / fact;
}

namespace {

// affine minimizer of ||sum mu_i p_i|| subject to sum mu_i = 1,
// via the KKT system [G 1; 1^T 0] [mu; nu] = [0; 1]
bool affine_min_norm(const std::vector<Vec>& pts, const std::vector<int>& idx,
                     Vec& mu) {
  const std::size_t k = idx.size();
  Mat A(k + 1, Vec(k + 1, 0.0));
  Vec rhs(k + 1, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    scale = std::max(scale, norm2(pts[idx[i]]));
  if (scale == 0.0) scale = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      A[i][j] = dot(pts[idx[i]], pts[idx[j]]) / scale;
    A[i][i] += 1e-14;
    A[i][k] = 1.0;
    A[k][i] = 1.0;
  }
  rhs[k] = 1.0;
  Vec sol;
  if (!solve_linear(A, rhs, sol, 1e-14)) return false;
  mu.assign(sol.begin(), sol.begin() + static_cast<long>(k));
  return true;
}

}  // namespace

Vec min_norm_point(const std::vector<Vec>& points) {
  // Wolfe (1976). Maintains a corral of affinely independent points and the
  // min-norm point of their affine hull; finite at this scale.
  const std::size_t np = points.size();
  const std::size_t n = points[0].size();
  double scale2 = 0.0;
  for (const auto& p : points) scale2 = std::max(scale2, norm2(p));
  if (scale2 == 0.0) return Vec(n, 0.0);
  const double eps = 1e-12 * scale2;

  std::size_t best = 0;
  for (std::size_t i = 1; i < np; ++i)
    if (norm2(points[i]) < norm2(points[best])) best = i;

  std::vector<int> corral{static_cast<int>(best)};
  Vec lambda{1.0};
  Vec x = points[best];

  const int max_major = static_cast<int>(10 * np + 100);
  for (int major = 0; major < max_major; ++major) {
    // most violating point of the optimality condition <x,p> >= <x,x>
    std::size_t j = 0;
    double bestdot = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < np; ++i) {
      const double d = dot(x, points[i]);
      if (d < bestdot) {
        bestdot = d;
        j = i;
      }
    }
    if (bestdot >= norm2(x) - eps) break;
    bool already = false;
    for (int c : corral)
      if (c == static_cast<int>(j)) already = true;
    if (already) break;
    corral.push_back(static_cast<int>(j));
    lambda.push_back(0.0);

    for (int minor = 0; minor < 200; ++minor) {
      Vec mu;
      if (!affine_min_norm(points, corral, mu)) {
        // affinely dependent corral: drop the newest point and stop
        corral.pop_back();
        lambda.pop_back();
        break;
      }
      double mumin = *std::min_element(mu.begin(), mu.end());
      if (mumin > -1e-12) {
        lambda = mu;
        break;
      }
      // step from lambda toward mu until a coefficient hits zero
      double theta = 1.0;
      for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu[i] < 1e-14 && lambda[i] > mu[i])
          theta = std::min(theta, lambda[i] / (lambda[i] - mu[i]));
      std::vector<int> kept;
      Vec kept_lambda;
      for (std::size_t i = 0; i < mu.size(); ++i) {
        const double v = (1.0 - theta) * lambda[i] + theta * mu[i];
        if (v > 1e-14) {
          kept.push_back(corral[i]);
          kept_lambda.push_back(v);
        }
      }
      if (kept.empty()) {
        kept.push_back(corral[0]);
        kept_lambda.push_back(1.0);
      }
      corral = std::move(kept);
      lambda = std::move(kept_lambda);
      double lsum = 0.0;
      for (double v : lambda) lsum += v;
      for (double& v : lambda) v /= lsum;
    }
    x.assign(n, 0.0);
    for (std::size_t i = 0; i < corral.size(); ++i)
      axpy(x, lambda[i], points[corral[i]]);
  }
  return x;
}

}  // namespace pcone
