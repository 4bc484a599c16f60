#pragma once

// Small dense linear algebra on runtime-dimensional vectors.
// Dimensions here are tiny (n = 2..4), so everything is plain
// std::vector<double> and O(n^3) direct methods.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace pcone {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major list of rows

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return dot(a, a); }
inline double norm(std::span<const double> a) { return std::sqrt(norm2(a)); }

inline Vec add(std::span<const double> a, std::span<const double> b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(std::span<const double> a, std::span<const double> b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(std::span<const double> a, double s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

// r += s*a
inline void axpy(Vec& r, double s, std::span<const double> a) {
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += s * a[i];
}

inline double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline Vec normalized(std::span<const double> a) {
  const double m = norm(a);
  return scale(a, m > 0.0 ? 1.0 / m : 0.0);
}

// Solves A x = b for square A by partial-pivot Gaussian elimination.
// Returns false if a pivot falls below tol * (row scale).
bool solve_linear(Mat A, Vec b, Vec& x, double tol = 1e-12);

// Rank of the row set within tolerance (row echelon with column pivoting).
int matrix_rank(Mat rows, double tol = 1e-9);

// Affine rank of a point set: rank of {p_i - p_0}.
int affine_rank(const std::vector<Vec>& points, double tol = 1e-9);

// Unit vector orthogonal to all rows, for a row set of rank dim-1.
// Returns empty vector if the rank condition fails.
Vec orthogonal_complement_1d(const Mat& rows, double tol = 1e-9);

// d-dimensional Hausdorff measure of a d-simplex embedded in R^n,
// via the Gram determinant of edge vectors. vertices.size() == d+1.
double simplex_volume(const std::vector<Vec>& vertices);

// Minimum-norm point of conv(points) by Wolfe's algorithm.
// Exact for polytopes up to the numerical tolerance.
Vec min_norm_point(const std::vector<Vec>& points);

}  // namespace pcone
