#pragma once

// Pointwise dense linear algebra for tiny n x n matrices (n <= 4 in
// practice), operating on raw row-major component slices. Kept free of
// allocations so the per-grid-point loops stay tight.

#include <cmath>
#include <cstddef>
#include <optional>

namespace cauchylab::smallmat {

constexpr int kMaxDim = 8;

/// Cholesky factorization g = L L^T for a symmetric matrix given row-major.
/// Returns the index (1-based) of the failing leading minor, or 0 on success.
/// L is lower triangular, row-major.
inline int cholesky(int n, const double* g, double* L) {
  for (int i = 0; i < n * n; ++i) L[i] = 0.0;
  for (int j = 0; j < n; ++j) {
    double d = g[j * n + j];
    for (int k = 0; k < j; ++k) d -= L[j * n + k] * L[j * n + k];
    if (!(d > 0.0)) return j + 1;
    const double ljj = std::sqrt(d);
    L[j * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = g[i * n + j];
      for (int k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
      L[i * n + j] = s / ljj;
    }
  }
  return 0;
}

/// Inverse of an SPD matrix from its Cholesky factor: g^{-1} = L^{-T} L^{-1}.
inline void spd_inverse_from_cholesky(int n, const double* L, double* inv) {
  double Linv[kMaxDim * kMaxDim] = {0.0};
  // Forward-substitute columns of the identity: L * x = e_j.
  for (int j = 0; j < n; ++j) {
    for (int i = j; i < n; ++i) {
      double s = (i == j) ? 1.0 : 0.0;
      for (int k = j; k < i; ++k) s -= L[i * n + k] * Linv[k * n + j];
      Linv[i * n + j] = s / L[i * n + i];
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = (i > j ? i : j); k < n; ++k)
        s += Linv[k * n + i] * Linv[k * n + j];
      inv[i * n + j] = s;
    }
}

inline double det_from_cholesky(int n, const double* L) {
  double d = 1.0;
  for (int i = 0; i < n; ++i) d *= L[i * n + i];
  return d * d;
}

/// Orthonormal coordinate frame from the Cholesky factor: the columns of
/// E = L^{-T} are the frame vectors, E^T g E = Id. E is upper triangular.
inline void frame_from_cholesky(int n, const double* L, double* E) {
  // Solve L^T E = Id by back-substitution (columns of E); E is upper
  // triangular.
  for (int j = 0; j < n; ++j) {
    for (int i = n - 1; i >= 0; --i) {
      if (i > j) { E[i * n + j] = 0.0; continue; }
      double s = (i == j) ? 1.0 : 0.0;
      for (int k = i + 1; k < n; ++k) s -= L[k * n + i] * E[k * n + j];
      E[i * n + j] = s / L[i * n + i];
    }
  }
}

/// d/dt of the Cholesky factor given gdot = d/dt (L L^T): Ldot = L * phi(F)
/// with F = L^{-1} gdot L^{-T}, phi = strictly-lower part plus half-diagonal.
inline void cholesky_dot(int n, const double* L, const double* gdot, double* Ldot) {
  double tmp[kMaxDim * kMaxDim];
  double F[kMaxDim * kMaxDim];
  // tmp = L^{-1} gdot  (forward substitution on columns)
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double s = gdot[i * n + j];
      for (int k = 0; k < i; ++k) s -= L[i * n + k] * tmp[k * n + j];
      tmp[i * n + j] = s / L[i * n + i];
    }
  // F = tmp * L^{-T}: solve F L^T = tmp, i.e. for each row: L * f^T = tmp^T.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = tmp[i * n + j];
      for (int k = 0; k < j; ++k) s -= F[i * n + k] * L[j * n + k];
      F[i * n + j] = s / L[j * n + j];
    }
  double phi[kMaxDim * kMaxDim];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      phi[i * n + j] = (i > j) ? F[i * n + j] : (i == j ? 0.5 * F[i * n + j] : 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += L[i * n + k] * phi[k * n + j];
      Ldot[i * n + j] = s;
    }
}

inline void matmul(int n, const double* a, const double* b, double* out) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
      out[i * n + j] = s;
    }
}

}  // namespace cauchylab::smallmat
