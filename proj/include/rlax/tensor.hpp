#pragma once
// Finite Heisenberg (clock-and-shift) basis T_a on C^N, the structure
// constants kappa, the permutation operator P, and dense tensor plumbing:
// Kronecker products, two-site embeddings into a chain, commutators,
// partial traces and the max-abs residual norm.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rlax/core.hpp"

namespace rlax {

using Mat = Eigen::MatrixXcd;

inline long ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline double max_abs(const Mat& A) {
  return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

inline Mat comm(const Mat& A, const Mat& B) { return A * B - B * A; }

inline Mat kron(const Mat& A, const Mat& B) {
  Mat out(A.rows() * B.rows(), A.cols() * B.cols());
  for (long i = 0; i < A.rows(); ++i)
    for (long j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

// kappa_{a,b} = exp(pi i (b1 a2 - b2 a1)/N): T_a T_b = kappa_{a,b} T_{a+b}
// with the true integer index sum.
inline cplx kappa(int a1, int a2, int b1, int b2, int N) {
  constexpr double pi = 3.14159265358979323846;
  return std::exp(cplx(0.0, pi * (double(b1) * a2 - double(b2) * a1) / N));
}

// Basis T_{(a1,a2)} = exp(pi i a1 a2 / N) Q^{a1 mod N} Lambda^{a2 mod N},
// defined for arbitrary integer labels so that negated labels mean the
// honest matrix T_{-a} (a phase away from any mod-N representative).
class TBasis {
 public:
  explicit TBasis(int N) : N_(N) {
    if (N < 1) throw ConfigError("TBasis order must be >= 1");
    constexpr double pi = 3.14159265358979323846;
    Mat Q = Mat::Zero(N, N), L = Mat::Zero(N, N);
    for (int k = 0; k < N; ++k) {
      Q(k, k) = std::exp(cplx(0.0, 2.0 * pi * (k + 1) / N));
      L(k, (k + 1) % N) = 1.0;  // Lambda_{kl} = delta_{k-l+1 mod N, 0}
    }
    Qp_.assign(N, Mat::Identity(N, N));
    Lp_.assign(N, Mat::Identity(N, N));
    for (int k = 1; k < N; ++k) {
      Qp_[k] = Qp_[k - 1] * Q;
      Lp_[k] = Lp_[k - 1] * L;
    }
  }

  int order() const { return N_; }

  Mat operator()(int a1, int a2) const {
    constexpr double pi = 3.14159265358979323846;
    const cplx phase = std::exp(cplx(0.0, pi * double(a1) * a2 / N_));
    return phase * Qp_[mod(a1)] * Lp_[mod(a2)];
  }

 private:
  int mod(int a) const { return ((a % N_) + N_) % N_; }
  int N_;
  std::vector<Mat> Qp_, Lp_;
};

// Permutation on C^N (x) C^N, standard-basis form sum_{ij} E_ij (x) E_ji.
inline Mat permutation_P(int N) {
  Mat P = Mat::Zero(N * N, N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) P(i * N + j, j * N + i) = 1.0;
  return P;
}

// Same operator from the basis sum (1/N) sum_a T_a (x) T_{-a}.
inline Mat permutation_P_basis(const TBasis& T) {
  const int N = T.order();
  Mat P = Mat::Zero(N * N, N * N);
  for (int a1 = 0; a1 < N; ++a1)
    for (int a2 = 0; a2 < N; ++a2) P += kron(T(a1, a2), T(-a1, -a2));
  return P / double(N);
}

// Place a one-site operator at site i of a chain of r sites of dimension n.
inline Mat embed_one(const Mat& O, int i, int r, int n) {
  if (i < 0 || i >= r || O.rows() != n || O.cols() != n)
    throw ConfigError("embed_one: bad site index or operator shape");
  const long dim = ipow(n, r);
  const long stride = ipow(n, r - 1 - i);
  Mat full = Mat::Zero(dim, dim);
  for (long row = 0; row < dim; ++row) {
    const int ri = int((row / stride) % n);
    const long base = row - ri * stride;
    for (int ci = 0; ci < n; ++ci)
      if (O(ri, ci) != 0.0) full(row, base + ci * stride) = O(ri, ci);
  }
  return full;
}

// Place a two-site operator at sites (i, j), identity elsewhere. The
// operator's first factor acts on site i, the second on site j.
inline Mat embed_pair(const Mat& O, int i, int j, int r, int n) {
  if (i == j || i < 0 || j < 0 || i >= r || j >= r)
    throw ConfigError("embed_pair: site collision or out of range");
  if (O.rows() != n * n || O.cols() != n * n)
    throw ConfigError("embed_pair: operator is not two-site");
  const long dim = ipow(n, r);
  const long si = ipow(n, r - 1 - i), sj = ipow(n, r - 1 - j);
  Mat full = Mat::Zero(dim, dim);
  for (long row = 0; row < dim; ++row) {
    const int ri = int((row / si) % n);
    const int rj = int((row / sj) % n);
    const long base = row - ri * si - rj * sj;
    for (int ci = 0; ci < n; ++ci)
      for (int cj = 0; cj < n; ++cj) {
        const cplx v = O(ri * n + rj, ci * n + cj);
        if (v != 0.0) full(row, base + ci * si + cj * sj) = v;
      }
  }
  return full;
}

// Trace out one site of a chain of r sites of dimension n.
inline Mat partial_site_trace(const Mat& A, int site, int r, int n) {
  if (site < 0 || site >= r) throw ConfigError("partial_site_trace: bad site");
  const long dim = ipow(n, r);
  if (A.rows() != dim || A.cols() != dim)
    throw ConfigError("partial_site_trace: shape mismatch");
  const long dout = dim / n;
  const long s = ipow(n, r - 1 - site);
  Mat out = Mat::Zero(dout, dout);
  for (long row = 0; row < dout; ++row) {
    const long rhi = (row / s) * (s * n), rlo = row % s;
    for (long col = 0; col < dout; ++col) {
      const long chi = (col / s) * (s * n), clo = col % s;
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += A(rhi + k * s + rlo, chi + k * s + clo);
      out(row, col) = acc;
    }
  }
  return out;
}

}  // namespace rlax
