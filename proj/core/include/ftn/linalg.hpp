#pragma once

#include <span>
#include <vector>

namespace ftn {

// Lower-triangular Cholesky factor of an n x n symmetric banded Toeplitz
// matrix B, B[i][j] = col[|i - j|] (col[0] is the diagonal). Entries are
// stored diagonal-major: diag m, column j lives at d[m * n + j] and holds
// Lf[j + m][j].
struct BandedCholesky {
  int n = 0;
  int bandwidth = 0;    // stored diagonals: main + (bandwidth - 1) sub
  double loading = 0.0; // diagonal loading applied to make factorization succeed
  std::vector<double> d;

  double at(int i, int j) const;            // Lf[i][j]; 0 outside the band
  std::vector<double> column(int j) const;  // Lf[j .. min(j+bw, n)-1][j]

  void color(std::span<double> x) const;   // x <- Lf x   (in place)
  void whiten(std::span<double> y) const;  // y <- Lf^{-1} y (forward solve)
};

// Factors B (+ loading I) with an escalating diagonal-loading ladder:
// 0, then 1e-9 stepping by 10x up to 1e-2, stopping at the first loading
// whose pivots are all healthy. The sub-Nyquist Gram needs this: once the
// folded spectrum of the pulse autocorrelation touches zero (tau (1 + beta)
// < 1), the banded truncation is slightly indefinite and no near-zero
// loading can fix it. Throws std::runtime_error if even 1e-2 fails.
BandedCholesky banded_toeplitz_cholesky(std::span<const double> col, int n);

// y[k] = sum_j col[|k - j|] a[j] (zero where |k - j| >= col.size()).
std::vector<double> toeplitz_matvec(std::span<const double> col,
                                    std::span<const double> a);

}  // namespace ftn
