#include "ftn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ftn {
namespace {

// Pivots smaller than this fraction of the (loaded) diagonal declare the
// attempt indefinite and move the ladder to the next loading.
constexpr double kPivotFloor = 1e-12;

bool try_factor(std::span<const double> col, int n, double loading,
                BandedCholesky& out) {
  const int bw = std::min<int>(static_cast<int>(col.size()), n);
  out.n = n;
  out.bandwidth = bw;
  out.loading = loading;
  out.d.assign(static_cast<std::size_t>(bw) * n, 0.0);
  const double diag = col[0] + loading;
  const double floor = kPivotFloor * diag;

  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < bw && j + m < n; ++m) {
      const int i = j + m;
      double s = (m == 0) ? diag : col[m];
      // sum over shared columns k < j inside both bands
      const int kmin = std::max(0, i - bw + 1);
      for (int k = kmin; k < j; ++k) {
        s -= out.d[static_cast<std::size_t>(i - k) * n + k] *
             out.d[static_cast<std::size_t>(j - k) * n + k];
      }
      if (m == 0) {
        if (!(s > floor)) {
          return false;
        }
        out.d[j] = std::sqrt(s);
      } else {
        out.d[static_cast<std::size_t>(m) * n + j] = s / out.d[j];
      }
    }
  }
  return true;
}

}  // namespace

double BandedCholesky::at(int i, int j) const {
  const int m = i - j;
  if (m < 0 || m >= bandwidth || i >= n || j < 0) {
    return 0.0;
  }
  return d[static_cast<std::size_t>(m) * n + j];
}

std::vector<double> BandedCholesky::column(int j) const {
  const int len = std::min(bandwidth, n - j);
  std::vector<double> c(len);
  for (int m = 0; m < len; ++m) {
    c[m] = d[static_cast<std::size_t>(m) * n + j];
  }
  return c;
}

void BandedCholesky::color(std::span<double> x) const {
  // x <- Lf x, walking rows bottom-up so unread inputs stay intact.
  for (int i = n - 1; i >= 0; --i) {
    double s = 0.0;
    const int mmax = std::min(bandwidth - 1, i);
    for (int m = 0; m <= mmax; ++m) {
      s += d[static_cast<std::size_t>(m) * n + (i - m)] * x[i - m];
    }
    x[i] = s;
  }
}

void BandedCholesky::whiten(std::span<double> y) const {
  for (int i = 0; i < n; ++i) {
    double s = y[i];
    const int mmax = std::min(bandwidth - 1, i);
    for (int m = 1; m <= mmax; ++m) {
      s -= d[static_cast<std::size_t>(m) * n + (i - m)] * y[i - m];
    }
    y[i] = s / d[i];
  }
}

BandedCholesky banded_toeplitz_cholesky(std::span<const double> col, int n) {
  if (col.empty() || n < 1) {
    throw std::invalid_argument("banded_toeplitz_cholesky: empty problem");
  }
  BandedCholesky chol;
  if (try_factor(col, n, 0.0, chol)) {
    return chol;
  }
  for (double loading = 1e-9; loading <= 1e-2 * (1.0 + 1e-12); loading *= 10.0) {
    if (try_factor(col, n, loading, chol)) {
      return chol;
    }
  }
  throw std::runtime_error(
      "banded_toeplitz_cholesky: Gram matrix not positive definite even with "
      "diagonal loading 1e-2");
}

std::vector<double> toeplitz_matvec(std::span<const double> col,
                                    std::span<const double> a) {
  const int n = static_cast<int>(a.size());
  const int bw = static_cast<int>(col.size());
  std::vector<double> y(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    const int jmin = std::max(0, k - bw + 1);
    const int jmax = std::min(n - 1, k + bw - 1);
    for (int j = jmin; j <= jmax; ++j) {
      s += col[std::abs(k - j)] * a[j];
    }
    y[k] = s;
  }
  return y;
}

}  // namespace ftn
