#pragma once

#include <array>
#include <vector>

#include "dqw/coin.hpp"
#include "dqw/evolve.hpp"
#include "dqw/types.hpp"

namespace dqw {

// Momentum-k sector of the evolution operator, a 6x6 unitary.
struct FourierBlock {
  int k = 0;
  int n = 0;
  Mat6 matrix;
};

// Eigenvalues sorted by phase in (-pi, pi] ascending (ties by imaginary
// part); unit-norm eigenvectors, first component of magnitude > 1e-10 made
// real positive; residuals ||U v - lambda v||_2.
struct EigenSystem {
  std::array<cd, 6> eigenvalues;
  std::array<Vec6, 6> eigenvectors;
  std::array<double, 6> residuals;
};

struct FullEigenPair {
  cd lambda;
  VecX vec;  // dimension 6N
  int k = 0;
  int j = 0;  // 1..6 within the block
};

// Forward transform Psi(k) = sum_r e^{-i 2 pi k r / N} psi(r), per 6-vector
// component; k = 0..N-1.
std::vector<Vec6> dft_state(const WalkState& state);

// Inverse: psi(r) = (1/N) sum_k e^{+i 2 pi k r / N} Psi(k).
WalkState idft_state(const std::vector<Vec6>& blocks, int n);

// The three 6x6 hop blocks of the local recurrence
// psi(r, t+1) = Mp psi(r+1, t) + Mm psi(r-1, t) + Ms psi(r, t).
Mat6 hop_block_plus(const CoinMatrix& coin);
Mat6 hop_block_minus(const CoinMatrix& coin);
Mat6 hop_block_stay(const CoinMatrix& coin);

FourierBlock build_Uk(const CoinMatrix& coin, int n, int k);

// Characteristic polynomial det(zI - M) = z^6 + c[1] z^5 + ... + c[6],
// returned as {1, c1, ..., c6}; coefficients are real for these blocks.
std::array<double, 7> char_poly_coeffs(const Mat6& m);

// Divide the sextic by the exact factor (z^2 - 1); throws NumericalError if
// the remainder exceeds 1e-10.
std::array<double, 5> deflate_unit_pair(const std::array<double, 7>& sextic);

// Closed-form eigenvalues per class (always includes -1 and +1); eigenvectors
// from the general formulas where their denominators exceed 1e-8, otherwise
// from the null-space path.
EigenSystem eigen_closed_form(CoinClass cls, const CoinMatrix& coin, int n, int k);

// Production path: characteristic sextic, (z^2-1) deflation, Ferrari quartic,
// root clustering with unit-circle projection, null-space eigenvectors.
EigenSystem eigen_numeric(const FourierBlock& block);

// General-formula eigenvector for eigenvalue lambda in block k (test oracle;
// valid when min_denom comes back > 1e-8). Unnormalized.
Vec6 theorem_eigenvector(CoinClass cls, double x, double y, cd lambda, int n, int k,
                         double& min_denom);

// All 6N eigenpairs; full vectors assembled as nu (x) (e^{i 2 pi k r/N}/sqrtN)
// in the amp_index layout, each verified ||U v - lambda v|| <= 1e-8.
std::vector<FullEigenPair> full_spectrum(const CoinMatrix& coin, int n, bool parallel = false);

}  // namespace dqw
