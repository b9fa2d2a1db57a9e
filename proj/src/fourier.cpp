#include "dqw/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "dqw/parallel.hpp"
#include "dqw/quartic.hpp"

namespace dqw {

namespace {

cd unit_phase(double angle) { return std::polar(1.0, angle); }

// sort key: phase in (-pi, pi] ascending, ties by imaginary part
bool eig_less(const cd& a, const cd& b) {
  double pa = std::atan2(a.imag(), a.real());
  double pb = std::atan2(b.imag(), b.real());
  if (pa <= -pi) pa = pi;
  if (pb <= -pi) pb = pi;
  if (pa != pb) return pa < pb;
  return a.imag() < b.imag();
}

// first component with magnitude > 1e-10 made real positive
void fix_phase(Vec6& v) {
  for (int i = 0; i < 6; ++i) {
    if (std::abs(v(i)) > 1e-10) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
}

// Orthonormal basis of the m-dimensional null space of a (numerically)
// rank-(6-m) matrix: full-pivot Gaussian elimination with the rank forced,
// then back-substitution over the free columns and modified Gram-Schmidt.
std::vector<Vec6> nullspace_vectors(Mat6 a, int m) {
  const int nrank = 6 - m;
  std::array<int, 6> colperm{0, 1, 2, 3, 4, 5};
  for (int step = 0; step < nrank; ++step) {
    int pi_ = step, pj = step;
    double best = -1.0;
    for (int i = step; i < 6; ++i)
      for (int j = step; j < 6; ++j)
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          pi_ = i;
          pj = j;
        }
    if (best < 1e-10)
      throw NumericalError("eigenvector extraction: matrix rank below expectation");
    a.row(step).swap(a.row(pi_));
    a.col(step).swap(a.col(pj));
    std::swap(colperm[step], colperm[pj]);
    for (int i = step + 1; i < 6; ++i) {
      cd f = a(i, step) / a(step, step);
      a(i, step) = 0;
      for (int j = step + 1; j < 6; ++j) a(i, j) -= f * a(step, j);
    }
  }
  std::vector<Vec6> basis;
  basis.reserve(m);
  for (int f = 0; f < m; ++f) {
    Vec6 xp = Vec6::Zero();
    xp(nrank + f) = 1.0;
    for (int i = nrank - 1; i >= 0; --i) {
      cd s = 0;
      for (int j = i + 1; j < 6; ++j) s += a(i, j) * xp(j);
      xp(i) = -s / a(i, i);
    }
    Vec6 x;
    for (int j = 0; j < 6; ++j) x(colperm[j]) = xp(j);
    basis.push_back(x);
  }
  // modified Gram-Schmidt
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < i; ++j) basis[i] -= basis[j].dot(basis[i]) * basis[j];
    double nrm = basis[i].norm();
    if (nrm < 1e-8) throw NumericalError("eigenvector extraction: degenerate basis");
    basis[i] /= nrm;
  }
  for (auto& v : basis) fix_phase(v);
  return basis;
}

// cluster eigenvalue candidates within tol; members of a cluster all get the
// representative value (exact +-1 wins, else unit-projected mean)
void cluster_eigenvalues(std::array<cd, 6>& vals, double tol) {
  std::array<int, 6> comp{};
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int i) { return comp[i] == i ? i : comp[i] = find(comp[i]); };
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (std::abs(vals[i] - vals[j]) <= tol) comp[find(i)] = find(j);
  for (int root = 0; root < 6; ++root) {
    if (find(root) != root) continue;
    std::vector<int> members;
    for (int i = 0; i < 6; ++i)
      if (find(i) == root) members.push_back(i);
    cd rep;
    bool has1 = false, hasm1 = false;
    for (int i : members) {
      if (vals[i] == cd(1, 0)) has1 = true;
      if (vals[i] == cd(-1, 0)) hasm1 = true;
    }
    if (has1) {
      rep = cd(1, 0);
    } else if (hasm1) {
      rep = cd(-1, 0);
    } else {
      cd mean = 0;
      for (int i : members) mean += vals[i];
      mean /= static_cast<double>(members.size());
      rep = mean / std::abs(mean);
    }
    for (int i : members) vals[i] = rep;
  }
}

// Rayleigh-quotient polish. Quartic roots inherit the characteristic
// polynomial's conditioning loss near eigenvalue clusters (root error grows
// like coefficient noise over the product of root gaps, which reaches ~1e-6
// when four roots sit within ~1e-3 of each other). Re-anchoring each root on
// the block itself restores eigenvalue accuracy: take the best near-null
// vector at the current estimate, its Rayleigh quotient, project back onto
// the unit circle.
cd polish_root(const Mat6& u, cd lambda) {
  for (int it = 0; it < 3; ++it) {
    Mat6 shifted = u;
    for (int d = 0; d < 6; ++d) shifted(d, d) -= lambda;
    std::vector<Vec6> basis;
    try {
      basis = nullspace_vectors(shifted, 1);
    } catch (const NumericalError&) {
      break;  // rank collapsed early: lambda already sits on a multiple eigenvalue
    }
    cd rq = basis[0].dot(u * basis[0]);
    if (std::abs(rq) < 0.5) break;
    cd next = rq / std::abs(rq);
    bool settled = std::abs(next - lambda) <= 1e-13;
    lambda = next;
    if (settled) break;
  }
  return lambda;
}

// vectors + residuals for an already-sorted eigenvalue list; exact duplicates
// share a null space
void fill_vectors_nullspace(const Mat6& u, EigenSystem& sys) {
  int i = 0;
  while (i < 6) {
    int j = i;
    while (j < 6 && sys.eigenvalues[j] == sys.eigenvalues[i]) ++j;
    int m = j - i;
    Mat6 shifted = u;
    for (int d = 0; d < 6; ++d) shifted(d, d) -= sys.eigenvalues[i];
    auto basis = nullspace_vectors(shifted, m);
    for (int t = 0; t < m; ++t) sys.eigenvectors[i + t] = basis[t];
    i = j;
  }
  for (int t = 0; t < 6; ++t) {
    sys.residuals[t] = (u * sys.eigenvectors[t] - sys.eigenvalues[t] * sys.eigenvectors[t]).norm();
    if (sys.residuals[t] > 1e-6)
      throw NumericalError("eigen decomposition residual exceeds 1e-6");
  }
}

}  // namespace

std::vector<Vec6> dft_state(const WalkState& state) {
  const int n = state.n;
  std::vector<Vec6> out(n);
  for (int k = 0; k < n; ++k) {
    Vec6 acc = Vec6::Zero();
    for (int r = 0; r < n; ++r) {
      cd ph = unit_phase(-2.0 * pi * k * r / n);
      for (int l = 0; l < 3; ++l)
        for (int s = 0; s < 2; ++s)
          acc(2 * l + s) += ph * state.amplitudes(amp_index(l, s, r, n));
    }
    out[k] = acc;
  }
  return out;
}

WalkState idft_state(const std::vector<Vec6>& blocks, int n) {
  if (static_cast<int>(blocks.size()) != n)
    throw InputError("inverse transform expects one 6-vector per momentum index");
  WalkState st;
  st.n = n;
  st.amplitudes = VecX::Zero(6 * n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      cd ph = unit_phase(2.0 * pi * k * r / n);
      for (int l = 0; l < 3; ++l)
        for (int s = 0; s < 2; ++s)
          st.amplitudes(amp_index(l, s, r, n)) += ph * blocks[k](2 * l + s) / double(n);
    }
  }
  return st;
}

Mat6 hop_block_plus(const CoinMatrix& c) {
  // feeds the s=1 strand of coin 0 from position r+1
  Mat6 m = Mat6::Zero();
  for (int lp = 0; lp < 3; ++lp) m(1, 2 * lp + 1) = c(0, lp);
  return m;
}

Mat6 hop_block_minus(const CoinMatrix& c) {
  // feeds the s=0 strand of coin 0 from position r-1
  Mat6 m = Mat6::Zero();
  for (int lp = 0; lp < 3; ++lp) m(0, 2 * lp) = c(0, lp);
  return m;
}

Mat6 hop_block_stay(const CoinMatrix& c) {
  Mat6 m = Mat6::Zero();
  for (int lp = 0; lp < 3; ++lp) {
    m(2, 2 * lp) = c(1, lp);      // coin 1 stays on both strands
    m(3, 2 * lp + 1) = c(1, lp);
    m(4, 2 * lp + 1) = c(2, lp);  // coin 2 swaps the strands in place
    m(5, 2 * lp) = c(2, lp);
  }
  return m;
}

FourierBlock build_Uk(const CoinMatrix& coin, int n, int k) {
  if (n < 3) throw InputError("momentum blocks need n >= 3");
  if (k < 0 || k >= n) throw InputError("momentum index out of range");
  FourierBlock b;
  b.k = k;
  b.n = n;
  cd ep = unit_phase(2.0 * pi * k / n);
  b.matrix = std::conj(ep) * hop_block_minus(coin) + ep * hop_block_plus(coin) +
             hop_block_stay(coin);
  return b;
}

std::array<double, 7> char_poly_coeffs(const Mat6& m) {
  // Faddeev-LeVerrier; the walk blocks have conjugation-symmetric spectra,
  // so the coefficients must come out real
  std::array<cd, 7> c{};
  c[0] = 1.0;
  Mat6 mk = m;
  for (int j = 1; j <= 6; ++j) {
    c[j] = -mk.trace() / double(j);
    if (j < 6) mk = m * (mk + c[j] * Mat6::Identity());
  }
  std::array<double, 7> out{};
  for (int j = 0; j <= 6; ++j) {
    if (std::abs(c[j].imag()) > 1e-9)
      throw NumericalError("characteristic polynomial has non-real coefficients");
    out[j] = c[j].real();
  }
  return out;
}

std::array<double, 5> deflate_unit_pair(const std::array<double, 7>& p) {
  // synthetic division by z^2 - 1
  std::array<double, 5> q{};
  q[0] = p[0];
  q[1] = p[1];
  q[2] = p[2] + p[0];
  q[3] = p[3] + p[1];
  q[4] = p[4] + p[2] + p[0];
  double r1 = p[5] + p[3] + p[1];
  double r0 = p[6] + p[4] + p[2] + p[0];
  if (std::abs(r1) > 1e-10 || std::abs(r0) > 1e-10)
    throw NumericalError("characteristic polynomial not divisible by z^2-1");
  return q;
}

EigenSystem eigen_numeric(const FourierBlock& block) {
  auto sextic = char_poly_coeffs(block.matrix);
  auto quartic = deflate_unit_pair(sextic);
  auto roots = solve_quartic(quartic[1], quartic[2], quartic[3], quartic[4]);
  for (cd& z : roots) z = polish_root(block.matrix, z);

  EigenSystem sys;
  std::array<cd, 6> vals{cd(1, 0), cd(-1, 0), roots[0], roots[1], roots[2], roots[3]};
  cluster_eigenvalues(vals, 1e-6);
  std::stable_sort(vals.begin(), vals.end(), eig_less);
  sys.eigenvalues = vals;
  fill_vectors_nullspace(block.matrix, sys);
  return sys;
}

Vec6 theorem_eigenvector(CoinClass cls, double x, double y, cd L, int n, int k,
                         double& min_denom) {
  cd ep = unit_phase(2.0 * pi * k / n);
  cd em = std::conj(ep);
  Vec6 v;
  cd dp, dm;
  switch (cls) {
    case CoinClass::X: {
      double z = 1.0 - x - y;
      dp = 1.0 - L * x - L * x * ep + L * L * x * ep;
      dm = x - L * x - L * x * em + L * L * em;
      v << L * (L * z + y) / dp, (L * z + y) / dm,
           L * (z + L * y * ep) / dp, (z + L * y * em) / dm,
           L * (x - L * x - L * x * ep + L * L * ep) / dp, 1.0;
      break;
    }
    case CoinClass::Y: {
      double z = 1.0 + x + y;  // rows carry -(1+x+y)
      dp = -1.0 + L * x + L * x * ep + L * L * x * ep;
      dm = -x - L * x - L * x * em + L * L * em;
      v << -L * (L * z + y) / dp, -(L * z + y) / dm,
           L * (z + L * y * ep) / dp, (z + L * y * em) / dm,
           L * (-x - L * x - L * x * ep + L * L * ep) / dp, 1.0;
      break;
    }
    case CoinClass::Z: {
      double z = 1.0 - x - y;
      dp = -1.0 + L * z + L * x * ep + L * L * y * ep;
      dm = -y - L * x - L * em * z + L * L * em;
      v << L * (L - 1.0) * z / dp, (L - 1.0) * z / dm,
           L * (L * ep - 1.0) * x / dp, (L * em - 1.0) * x / dm,
           L * (-y - L * x - L * ep * z + L * L * ep) / dp, 1.0;
      break;
    }
    case CoinClass::W: {
      double z = 1.0 + x + y;
      dp = 1.0 + L * z - L * x * ep + L * L * y * ep;
      dm = y - L * x + L * em * z + L * L * em;
      v << -L * (L + 1.0) * z / dp, -(L + 1.0) * z / dm,
           L * (L * ep + 1.0) * x / dp, (L * em + 1.0) * x / dm,
           L * (y - L * x + L * ep * z + L * L * ep) / dp, 1.0;
      break;
    }
  }
  min_denom = std::min(std::abs(dp), std::abs(dm));
  return v;
}

EigenSystem eigen_closed_form(CoinClass cls, const CoinMatrix& coin, int n, int k) {
  if (coin.cls != cls) throw InputError("coin does not belong to the stated class");
  if (n < 3) throw InputError("momentum blocks need n >= 3");
  if (k < 0 || k >= n) throw InputError("momentum index out of range");
  const double x = coin.x, y = coin.y;
  const double c = std::cos(2.0 * pi * k / n);
  const double s = std::sin(2.0 * pi * k / n);

  // the square-root arguments are nonnegative on the constraint curve; tiny
  // negatives are roundoff and snap to zero
  auto snap_sqrt = [](double d) {
    if (std::abs(d) < 5e-15) return 0.0;
    return std::sqrt(std::max(d, 0.0));
  };
  // cosines algebraically equal to +-1 (perfect-square discriminants) must
  // not be left eps away: sqrt(1-c^2) would blow the error up to ~1e-8
  auto snap_cos = [](double w) {
    w = std::clamp(w, -1.0, 1.0);
    if (1.0 - std::abs(w) <= 1e-12) return w < 0 ? -1.0 : 1.0;
    return w;
  };
  auto from_cos = [&](double w, std::array<cd, 6>& vals, int at) {
    w = snap_cos(w);
    double im = std::sqrt(std::max(0.0, 1.0 - w * w));
    vals[at] = cd(w, im);
    vals[at + 1] = cd(w, -im);
  };

  std::array<cd, 6> vals{cd(-1, 0), cd(1, 0), 0, 0, 0, 0};
  switch (cls) {
    case CoinClass::X: {
      double re34 = (x + 1.0) / 2.0, im34 = snap_sqrt((1.0 - x) * (x + 3.0)) / 2.0;
      double u = x + 2.0 * x * c;
      double re56 = (u - 1.0) / 2.0, im56 = snap_sqrt((1.0 + u) * (3.0 - u)) / 2.0;
      vals[2] = cd(re34, im34);
      vals[3] = cd(re34, -im34);
      vals[4] = cd(re56, im56);
      vals[5] = cd(re56, -im56);
      break;
    }
    case CoinClass::Y: {
      double re34 = (x - 1.0) / 2.0, im34 = snap_sqrt((1.0 + x) * (3.0 - x)) / 2.0;
      double u = x + 2.0 * x * c;
      double re56 = (u + 1.0) / 2.0, im56 = snap_sqrt((1.0 - u) * (3.0 + u)) / 2.0;
      vals[2] = cd(re34, im34);
      vals[3] = cd(re34, -im34);
      vals[4] = cd(re56, im56);
      vals[5] = cd(re56, -im56);
      break;
    }
    case CoinClass::Z: {
      double mid = (1.0 - x - y + x * c) / 2.0;
      double root = snap_sqrt(1.0 + 2.0 * y * c + y * y - x * x * s * s) / 2.0;
      from_cos(mid + root, vals, 2);
      from_cos(mid - root, vals, 4);
      break;
    }
    case CoinClass::W: {
      double mid = (-1.0 - x - y + x * c) / 2.0;
      double root = snap_sqrt(1.0 - 2.0 * y * c + y * y - x * x * s * s) / 2.0;
      from_cos(mid + root, vals, 2);
      from_cos(mid - root, vals, 4);
      break;
    }
  }

  std::stable_sort(vals.begin(), vals.end(), eig_less);
  EigenSystem sys;
  sys.eigenvalues = vals;

  // eigenvectors: theorem formula where its denominators allow, null space
  // otherwise (degenerate eigenvalues and the special parameter points)
  Mat6 u = build_Uk(coin, n, k).matrix;
  int i = 0;
  while (i < 6) {
    int j = i;
    while (j < 6 && std::abs(sys.eigenvalues[j] - sys.eigenvalues[i]) <= 1e-8) ++j;
    int m = j - i;
    bool used_formula = false;
    if (m == 1) {
      double min_denom = 0.0;
      Vec6 v = theorem_eigenvector(cls, x, y, sys.eigenvalues[i], n, k, min_denom);
      if (min_denom > 1e-8) {
        v /= v.norm();
        fix_phase(v);
        sys.eigenvectors[i] = v;
        used_formula = true;
      }
    }
    if (!used_formula) {
      Mat6 shifted = u;
      for (int d = 0; d < 6; ++d) shifted(d, d) -= sys.eigenvalues[i];
      auto basis = nullspace_vectors(shifted, m);
      for (int t = 0; t < m; ++t) sys.eigenvectors[i + t] = basis[t];
    }
    i = j;
  }
  for (int t = 0; t < 6; ++t) {
    sys.residuals[t] = (u * sys.eigenvectors[t] - sys.eigenvalues[t] * sys.eigenvectors[t]).norm();
    if (sys.residuals[t] > 1e-6)
      throw NumericalError("closed-form eigenvector residual exceeds 1e-6");
  }
  return sys;
}

std::vector<FullEigenPair> full_spectrum(const CoinMatrix& coin, int n, bool parallel) {
  if (n < 3) throw InputError("full spectrum needs n >= 3");
  std::vector<EigenSystem> blocks(n);
  parallel_for(0, n, parallel, [&](int k) { blocks[k] = eigen_numeric(build_Uk(coin, n, k)); });

  MatX u = build_evolution(coin, n).matrix;
  std::vector<FullEigenPair> out;
  out.reserve(6 * n);
  const double inv_sqrt_n = 1.0 / std::sqrt(double(n));
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < 6; ++j) {
      FullEigenPair pair;
      pair.k = k;
      pair.j = j + 1;
      pair.lambda = blocks[k].eigenvalues[j];
      pair.vec = VecX::Zero(6 * n);
      for (int r = 0; r < n; ++r) {
        cd ph = unit_phase(2.0 * pi * k * r / n) * inv_sqrt_n;
        for (int l = 0; l < 3; ++l)
          for (int s = 0; s < 2; ++s)
            pair.vec(amp_index(l, s, r, n)) = blocks[k].eigenvectors[j](2 * l + s) * ph;
      }
      double res = (u * pair.vec - pair.lambda * pair.vec).norm();
      if (res > 1e-8) throw NumericalError("full-spectrum eigenpair residual exceeds 1e-8");
      out.push_back(std::move(pair));
    }
  }
  return out;
}

}  // namespace dqw
