#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "dqw/coin.hpp"
#include "dqw/evolve.hpp"
#include "dqw/types.hpp"

namespace dqwtest {

using dqw::cd;

// one fixed-seed generator per test process; suites run in registration
// order so draws are reproducible
inline std::mt19937& rng() {
  static std::mt19937 gen(20240817u);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

inline int uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng());
}

inline dqw::CoinClass random_class() {
  static const dqw::CoinClass all[4] = {dqw::CoinClass::X, dqw::CoinClass::Y, dqw::CoinClass::Z,
                                        dqw::CoinClass::W};
  return all[uniform_int(0, 3)];
}

inline dqw::CoinMatrix random_coin() {
  return dqw::coin_from_theta(random_class(), uniform(-dqw::pi, dqw::pi));
}

inline dqw::WalkState random_state(int n) {
  dqw::WalkState st;
  st.n = n;
  st.amplitudes = dqw::VecX(6 * n);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 6 * n; ++i) st.amplitudes(i) = cd(g(rng()), g(rng()));
  st.amplitudes /= st.amplitudes.norm();
  return st;
}

// greedy nearest-unused matching; adequate because the multisets under test
// cluster far tighter than their separations
inline double pairing_distance(const std::vector<cd>& a, std::vector<cd> b) {
  if (a.size() != b.size()) return 1e300;
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const cd& v : a) {
    double best = 1e300;
    size_t arg = 0;
    for (size_t i = 0; i < b.size(); ++i) {
      if (used[i]) continue;
      double d = std::abs(v - b[i]);
      if (d < best) {
        best = d;
        arg = i;
      }
    }
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

inline std::vector<cd> dense_eigenvalues(const dqw::MatX& m) {
  Eigen::ComplexEigenSolver<dqw::MatX> es(m, false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

}  // namespace dqwtest
