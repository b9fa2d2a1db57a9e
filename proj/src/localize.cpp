#include "dqw/localize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dqw/fourier.hpp"
#include "dqw/parallel.hpp"

namespace dqw {

InitialCondition make_init_basis(int l, int s0, int r0) {
  if (l < 0 || l > 2) throw InputError("coin basis index must be 0, 1 or 2");
  InitialCondition init;
  init.coin_amplitudes = {cd(0, 0), cd(0, 0), cd(0, 0)};
  init.coin_amplitudes[l] = cd(1, 0);
  init.s0 = s0;
  init.r0 = r0;
  return init;
}

InitialCondition make_init_uniform(int s0, int r0) {
  const double a = 1.0 / std::sqrt(3.0);
  InitialCondition init;
  init.coin_amplitudes = {cd(a, 0), cd(a, 0), cd(a, 0)};
  init.s0 = s0;
  init.r0 = r0;
  return init;
}

WalkState initial_state(const InitialCondition& init, int n) {
  if (n < 3) throw InputError("walk needs n >= 3");
  if (init.s0 != 0 && init.s0 != 1) throw InputError("s0 must be 0 or 1");
  if (init.r0 < 0 || init.r0 >= n) throw InputError("r0 outside [0, n)");
  double norm2 = 0.0;
  for (const cd& a : init.coin_amplitudes) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > 1e-12)
    throw InputError("coin amplitudes must have unit norm within 1e-12");
  WalkState state;
  state.n = n;
  state.amplitudes = VecX::Zero(6 * n);
  for (int l = 0; l < 3; ++l)
    state.amplitudes(amp_index(l, init.s0, init.r0, n)) = init.coin_amplitudes[l];
  return state;
}

TimeAveragedResult time_avg_direct(const CoinMatrix& coin, int n, const InitialCondition& init,
                                   long T) {
  if (T < 1) throw InputError("T must be at least 1");
  WalkState state = initial_state(init, n);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(2 * n);
  for (long t = 0; t < T; ++t) {
    acc += position_probabilities(state).p;
    if (t + 1 < T) state = step_local(state, coin);
  }
  TimeAveragedResult res;
  res.n = n;
  res.T = T;
  res.method = AvgMethod::Direct;
  res.pbar = acc / double(T);
  return res;
}

namespace {

// per momentum sector: eigenvalues, eigenvectors and the overlap
// c_{k,j} = <omega_{k,j} | Psi(k, 0)> with the transformed initial state
struct SpectralData {
  std::vector<EigenSystem> sys;
  std::vector<std::array<cd, 6>> c;
};

SpectralData decompose_with_overlaps(const CoinMatrix& coin, int n,
                                     const InitialCondition& init) {
  initial_state(init, n);  // runs the validation
  Vec6 chi = Vec6::Zero();
  for (int l = 0; l < 3; ++l) chi(2 * l + init.s0) = init.coin_amplitudes[l];
  SpectralData data;
  data.sys.reserve(n);
  data.c.reserve(n);
  for (int k = 0; k < n; ++k) {
    EigenSystem sys = eigen_numeric(build_Uk(coin, n, k));
    // Psi(k,0) = e^{-i 2 pi k r0 / N} chi for a walker localized at r0
    cd phase = std::polar(1.0, -2.0 * pi * double(k) * double(init.r0) / double(n));
    std::array<cd, 6> ck;
    for (int j = 0; j < 6; ++j) ck[j] = phase * sys.eigenvectors[j].dot(chi);
    data.sys.push_back(std::move(sys));
    data.c.push_back(ck);
  }
  return data;
}

}  // namespace

TimeAveragedResult time_avg_spectral(const CoinMatrix& coin, int n, const InitialCondition& init,
                                     long T) {
  if (T < 1) throw InputError("T must be at least 1");
  SpectralData data = decompose_with_overlaps(coin, n, init);

  // restructure the (k,k') double sum by kappa = (k - k') mod N, then undo
  // the transform once per kappa instead of once per pair
  std::vector<std::array<cd, 2>> f(n, {cd(0, 0), cd(0, 0)});
  for (int k = 0; k < n; ++k) {
    for (int kappa = 0; kappa < n; ++kappa) {
      int k2 = (k - kappa + n) % n;
      const EigenSystem& a = data.sys[k];
      const EigenSystem& b = data.sys[k2];
      for (int j = 0; j < 6; ++j) {
        if (std::abs(data.c[k][j]) < 1e-300) continue;
        for (int j2 = 0; j2 < 6; ++j2) {
          cd rho = a.eigenvalues[j] * std::conj(b.eigenvalues[j2]);
          cd avg;
          if (std::abs(rho - cd(1, 0)) <= 1e-12) {
            avg = cd(1, 0);
          } else {
            cd rho_T = std::polar(std::pow(std::abs(rho), double(T)), double(T) * std::arg(rho));
            avg = (cd(1, 0) - rho_T) / (double(T) * (cd(1, 0) - rho));
          }
          cd weight = avg * data.c[k][j] * std::conj(data.c[k2][j2]);
          for (int s = 0; s < 2; ++s) {
            cd inner(0, 0);
            for (int l = 0; l < 3; ++l)
              inner += a.eigenvectors[j](2 * l + s) * std::conj(b.eigenvectors[j2](2 * l + s));
            f[kappa][s] += weight * inner;
          }
        }
      }
    }
  }

  TimeAveragedResult res;
  res.n = n;
  res.T = T;
  res.method = AvgMethod::Spectral;
  res.pbar = Eigen::VectorXd::Zero(2 * n);
  for (int s = 0; s < 2; ++s) {
    for (int r = 0; r < n; ++r) {
      cd sum(0, 0);
      for (int kappa = 0; kappa < n; ++kappa)
        sum += std::polar(1.0, 2.0 * pi * double(kappa) * double(r) / double(n)) * f[kappa][s];
      res.pbar(vertex_index(s, r, n)) = sum.real() / (double(n) * double(n));
    }
  }
  return res;
}

TimeAveragedResult limit_time_avg(const CoinMatrix& coin, int n, const InitialCondition& init) {
  SpectralData data = decompose_with_overlaps(coin, n, init);

  struct Entry {
    int k;
    cd lambda;
    cd c;
    Vec6 omega;
    double phase;
  };
  std::vector<Entry> entries;
  entries.reserve(6 * n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < 6; ++j) {
      const cd lam = data.sys[k].eigenvalues[j];
      entries.push_back({k, lam, data.c[k][j], data.sys[k].eigenvectors[j],
                         std::atan2(lam.imag(), lam.real())});
    }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.phase < b.phase; });

  // group eigenvalues equal within 1e-8 across every (k, j): adjacent in
  // phase order, plus the wrap between the two ends of (-pi, pi]
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < int(entries.size()); ++i) {
    if (groups.empty() ||
        std::abs(entries[i].lambda - entries[groups.back().back()].lambda) > 1e-8)
      groups.emplace_back();
    groups.back().push_back(i);
  }
  if (groups.size() > 1 &&
      std::abs(entries[groups.front().front()].lambda - entries[groups.back().back()].lambda) <=
          1e-8) {
    for (int idx : groups.back()) groups.front().push_back(idx);
    groups.pop_back();
  }

  TimeAveragedResult res;
  res.n = n;
  res.T = 0;
  res.method = AvgMethod::Limit;
  res.pbar = Eigen::VectorXd::Zero(2 * n);
  for (const auto& g : groups) {
    for (int r = 0; r < n; ++r) {
      std::array<std::array<cd, 3>, 2> acc{};
      for (int idx : g) {
        const Entry& e = entries[idx];
        cd ph = std::polar(1.0, 2.0 * pi * double(e.k) * double(r) / double(n)) * e.c;
        for (int l = 0; l < 3; ++l)
          for (int s = 0; s < 2; ++s) acc[s][l] += ph * e.omega(2 * l + s);
      }
      for (int s = 0; s < 2; ++s) {
        double p = 0.0;
        for (int l = 0; l < 3; ++l) p += std::norm(acc[s][l]);
        res.pbar(vertex_index(s, r, n)) += p;
      }
    }
  }
  res.pbar /= double(n) * double(n);

  // strict-diagonal variant for comparison; constant in r for each ring
  std::array<double, 2> diag{0.0, 0.0};
  for (const Entry& e : entries) {
    double c2 = std::norm(e.c);
    for (int s = 0; s < 2; ++s) {
      double w = 0.0;
      for (int l = 0; l < 3; ++l) w += std::norm(e.omega(2 * l + s));
      diag[s] += c2 * w;
    }
  }
  Eigen::VectorXd pd = Eigen::VectorXd::Zero(2 * n);
  for (int s = 0; s < 2; ++s)
    for (int r = 0; r < n; ++r) pd(vertex_index(s, r, n)) = diag[s] / (double(n) * double(n));
  res.pbar_diagonal = pd;
  return res;
}

SweepResult sweep_theta(CoinClass cls, int grid, int n, const InitialCondition& init, long T,
                        const std::vector<DihedralVertex>& vertices, bool parallel) {
  if (grid < 2) throw InputError("theta grid needs at least 2 points");
  if (vertices.empty()) throw InputError("sweep needs at least one vertex");
  for (const auto& v : vertices) vertex_index(v.s, v.r, n);  // validates

  SweepResult res;
  res.axis = SweepAxis::Theta;
  res.vertices = vertices;
  res.points.resize(grid);
  parallel_for(0, grid, parallel, [&](int i) {
    double theta = -pi + 2.0 * pi * double(i) / double(grid - 1);
    CoinMatrix coin = coin_from_theta(cls, theta);
    TimeAveragedResult avg = time_avg_spectral(coin, n, init, T);
    SweepPoint pt;
    pt.parameter = theta;
    pt.pbar_at_vertices.reserve(vertices.size());
    for (const auto& v : vertices) pt.pbar_at_vertices.push_back(avg.pbar(vertex_index(v.s, v.r, n)));
    res.points[i] = std::move(pt);
  });
  return res;
}

SweepResult sweep_n(CoinClass cls, double theta, const std::vector<int>& ns,
                    const InitialCondition& init, long T) {
  if (ns.empty()) throw InputError("sweep needs at least one ring size");
  std::vector<int> sorted = ns;
  std::sort(sorted.begin(), sorted.end());
  for (int n : sorted)
    if (n < 3) throw InputError("every ring size must be at least 3");

  CoinMatrix coin = coin_from_theta(cls, theta);
  SweepResult res;
  res.axis = SweepAxis::N;
  res.vertices = {DihedralVertex{init.s0, init.r0}};
  for (int n : sorted) {
    TimeAveragedResult avg = time_avg_spectral(coin, n, init, T);
    SweepPoint pt;
    pt.parameter = double(n);
    pt.pbar_at_vertices = {avg.pbar(vertex_index(init.s0, init.r0, n))};
    res.points.push_back(std::move(pt));
  }
  return res;
}

}  // namespace dqw
