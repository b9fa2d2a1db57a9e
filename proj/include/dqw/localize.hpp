#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dqw/cayley.hpp"
#include "dqw/coin.hpp"
#include "dqw/evolve.hpp"
#include "dqw/types.hpp"

namespace dqw {

// Walker starts at vertex (s0, r0) with the given coin-space amplitudes.
struct InitialCondition {
  std::array<cd, 3> coin_amplitudes{cd(1, 0), cd(0, 0), cd(0, 0)};
  int s0 = 0;
  int r0 = 0;
  friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

InitialCondition make_init_basis(int l, int s0, int r0);
InitialCondition make_init_uniform(int s0, int r0);  // (|0>+|1>+|2>)/sqrt3

// Validates the invariants (unit norm, ranges) and builds the 6N state.
WalkState initial_state(const InitialCondition& init, int n);

enum class AvgMethod { Direct, Spectral, Limit };

struct TimeAveragedResult {
  int n = 0;
  long T = 0;  // 0 marks the T->infinity limit
  AvgMethod method = AvgMethod::Direct;
  Eigen::VectorXd pbar;  // length 2N by vertex_index(s, r)
  // Simplified diagonal-only variant (keeps only (k,j) = (k',j') terms, so
  // cross-terms between equal eigenvalues of distinct pairs are dropped and
  // the value is r-independent per ring); reported by limit_time_avg for
  // comparison.
  std::optional<Eigen::VectorXd> pbar_diagonal;
};

// (1/T) sum_{t=0}^{T-1} P(s,r,t) by direct stepping.
TimeAveragedResult time_avg_direct(const CoinMatrix& coin, int n, const InitialCondition& init,
                                   long T);

// Same quantity through the eigen-decomposition of the momentum blocks; the
// time average of (lambda conj(lambda'))^t is an exact geometric sum, so the
// cost is independent of T.
TimeAveragedResult time_avg_spectral(const CoinMatrix& coin, int n, const InitialCondition& init,
                                     long T);

// T->infinity value: eigenvalues equal within 1e-8 across all (k,j) are
// grouped and their cross-terms summed coherently.
TimeAveragedResult limit_time_avg(const CoinMatrix& coin, int n, const InitialCondition& init);

enum class SweepAxis { Theta, N };

struct SweepPoint {
  double parameter = 0.0;               // theta or N
  std::vector<double> pbar_at_vertices;  // aligned with SweepResult::vertices
};

struct SweepResult {
  SweepAxis axis = SweepAxis::Theta;
  std::vector<DihedralVertex> vertices;
  std::vector<SweepPoint> points;  // ascending parameter
};

// Equidistant theta grid over [-pi, pi] (endpoints included), time-averaged
// probability at the requested vertices per grid point.
SweepResult sweep_theta(CoinClass cls, int grid, int n, const InitialCondition& init, long T,
                        const std::vector<DihedralVertex>& vertices, bool parallel = false);

// Time-averaged probability at the initial vertex across ring sizes.
SweepResult sweep_n(CoinClass cls, double theta, const std::vector<int>& ns,
                    const InitialCondition& init, long T);

}  // namespace dqw
