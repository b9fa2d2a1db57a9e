#pragma once

#include <optional>

#include "dqw/cayley.hpp"
#include "dqw/coin.hpp"
#include "dqw/types.hpp"

namespace dqw {

// State on the coin (x) reflection (x) rotation space, dimension 6N.
// Component order: index(l,s,r) = l*2N + s*N + r, coin l in {0,1,2}.
struct WalkState {
  int n = 0;
  VecX amplitudes;
};

int amp_index(int l, int s, int r, int n);

WalkState make_basis_state(int n, int l, int s, int r);

struct EvolutionOperator {
  int n = 0;
  bool shift_only = false;
  std::optional<CoinMatrix> coin;  // empty for the bare shift
  MatX matrix;                     // 6N x 6N
};

struct PositionDistribution {
  int time = 0;
  Eigen::VectorXd p;  // length 2N, indexed by vertex_index(s, r)
};

// Conditional shift: coin 0 moves along the cycle orientation of its ring
// (s=0: r+1, s=1: r-1), coin 1 stays, coin 2 swaps rings at fixed r.
EvolutionOperator build_shift(int n);

// U = S (C (x) I_2 (x) I_N).
EvolutionOperator build_evolution(const CoinMatrix& coin, int n);

WalkState step_dense(const WalkState& state, const EvolutionOperator& op);

// One step in O(N) through the three 6x6 hop blocks; identical to step_dense.
WalkState step_local(const WalkState& state, const CoinMatrix& coin);

PositionDistribution position_probabilities(const WalkState& state, int time = 0);

WalkState evolve_t(const WalkState& state0, const EvolutionOperator& op, long t);

// State snapshot CSV: columns l,s,r,re,im.
std::string state_to_csv(const WalkState& state);

}  // namespace dqw
