#include "dqw/evolve.hpp"

#include <cmath>
#include <sstream>

#include "dqw/fourier.hpp"
#include "dqw/io.hpp"

namespace dqw {

int amp_index(int l, int s, int r, int n) {
  if (l < 0 || l > 2) throw InputError("coin index out of range");
  if (s != 0 && s != 1) throw InputError("reflection bit must be 0 or 1");
  if (r < 0 || r >= n) throw InputError("rotation index out of range");
  return l * 2 * n + s * n + r;
}

WalkState make_basis_state(int n, int l, int s, int r) {
  WalkState st;
  st.n = n;
  st.amplitudes = VecX::Zero(6 * n);
  st.amplitudes(amp_index(l, s, r, n)) = cd(1, 0);
  return st;
}

EvolutionOperator build_shift(int n) {
  if (n < 3) throw InputError("shift operator needs n >= 3");
  EvolutionOperator op;
  op.n = n;
  op.shift_only = true;
  op.matrix = MatX::Zero(6 * n, 6 * n);
  for (int r = 0; r < n; ++r) {
    // coin 0: advance along the ring orientation (s=0 forward, s=1 backward)
    op.matrix(amp_index(0, 0, (r + 1) % n, n), amp_index(0, 0, r, n)) = 1;
    op.matrix(amp_index(0, 1, (r - 1 + n) % n, n), amp_index(0, 1, r, n)) = 1;
    // coin 1: stay
    op.matrix(amp_index(1, 0, r, n), amp_index(1, 0, r, n)) = 1;
    op.matrix(amp_index(1, 1, r, n), amp_index(1, 1, r, n)) = 1;
    // coin 2: switch rings
    op.matrix(amp_index(2, 1, r, n), amp_index(2, 0, r, n)) = 1;
    op.matrix(amp_index(2, 0, r, n), amp_index(2, 1, r, n)) = 1;
  }
  return op;
}

EvolutionOperator build_evolution(const CoinMatrix& coin, int n) {
  EvolutionOperator shift = build_shift(n);
  EvolutionOperator op;
  op.n = n;
  op.shift_only = false;
  op.coin = coin;
  // C (x) I_2 (x) I_N maps (l,s,r) -> sum_l' C(l',l) |l',s,r>
  MatX cx = MatX::Zero(6 * n, 6 * n);
  for (int lp = 0; lp < 3; ++lp)
    for (int l = 0; l < 3; ++l) {
      if (coin(lp, l) == 0.0) continue;
      for (int s = 0; s < 2; ++s)
        for (int r = 0; r < n; ++r)
          cx(amp_index(lp, s, r, n), amp_index(l, s, r, n)) = coin(lp, l);
    }
  op.matrix = shift.matrix * cx;
  return op;
}

WalkState step_dense(const WalkState& state, const EvolutionOperator& op) {
  if (state.n != op.n || state.amplitudes.size() != op.matrix.rows())
    throw InputError("state and operator dimensions disagree");
  WalkState out;
  out.n = state.n;
  out.amplitudes = op.matrix * state.amplitudes;
  return out;
}

WalkState step_local(const WalkState& state, const CoinMatrix& coin) {
  const int n = state.n;
  WalkState out;
  out.n = n;
  out.amplitudes = VecX::Zero(6 * n);
  // gather the 6-vector at r, apply the coin rows, scatter per Eq. 5 targets
  for (int r = 0; r < n; ++r) {
    cd a[6], b[6];
    for (int l = 0; l < 3; ++l)
      for (int s = 0; s < 2; ++s) a[2 * l + s] = state.amplitudes(amp_index(l, s, r, n));
    for (int l = 0; l < 3; ++l)
      for (int s = 0; s < 2; ++s) {
        cd acc = 0;
        for (int lp = 0; lp < 3; ++lp) acc += coin(l, lp) * a[2 * lp + s];
        b[2 * l + s] = acc;
      }
    out.amplitudes(amp_index(0, 0, (r + 1) % n, n)) += b[0];
    out.amplitudes(amp_index(0, 1, (r - 1 + n) % n, n)) += b[1];
    out.amplitudes(amp_index(1, 0, r, n)) += b[2];
    out.amplitudes(amp_index(1, 1, r, n)) += b[3];
    out.amplitudes(amp_index(2, 1, r, n)) += b[4];  // ring switch
    out.amplitudes(amp_index(2, 0, r, n)) += b[5];
  }
  return out;
}

PositionDistribution position_probabilities(const WalkState& state, int time) {
  const int n = state.n;
  PositionDistribution d;
  d.time = time;
  d.p = Eigen::VectorXd::Zero(2 * n);
  for (int l = 0; l < 3; ++l)
    for (int s = 0; s < 2; ++s)
      for (int r = 0; r < n; ++r)
        d.p(vertex_index(s, r, n)) += std::norm(state.amplitudes(amp_index(l, s, r, n)));
  return d;
}

WalkState evolve_t(const WalkState& state0, const EvolutionOperator& op, long t) {
  if (t < 0) throw InputError("step count must be nonnegative");
  WalkState st = state0;
  for (long i = 0; i < t; ++i) st = step_dense(st, op);
  return st;
}

std::string state_to_csv(const WalkState& state) {
  std::ostringstream os;
  os << "l,s,r,re,im\n";
  for (int l = 0; l < 3; ++l)
    for (int s = 0; s < 2; ++s)
      for (int r = 0; r < state.n; ++r) {
        cd v = state.amplitudes(amp_index(l, s, r, state.n));
        os << l << "," << s << "," << r << "," << fmt_g17(v.real()) << "," << fmt_g17(v.imag())
           << "\n";
      }
  return os.str();
}

}  // namespace dqw
