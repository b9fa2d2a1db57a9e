#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "dqw/evolve.hpp"
#include "dqw/fourier.hpp"
#include "helpers.hpp"

using namespace dqw;

namespace {

std::vector<cd> eig_vector(const EigenSystem& sys) {
  return std::vector<cd>(sys.eigenvalues.begin(), sys.eigenvalues.end());
}

// elementary symmetric polynomials of the dense eigenvalues give the
// characteristic coefficients: c_i = (-1)^i e_i
std::array<cd, 7> coeffs_from_eigenvalues(const std::vector<cd>& lam) {
  std::array<cd, 7> c{};
  c[0] = 1;
  for (cd z : lam) {
    for (int i = 6; i >= 1; --i) c[i] = c[i] - z * c[i - 1];
  }
  return c;
}

}  // namespace

TEST_SUITE("fourier") {

TEST_CASE("transform of a state localized at r=0 is flat") {
  WalkState st = make_basis_state(5, 2, 1, 0);
  auto blocks = dft_state(st);
  REQUIRE(blocks.size() == 5);
  for (const Vec6& b : blocks) {
    for (int i = 0; i < 6; ++i) {
      cd want = (i == 2 * 2 + 1) ? cd(1, 0) : cd(0, 0);
      CHECK(std::abs(b(i) - want) <= 1e-12);
    }
  }
}

TEST_CASE("localization at r=2 shows as a momentum phase") {
  WalkState st = make_basis_state(4, 0, 0, 2);
  auto blocks = dft_state(st);
  // k=1: e^{-i 2 pi * 2 / 4} = -1
  CHECK(std::abs(blocks[1](0) - cd(-1, 0)) <= 1e-12);
  CHECK(std::abs(blocks[2](0) - cd(1, 0)) <= 1e-12);
}

TEST_CASE("transform round trip") {
  for (int trial = 0; trial < 20; ++trial) {
    int n = dqwtest::uniform_int(3, 24);
    WalkState st = dqwtest::random_state(n);
    WalkState back = idft_state(dft_state(st), n);
    CHECK((back.amplitudes - st.amplitudes).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("inverse transform validates the block count") {
  std::vector<Vec6> blocks(4, Vec6::Zero());
  CHECK_THROWS_AS(idft_state(blocks, 5), InputError);
}

TEST_CASE("single momentum mode spreads uniformly over the ring") {
  const int n = 6;
  std::vector<Vec6> blocks(n, Vec6::Zero());
  blocks[2](3) = cd(1, 0);
  WalkState st = idft_state(blocks, n);
  for (int r = 0; r < n; ++r) {
    CHECK(std::abs(std::abs(st.amplitudes(amp_index(1, 1, r, n))) - 1.0 / n) <= 1e-12);
  }
}

TEST_CASE("transform is linear") {
  const int n = 7;
  WalkState a = dqwtest::random_state(n), b = dqwtest::random_state(n);
  cd ca(0.3, -0.8), cb(-1.1, 0.25);
  WalkState mix;
  mix.n = n;
  mix.amplitudes = ca * a.amplitudes + cb * b.amplitudes;
  auto fa = dft_state(a), fb = dft_state(b), fm = dft_state(mix);
  for (int k = 0; k < n; ++k)
    CHECK((fm[k] - ca * fa[k] - cb * fb[k]).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("momentum block at k=0 is the sum of the hop blocks") {
  CoinMatrix c = coin_from_theta(CoinClass::Z, 0.9);
  Mat6 want = hop_block_plus(c) + hop_block_minus(c) + hop_block_stay(c);
  FourierBlock blk = build_Uk(c, 8, 0);
  CHECK((blk.matrix - want).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(blk.k == 0);
  CHECK(blk.n == 8);
}

TEST_CASE("momentum phases attach to the expected rows") {
  // grover coin, n=4, k=1: the (0,0) entry is c(0,0) e^{-i pi/2} = i/3
  CoinMatrix g = coin_from_theta(CoinClass::X, pi);
  FourierBlock blk = build_Uk(g, 4, 1);
  CHECK(std::abs(blk.matrix(0, 0) - cd(0, 1.0 / 3)) <= 1e-12);
  // row 1 carries the conjugate phase: c(0,0) e^{+i pi/2} on column 1
  CHECK(std::abs(blk.matrix(1, 1) - cd(0, -1.0 / 3)) <= 1e-12);
}

TEST_CASE("momentum blocks are unitary") {
  for (int trial = 0; trial < 40; ++trial) {
    CoinMatrix c = dqwtest::random_coin();
    int n = dqwtest::uniform_int(3, 16);
    int k = dqwtest::uniform_int(0, n - 1);
    Mat6 m = build_Uk(c, n, k).matrix;
    CHECK((m.adjoint() * m - Mat6::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("momentum index validation") {
  CoinMatrix c = coin_from_theta(CoinClass::X, 1.0);
  CHECK_THROWS_AS(build_Uk(c, 5, -1), InputError);
  CHECK_THROWS_AS(build_Uk(c, 5, 5), InputError);
  CHECK_THROWS_AS(build_Uk(c, 2, 0), InputError);
}

TEST_CASE("characteristic coefficients match the dense eigenvalue products") {
  for (int trial = 0; trial < 25; ++trial) {
    CoinMatrix c = dqwtest::random_coin();
    int n = dqwtest::uniform_int(3, 12);
    int k = dqwtest::uniform_int(0, n - 1);
    Mat6 m = build_Uk(c, n, k).matrix;
    auto got = char_poly_coeffs(m);
    MatX mx = m;
    auto want = coeffs_from_eigenvalues(dqwtest::dense_eigenvalues(mx));
    for (int i = 0; i < 7; ++i) {
      CHECK(std::abs(got[i] - want[i].real()) <= 1e-10);
      CHECK(std::abs(want[i].imag()) <= 1e-10);
    }
  }
}

TEST_CASE("unit pair deflation multiplies back to the sextic") {
  const CoinClass classes[4] = {CoinClass::X, CoinClass::Y, CoinClass::Z, CoinClass::W};
  for (CoinClass cls : classes) {
    for (int i = 0; i < 12; ++i) {
      double theta = -pi + (2 * pi * i) / 11.0;
      CoinMatrix c = coin_from_theta(cls, theta);
      auto sext = char_poly_coeffs(build_Uk(c, 9, 4).matrix);
      auto q = deflate_unit_pair(sext);
      // (z^2 - 1)(q0 z^4 + q1 z^3 + q2 z^2 + q3 z + q4)
      double prod[7] = {q[0], q[1], q[2] - q[0], q[3] - q[1], q[4] - q[2], -q[3], -q[4]};
      for (int j = 0; j < 7; ++j) CHECK(std::abs(prod[j] - sext[j]) <= 1e-10);
    }
  }
  // a polynomial without the (z^2-1) factor must be rejected
  std::array<double, 7> bogus{1, 0, 0, 0, 0, 0, 0.5};
  CHECK_THROWS_AS(deflate_unit_pair(bogus), NumericalError);
}

TEST_CASE("closed-form spectrum of the grover walk at k=0") {
  CoinMatrix g = coin_from_theta(CoinClass::X, pi);
  EigenSystem sys = eigen_closed_form(CoinClass::X, g, 5, 0);
  const double s8 = 2.0 * std::sqrt(2.0) / 3.0;
  std::vector<cd> want{cd(1, 0),  cd(-1, 0),          cd(-1, 0),
                       cd(-1, 0), cd(1.0 / 3.0, s8), cd(1.0 / 3.0, -s8)};
  CHECK(dqwtest::pairing_distance(eig_vector(sys), want) <= 1e-12);
}

TEST_CASE("closed-form spectrum of the identity coin walk") {
  CoinMatrix id = coin_from_theta(CoinClass::X, 0.0);
  const int n = 8, k = 3;
  EigenSystem sys = eigen_closed_form(CoinClass::X, id, n, k);
  cd w = std::polar(1.0, 2 * pi * k / n);
  std::vector<cd> want{cd(1, 0), cd(1, 0), cd(1, 0), cd(-1, 0), w, std::conj(w)};
  CHECK(dqwtest::pairing_distance(eig_vector(sys), want) <= 1e-12);
}

TEST_CASE("closed-form spectrum of the negated identity coin") {
  CoinMatrix mi = coin_from_theta(CoinClass::Y, pi);
  EigenSystem sys = eigen_closed_form(CoinClass::Y, mi, 6, 0);
  std::vector<cd> want{cd(1, 0), cd(-1, 0), cd(-1, 0), cd(-1, 0), cd(-1, 0), cd(-1, 0)};
  CHECK(dqwtest::pairing_distance(eig_vector(sys), want) <= 1e-12);
}

TEST_CASE("closed form rejects a coin from another class") {
  CoinMatrix g = coin_from_theta(CoinClass::X, pi);
  CHECK_THROWS_AS(eigen_closed_form(CoinClass::Y, g, 5, 0), InputError);
}

TEST_CASE("numeric and closed-form spectra agree on a parameter grid") {
  const CoinClass classes[4] = {CoinClass::X, CoinClass::Y, CoinClass::Z, CoinClass::W};
  for (CoinClass cls : classes) {
    for (int i = 0; i < 15; ++i) {
      double theta = -pi + 1e-3 + (2 * pi - 2e-3) * i / 14.0;
      CoinMatrix c = coin_from_theta(cls, theta);
      for (int k = 0; k < 7; ++k) {
        EigenSystem num = eigen_numeric(build_Uk(c, 7, k));
        EigenSystem cf = eigen_closed_form(cls, c, 7, k);
        CHECK(dqwtest::pairing_distance(eig_vector(num), eig_vector(cf)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("numeric eigensystem invariants") {
  for (int trial = 0; trial < 30; ++trial) {
    CoinMatrix c = dqwtest::random_coin();
    int n = dqwtest::uniform_int(3, 14);
    int k = dqwtest::uniform_int(0, n - 1);
    FourierBlock blk = build_Uk(c, n, k);
    EigenSystem sys = eigen_numeric(blk);

    // all on the unit circle, residuals small, block closed under conjugation
    for (int j = 0; j < 6; ++j) {
      CHECK(std::abs(std::abs(sys.eigenvalues[j]) - 1.0) <= 1e-10);
      CHECK(sys.residuals[j] <= 1e-9);
      CHECK(std::abs(sys.eigenvectors[j].norm() - 1.0) <= 1e-10);
      double best = 1e300;
      for (int m = 0; m < 6; ++m)
        best = std::min(best, std::abs(std::conj(sys.eigenvalues[j]) - sys.eigenvalues[m]));
      CHECK(best <= 1e-8);
    }
    // phase sorted ascending in (-pi, pi]
    for (int j = 0; j + 1 < 6; ++j) {
      double pa = std::arg(sys.eigenvalues[j]), pb = std::arg(sys.eigenvalues[j + 1]);
      CHECK(pa <= pb + 1e-12);
    }
    // +1 and -1 always present
    double to_plus = 1e300, to_minus = 1e300;
    for (cd z : sys.eigenvalues) {
      to_plus = std::min(to_plus, std::abs(z - cd(1, 0)));
      to_minus = std::min(to_minus, std::abs(z - cd(-1, 0)));
    }
    CHECK(to_plus <= 1e-9);
    CHECK(to_minus <= 1e-9);
    // eigenvalue multiset matches a dense solver
    MatX mx = blk.matrix;
    CHECK(dqwtest::pairing_distance(eig_vector(sys), dqwtest::dense_eigenvalues(mx)) <= 1e-9);
  }
}

TEST_CASE("general-formula eigenvectors are true eigenvectors where defined") {
  const CoinClass classes[4] = {CoinClass::X, CoinClass::Y, CoinClass::Z, CoinClass::W};
  int used = 0;
  for (CoinClass cls : classes) {
    for (int i = 1; i < 9; ++i) {
      double theta = -pi + 2 * pi * i / 9.0;
      CoinMatrix c = coin_from_theta(cls, theta);
      const int n = 7;
      for (int k = 0; k < n; ++k) {
        FourierBlock blk = build_Uk(c, n, k);
        EigenSystem sys = eigen_numeric(blk);
        for (int j = 0; j < 6; ++j) {
          double min_denom = 0;
          Vec6 v = theorem_eigenvector(cls, c.x, c.y, sys.eigenvalues[j], n, k, min_denom);
          if (min_denom <= 1e-8) continue;  // formula degenerate here, skip
          ++used;
          double nv = v.norm();
          REQUIRE(nv > 1e-10);
          CHECK((blk.matrix * v - sys.eigenvalues[j] * v).norm() <= 1e-8 * nv);

          // away from degeneracies the numeric vector must be parallel to it
          bool simple = true;
          for (int m = 0; m < 6; ++m)
            if (m != j &&
                std::abs(sys.eigenvalues[m] - sys.eigenvalues[j]) < 1e-6)
              simple = false;
          if (simple) {
            cd ov = (v / nv).dot(sys.eigenvectors[j]);
            CHECK(1.0 - std::abs(ov) <= 1e-8);
          }
        }
      }
    }
  }
  CHECK(used > 500);  // the formula path must actually cover most of the grid
}

TEST_CASE("full spectrum agrees with a dense diagonalization") {
  for (int n = 3; n <= 8; ++n) {
    CoinMatrix c = coin_from_theta(CoinClass::W, 0.8);
    auto pairs = full_spectrum(c, n);
    REQUIRE(pairs.size() == static_cast<size_t>(6 * n));
    EvolutionOperator u = build_evolution(c, n);
    std::vector<cd> got;
    for (const auto& p : pairs) {
      got.push_back(p.lambda);
      CHECK(std::abs(p.vec.norm() - 1.0) <= 1e-10);
      CHECK((u.matrix * p.vec - p.lambda * p.vec).norm() <= 1e-8);
      CHECK(p.k >= 0);
      CHECK(p.k < n);
      CHECK(p.j >= 1);
      CHECK(p.j <= 6);
    }
    CHECK(dqwtest::pairing_distance(got, dqwtest::dense_eigenvalues(u.matrix)) <= 1e-9);
  }
}

TEST_CASE("full spectrum of the identity coin at n=4") {
  CoinMatrix id = coin_from_theta(CoinClass::X, 0.0);
  auto pairs = full_spectrum(id, 4);
  std::vector<cd> got;
  for (const auto& p : pairs) got.push_back(p.lambda);
  std::vector<cd> want;
  for (int k = 0; k < 4; ++k) {
    cd w = std::polar(1.0, 2 * pi * k / 4);
    want.insert(want.end(), {cd(1, 0), cd(1, 0), cd(1, 0), cd(-1, 0), w, std::conj(w)});
  }
  CHECK(dqwtest::pairing_distance(got, want) <= 1e-9);
}

TEST_CASE("parallel spectrum assembly is deterministic") {
  CoinMatrix c = coin_from_theta(CoinClass::Y, -0.35);
  auto serial = full_spectrum(c, 12, false);
  auto par = full_spectrum(c, 12, true);
  REQUIRE(serial.size() == par.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].lambda == par[i].lambda);
    CHECK((serial[i].vec - par[i].vec).cwiseAbs().maxCoeff() == 0.0);
  }
}

}  // TEST_SUITE
