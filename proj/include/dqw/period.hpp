#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqw/coin.hpp"
#include "dqw/types.hpp"

namespace dqw {

enum class PeriodMethod { Theorem, Spectral, Brute };
enum class PeriodKind { Finite, Aperiodic, Unknown };

// Rational eigenphase candidate: phase(lambda)/2pi ~ p/q, verified means
// |lambda^q - 1| <= 1e-10.
struct EigenphaseRational {
  cd lambda;
  long long p = 0;
  long long q = 1;
  bool verified = false;
};

// Aperiodicity witness: eigenvalue whose cosine is recognizably rational
// (num/den) but outside {0, +-1/2, +-1}, so its phase is an irrational
// multiple of pi.
struct PeriodWitness {
  cd lambda;
  double cosine = 0.0;
  long long num = 0;
  long long den = 1;
};

// One k-term of a closed-form period formula: ratio = m_k/p_k in lowest
// terms, multiplier c_k in {1, 2}.
struct PeriodFormulaTerm {
  long long k = 0;
  long long m_k = 0;
  long long p_k = 1;
  int c_k = 1;
};

struct PeriodResult {
  PeriodKind kind = PeriodKind::Unknown;
  PeriodMethod method = PeriodMethod::Theorem;
  unsigned long long tau = 0;                // Finite only
  std::optional<PeriodWitness> witness;      // Aperiodic (spectral) only
  unsigned long long cap = 0;                // Unknown only
  std::vector<PeriodFormulaTerm> terms;      // theorem only
  std::string note;                          // diagnostics (near-miss theta, ...)
};

// Closed-form period per class at the special angles; the otherwise-branch
// returns Aperiodic. All lcm arithmetic exact (overflow -> CapacityError).
PeriodResult theorem_period(CoinClass cls, double theta, long long n);

// Eigenphase-rationality detector over all momentum blocks. Every eigenphase
// /2pi gets a continued-fraction rational with denominator <= q_max, verified
// via |lambda^q - 1| <= 1e-10. All verified: tau = lcm of denominators with a
// final ||U^tau - I|| <= 1e-8 check. Any failure: Aperiodic only with a Niven
// witness, Unknown(q_max) otherwise.
PeriodResult spectral_period(const CoinMatrix& coin, int n, unsigned long long q_max = 10000);

// Definition-level oracle: smallest t <= t_max with ||U^t - I||_max <= tol by
// repeated dense multiplication. eigenvalue_power mode instead tracks
// max_i |lambda_i^t - 1| (equal to the spectral norm for unitary U), which
// scales to large t_max.
PeriodResult brute_force_period(const CoinMatrix& coin, int n, unsigned long long t_max,
                                double tol, bool eigenvalue_power = false);

// True iff c is within 1e-10 of {0, +-1/2, +-1}, the only rational cosines
// of rational multiples of pi (Niven). |c| > 1 -> InputError.
bool niven_check(double c);

// Best rational approximation of phase(lambda)/2pi with denominator <= q_max
// via continued fractions.
EigenphaseRational nearest_rational(cd lambda, unsigned long long q_max);

unsigned long long gcd_ull(unsigned long long a, unsigned long long b);
unsigned long long lcm_checked(unsigned long long a, unsigned long long b);

std::string period_to_json(const PeriodResult& r);

}  // namespace dqw
