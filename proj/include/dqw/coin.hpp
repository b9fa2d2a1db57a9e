#pragma once

#include <optional>
#include <string>

#include "dqw/types.hpp"

namespace dqw {

enum class CoinClass { X, Y, Z, W };

const char* to_string(CoinClass c);
std::optional<CoinClass> coin_class_from_string(const std::string& s);

// One member of the four one-parameter orthogonal coin families.
// X: circulant rows (x, y, 1-x-y),   constraint x^2+y^2+xy-x-y = 0, x in [-1/3, 1]
// Y: circulant rows (x, y, -1-x-y),  constraint x^2+y^2+xy+x+y = 0, x in [-1, 1/3]
// Z: symmetric rows (x, y, 1-x-y) left-rotated per row, same constraint as X
// W: like Z over -1-x-y, same constraint as Y
struct CoinMatrix {
  CoinClass cls;
  double x = 0.0;
  double y = 0.0;
  std::optional<double> theta;  // canonical angle in (-pi, pi]
  Mat3 m;                       // the 3x3 entries

  double operator()(int i, int j) const { return m(i, j); }
};

enum class SignedPermutation { None, PlusP, MinusP };

struct CoinClassification {
  bool orthogonal = false;
  bool permutative = false;
  SignedPermutation signed_permutation = SignedPermutation::None;
};

// Trig parametrization of the constraint curve:
//   X/Z: x=(2cos t+1)/3, y=(1-cos t)/3+sin t/sqrt3
//   Y/W: x=(2cos t-1)/3, y=-(1+cos t)/3+sin t/sqrt3
CoinMatrix coin_from_theta(CoinClass cls, double theta);

// Direct (x, y) constructor; validates range and constraint instead of
// projecting, so caller bugs surface as errors.
CoinMatrix coin_from_xy(CoinClass cls, double x, double y);

// Constraint polynomial value (0 on-curve): x^2+y^2+xy -/+ (x+y).
double constraint_residual(CoinClass cls, double x, double y);

CoinClassification classify_coin(const CoinMatrix& c);

// JSON object {class, theta, x, y, entries} with 17-significant-digit floats.
std::string coin_to_json(const CoinMatrix& c);

}  // namespace dqw
