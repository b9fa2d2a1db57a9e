#include "dqw/coin.hpp"

#include <cmath>
#include <sstream>

#include "dqw/io.hpp"

namespace dqw {

double normalize_angle(double theta) {
  if (!std::isfinite(theta)) throw InputError("angle must be finite");
  double r = std::remainder(theta, 2.0 * pi);  // lands in [-pi, pi]
  if (r <= -pi) r += 2.0 * pi;                 // convention: (-pi, pi]
  return r;
}

const char* to_string(CoinClass c) {
  switch (c) {
    case CoinClass::X: return "X";
    case CoinClass::Y: return "Y";
    case CoinClass::Z: return "Z";
    case CoinClass::W: return "W";
  }
  return "?";
}

std::optional<CoinClass> coin_class_from_string(const std::string& s) {
  if (s == "X" || s == "x") return CoinClass::X;
  if (s == "Y" || s == "y") return CoinClass::Y;
  if (s == "Z" || s == "z") return CoinClass::Z;
  if (s == "W" || s == "w") return CoinClass::W;
  return std::nullopt;
}

namespace {

bool plus_family(CoinClass c) { return c == CoinClass::X || c == CoinClass::Z; }
bool circulant_family(CoinClass c) { return c == CoinClass::X || c == CoinClass::Y; }

Mat3 assemble(CoinClass cls, double x, double y) {
  // third symbol of the row pattern
  double z = plus_family(cls) ? 1.0 - x - y : -1.0 - x - y;
  Mat3 m;
  if (circulant_family(cls)) {
    // rows are right-rotations of (x, y, z)
    m << x, y, z,
         z, x, y,
         y, z, x;
  } else {
    // rows are left-rotations of (x, y, z); the matrix is symmetric
    m << x, y, z,
         y, z, x,
         z, x, y;
  }
  return m;
}

CoinMatrix build(CoinClass cls, double x, double y, double theta) {
  CoinMatrix c;
  c.cls = cls;
  c.x = x;
  c.y = y;
  c.theta = theta;
  c.m = assemble(cls, x, y);
  return c;
}

}  // namespace

double constraint_residual(CoinClass cls, double x, double y) {
  double base = x * x + y * y + x * y;
  return plus_family(cls) ? base - x - y : base + x + y;
}

CoinMatrix coin_from_theta(CoinClass cls, double theta) {
  double t = normalize_angle(theta);
  double ct = std::cos(t), st = std::sin(t);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  double x, y;
  if (plus_family(cls)) {
    x = (2.0 * ct + 1.0) / 3.0;
    y = (1.0 - ct) / 3.0 + st * inv_sqrt3;
  } else {
    x = (2.0 * ct - 1.0) / 3.0;
    y = -(1.0 + ct) / 3.0 + st * inv_sqrt3;
  }
  return build(cls, x, y, t);
}

CoinMatrix coin_from_xy(CoinClass cls, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw InputError("coin coordinates must be finite");
  double lo = plus_family(cls) ? -1.0 / 3.0 : -1.0;
  double hi = plus_family(cls) ? 1.0 : 1.0 / 3.0;
  const double slack = 1e-10;
  if (x < lo - slack || x > hi + slack)
    throw RangeError(std::string("x outside [") + fmt_g17(lo) + ", " + fmt_g17(hi) +
                     "] for class " + to_string(cls));
  if (y < lo - slack || y > hi + slack)
    throw RangeError(std::string("y outside [") + fmt_g17(lo) + ", " + fmt_g17(hi) +
                     "] for class " + to_string(cls));
  double res = constraint_residual(cls, x, y);
  if (std::abs(res) > 1e-10)
    throw ConstraintError(std::string("(x, y) violates the class ") + to_string(cls) +
                              " constraint, residual " + fmt_g17(res),
                          res);
  // invert the parametrization: both cos and sin are linear in (x, y)
  double ct, st;
  const double sqrt3 = std::sqrt(3.0);
  if (plus_family(cls)) {
    ct = (3.0 * x - 1.0) / 2.0;
    st = sqrt3 * (y - (1.0 - ct) / 3.0);
  } else {
    ct = (3.0 * x + 1.0) / 2.0;
    st = sqrt3 * (y + (1.0 + ct) / 3.0);
  }
  double theta = std::atan2(st, ct);
  return build(cls, x, y, normalize_angle(theta));
}

CoinClassification classify_coin(const CoinMatrix& c) {
  const double tol = 1e-12;
  CoinClassification out;
  out.orthogonal = (c.m.transpose() * c.m - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-10;

  // permutative: every row is a permutation of row 0 (entrywise matching)
  auto row_is_perm_of = [&](int i, int j) {
    bool used[3] = {false, false, false};
    for (int a = 0; a < 3; ++a) {
      bool found = false;
      for (int b = 0; b < 3; ++b) {
        if (!used[b] && std::abs(c.m(i, a) - c.m(j, b)) <= tol) {
          used[b] = true;
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };
  out.permutative = row_is_perm_of(1, 0) && row_is_perm_of(2, 0);

  // signed permutation: entries within tol of {0, +1} or {0, -1},
  // exactly one nonzero per row and column
  for (double sign : {1.0, -1.0}) {
    bool ok = true;
    int row_count[3] = {0, 0, 0}, col_count[3] = {0, 0, 0};
    for (int i = 0; i < 3 && ok; ++i)
      for (int j = 0; j < 3 && ok; ++j) {
        double v = c.m(i, j);
        if (std::abs(v) <= tol) continue;
        if (std::abs(v - sign) <= tol) {
          ++row_count[i];
          ++col_count[j];
        } else {
          ok = false;
        }
      }
    for (int i = 0; i < 3; ++i) ok = ok && row_count[i] == 1 && col_count[i] == 1;
    if (ok) {
      out.signed_permutation = sign > 0 ? SignedPermutation::PlusP : SignedPermutation::MinusP;
      break;
    }
  }
  return out;
}

std::string coin_to_json(const CoinMatrix& c) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"class\": \"" << to_string(c.cls) << "\",\n";
  os << "  \"theta\": " << (c.theta ? fmt_g17(*c.theta) : "null") << ",\n";
  os << "  \"x\": " << fmt_g17(c.x) << ",\n";
  os << "  \"y\": " << fmt_g17(c.y) << ",\n";
  os << "  \"entries\": [";
  for (int i = 0; i < 3; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < 3; ++j) os << (j ? ", " : "") << fmt_g17(c.m(i, j));
    os << "]";
  }
  os << "]\n}\n";
  return os.str();
}

}  // namespace dqw
