#include "pseudoexp/intmat/gpoint.hpp"

#include "pseudoexp/errors.hpp"

namespace pexp::intmat {

using field::Rational;
using field::Scalar;

GPoint::GPoint(std::vector<RatExpr> z, std::vector<RatExpr> w) : additive(std::move(z)), multiplicative(std::move(w)) {
  if (additive.size() != multiplicative.size()) throw DimensionError("point needs as many additive as multiplicative entries");
  for (const auto& x : multiplicative)
    if (x.is_zero()) throw MathError("multiplicative coordinate is zero");
}

GPoint GPoint::identity(std::size_t n) { return GPoint(std::vector<RatExpr>(n, RatExpr(0)), std::vector<RatExpr>(n, RatExpr(1))); }

GPoint GPoint::inverse() const {
  GPoint p = *this;
  for (auto& z : p.additive) z = -z;
  for (auto& w : p.multiplicative) w = w.inverse();
  return p;
}

GPoint operator+(const GPoint& p, const GPoint& q) {
  if (p.n() != q.n()) throw DimensionError("group law on points of different arity");
  GPoint r = p;
  for (std::size_t i = 0; i < p.n(); ++i) {
    r.additive[i] += q.additive[i];
    r.multiplicative[i] *= q.multiplicative[i];
  }
  return r;
}

std::vector<RatExpr> act_additive(const IntMat& M, const std::vector<RatExpr>& z) {
  if (M.cols() != z.size()) throw DimensionError("matrix has " + std::to_string(M.cols()) + " columns, point has arity " + std::to_string(z.size()));
  std::vector<RatExpr> out(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (M(i, j) != 0) out[i] += RatExpr(Scalar(Rational(M(i, j)))) * z[j];
  return out;
}

std::vector<RatExpr> act_multiplicative(const IntMat& M, const std::vector<RatExpr>& w) {
  if (M.cols() != w.size()) throw DimensionError("matrix has " + std::to_string(M.cols()) + " columns, point has arity " + std::to_string(w.size()));
  std::vector<RatExpr> out(M.rows(), RatExpr(1));
  for (std::size_t i = 0; i < M.rows(); ++i) {
    // Collect positive and negative powers separately, invert once.
    RatExpr pos(1), neg(1);
    for (std::size_t j = 0; j < M.cols(); ++j) {
      const auto& e = M(i, j);
      if (e == 0) continue;
      if (!e.fits_slong_p()) throw MathError("exponent too large");
      const long ee = e.get_si();
      if (ee > 0)
        pos *= w[j].pow(ee);
      else
        neg *= w[j].pow(-ee);
    }
    out[i] = pos / neg;
  }
  return out;
}

GPoint act(const IntMat& M, const GPoint& p) {
  GPoint r;
  r.additive = act_additive(M, p.additive);
  r.multiplicative = act_multiplicative(M, p.multiplicative);
  return r;
}

}  // namespace pexp::intmat
