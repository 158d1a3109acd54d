#pragma once

#include <vector>

#include "cvn/rational.hpp"
#include "cvn/word.hpp"

namespace cvn {

/// A point T_t of the one-parameter boundary family: the Bass-Serre tree of
/// the splitting of F(a,b) along the circle-of-groups with edge groups <a>
/// and 1, with edge lengths t and 1-t.
struct TaoTreePoint {
  Rational t;
  explicit TaoTreePoint(Rational t_) : t(std::move(t_)) {
    if (t <= 0 || t >= 1)
      throw std::invalid_argument("Tao parameter must lie in (0,1)");
  }
};

/// Translation length of w on T_t. Elliptic elements (conjugates of powers
/// of a) return 0.
///
/// Method: rewrite w over {a, e, f} via b -> e f^-1 inside the ambient group
/// <a, e, f | [a,e] = 1> = Z^2 * Z, cyclically reduce the syllable form of
/// the free product, and charge t per e-letter and 1-t per f-letter.
Rational tao_length(const TaoTreePoint& tree, const Word& w);

struct TaoScanRow {
  CyclicWord primitive;
  Rational length;  // common value over all sampled t
};

struct TaoScanReport {
  int primitives_checked = 0;
  std::vector<Rational> samples;
  std::vector<TaoScanRow> rows;
  std::vector<CyclicWord> violations;  // primitives whose length varied with t
  bool all_constant() const { return violations.empty(); }
};

/// Checks that ||p||_{T_t} does not vary with t for every primitive class p
/// of cyclic length <= max_len, over the sampled parameters.
TaoScanReport tao_primitive_scan(int max_len,
                                 const std::vector<Rational>& t_samples);

}  // namespace cvn
