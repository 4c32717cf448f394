#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pseudoexp/intmat/intmat.hpp"

namespace pexp::intmat {

/// A * [[N,0],[0,P]] = [[N0;P1 | 0],[0 | P0;P1]] with rowspan(P1) the
/// intersection of the row spans of N and P.
struct BlockDecomposition {
  IntMat A;   // (k+l) x (k+l), full rank, block diagonal
  IntMat N0;  // (k-j) x n
  IntMat P0;  // (l-j) x n
  IntMat P1;  // j x n
};

/// N (k x n) and P (l x n) must have independent rows; throws MathError otherwise.
BlockDecomposition decompose_block(const IntMat& N, const IntMat& P);

/// A * M = [[N0, 0],[N1, P1],[0, P0]] for M = (L | R) of size p x 2n.
struct GeneralReduction {
  IntMat A;   // p x p, full rank
  IntMat N0;  // k x n
  IntMat N1;  // m x n
  IntMat P1;  // m x n
  IntMat P0;  // l x n
  std::size_t k = 0;
  std::size_t l = 0;
  std::size_t m = 0;
};

/// M must have an even number of columns, be nonzero and have full row rank.
GeneralReduction reduce_general(const IntMat& M);

/// Named conditions of a lemma output, each paired with whether it holds.
using Checks = std::vector<std::pair<std::string, bool>>;

Checks verify_block(const IntMat& N, const IntMat& P, const BlockDecomposition& d);
Checks verify_reduction(const IntMat& M, const GeneralReduction& r);

/// One saturated Hermite representative per Q-row-span of rank k spanned by
/// integer k x c matrices with entries in [-B, B]. Ordered by height, then
/// lexicographically descending.
std::vector<IntMat> enumerate_row_spans(std::size_t k, std::size_t c, unsigned B);

}  // namespace pexp::intmat
