#pragma once

#include <vector>

#include "algebra/matrix.hpp"

namespace jumploci {

// Invariant factors d_1 | d_2 | ... of an integer matrix, one per diagonal
// slot (length min(rows, cols)); zeros trail.
struct SmithForm {
  std::vector<Integer> diag;
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // the d_i > 1
};

// left * A * right == diag(form.diag); left and right are unimodular and
// right_inverse * right == identity.
struct SmithDecomposition {
  SmithForm form;
  IntMatrix left;
  IntMatrix right;
  IntMatrix right_inverse;
};

SmithForm smith_normal_form(const IntMatrix& a);
SmithDecomposition smith_decompose(const IntMatrix& a);

}  // namespace jumploci
