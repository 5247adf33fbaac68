#include "algebra/smith.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace jumploci {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix id(n, n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  IntMatrix out(a.rows(), b.cols(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

namespace {

// Elimination state: D = U * A * V, with V^{-1} tracked alongside V.
struct Reducer {
  IntMatrix d, u, v, vinv;

  explicit Reducer(const IntMatrix& a)
      : d(a), u(identity_matrix(a.rows())), v(identity_matrix(a.cols())),
        vinv(identity_matrix(a.cols())) {}

  void swap_rows(std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    u.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    v.swap_cols(a, b);
    vinv.swap_rows(a, b);
  }
  // row_dst -= q * row_src
  void add_row(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t c = 0; c < d.cols(); ++c) d(dst, c) -= q * d(src, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(dst, c) -= q * u(src, c);
  }
  // col_dst -= q * col_src; the inverse is row_src += q * row_dst on V^{-1}
  void add_col(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t r = 0; r < d.rows(); ++r) d(r, dst) -= q * d(r, src);
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, dst) -= q * v(r, src);
    for (std::size_t c = 0; c < vinv.cols(); ++c) vinv(src, c) += q * vinv(dst, c);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < d.cols(); ++c) d(r, c) = -d(r, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(r, c) = -u(r, c);
  }

  std::optional<std::pair<std::size_t, std::size_t>> smallest_nonzero(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < d.rows(); ++i)
      for (std::size_t j = t; j < d.cols(); ++j) {
        if (d(i, j) == 0) continue;
        if (!best || abs(d(i, j)) < abs(d(best->first, best->second))) best = {{i, j}};
      }
    return best;
  }

  void move_to_pivot(std::size_t t, std::pair<std::size_t, std::size_t> at) {
    swap_rows(t, at.first);
    swap_cols(t, at.second);
  }

  // Clears row t and column t outside the pivot; returns false while a
  // remainder is left that is smaller than the pivot.
  bool clear_cross(std::size_t t) {
    bool clean = true;
    for (std::size_t i = t + 1; i < d.rows(); ++i) {
      if (d(i, t) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
      add_row(i, t, q);
      if (d(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < d.cols(); ++j) {
      if (d(t, j) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
      add_col(j, t, q);
      if (d(t, j) != 0) clean = false;
    }
    return clean;
  }

  void run() {
    const std::size_t limit = std::min(d.rows(), d.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      auto at = smallest_nonzero(t);
      if (!at) break;
      move_to_pivot(t, *at);
      for (;;) {
        if (!clear_cross(t)) {
          // a nonzero remainder smaller than the pivot sits in row/col t
          std::optional<std::pair<std::size_t, std::size_t>> best;
          for (std::size_t i = t + 1; i < d.rows(); ++i)
            if (d(i, t) != 0 && (!best || abs(d(i, t)) < abs(d(best->first, best->second))))
              best = {{i, t}};
          for (std::size_t j = t + 1; j < d.cols(); ++j)
            if (d(t, j) != 0 && (!best || abs(d(t, j)) < abs(d(best->first, best->second))))
              best = {{t, j}};
          move_to_pivot(t, *best);
          continue;
        }
        // divisibility d_t | every remaining entry
        std::optional<std::size_t> bad_row;
        for (std::size_t i = t + 1; i < d.rows() && !bad_row; ++i)
          for (std::size_t j = t + 1; j < d.cols(); ++j)
            if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
              bad_row = i;
              break;
            }
        if (!bad_row) break;
        add_row(t, *bad_row, Integer(-1));
      }
      if (d(t, t) < 0) negate_row(t);
    }
  }
};

SmithForm form_from_diagonal(const IntMatrix& d) {
  SmithForm f;
  const std::size_t limit = std::min(d.rows(), d.cols());
  f.diag.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) {
    f.diag.push_back(d(i, i));
    if (d(i, i) != 0) ++f.rank;
    if (d(i, i) > 1) f.torsion.push_back(d(i, i));
  }
  return f;
}

}  // namespace

SmithDecomposition smith_decompose(const IntMatrix& a) {
  Reducer r(a);
  r.run();
  SmithDecomposition out;
  out.form = form_from_diagonal(r.d);
  out.left = std::move(r.u);
  out.right = std::move(r.v);
  out.right_inverse = std::move(r.vinv);
  return out;
}

SmithForm smith_normal_form(const IntMatrix& a) { return smith_decompose(a).form; }

}  // namespace jumploci
