#pragma once

#include <cstddef>
#include <vector>

#include "rowlrpc/error.hpp"
#include "rowlrpc/field.hpp"

// Dense row reduction over the prime field F_q. Shared engine for the
// subspace algebra (canonical bases, Zassenhaus intersection) and for the
// unfolded-over-F_q linear solves in the decoder.

namespace rowlrpc::fq {

inline Coord sc_inv(Coord a, Coord q) {
  std::uint64_t base = a % q, acc = 1;
  for (Coord e = q - 2; e; e >>= 1) {
    if (e & 1) acc = acc * base % q;
    base = base * base % q;
  }
  return static_cast<Coord>(acc);
}

// Rows kept in reduced row-echelon form, pivot columns strictly increasing.
struct Echelon {
  Coord q = 2;
  std::size_t cols = 0;
  std::vector<CoordRow> rows;
  std::vector<std::size_t> pivots;

  Echelon(Coord q_, std::size_t cols_) : q(q_), cols(cols_) {}

  std::size_t rank() const { return rows.size(); }

  // Residual of v after eliminating against all pivot rows.
  CoordRow reduce(CoordRow v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Coord c = v[pivots[r]];
      if (c == 0) continue;
      const CoordRow& row = rows[r];
      for (std::size_t j = pivots[r]; j < cols; ++j)
        v[j] = static_cast<Coord>((v[j] + static_cast<std::uint64_t>(q - c) * row[j]) % q);
    }
    return v;
  }

  // Inserts v if independent (keeping RREF); returns whether rank grew.
  bool grow(CoordRow v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < cols && v[p] == 0) ++p;
    if (p == cols) return false;
    if (v[p] != 1) {
      const Coord s = sc_inv(v[p], q);
      for (std::size_t j = p; j < cols; ++j)
        v[j] = static_cast<Coord>(static_cast<std::uint64_t>(v[j]) * s % q);
    }
    // Clear column p in existing rows, then insert in pivot order.
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Coord c = rows[r][p];
      if (c == 0) continue;
      for (std::size_t j = p; j < cols; ++j)
        rows[r][j] =
            static_cast<Coord>((rows[r][j] + static_cast<std::uint64_t>(q - c) * v[j]) % q);
    }
    std::size_t at = 0;
    while (at < pivots.size() && pivots[at] < p) ++at;
    rows.insert(rows.begin() + at, std::move(v));
    pivots.insert(pivots.begin() + at, p);
    return true;
  }
};

inline Echelon rref(Coord q, std::size_t cols, const std::vector<CoordRow>& input) {
  Echelon e(q, cols);
  for (const CoordRow& r : input) e.grow(r);
  return e;
}

struct Solve {
  enum class Kind { unique, inconsistent, underdetermined };
  Kind kind = Kind::inconsistent;
  CoordRow x;                 // particular solution when kind == unique
  std::size_t null_dim = 0;   // kernel dimension when underdetermined
};

// Solves the linear system a·x = b over F_q (rows of `a` are equations).
inline Solve solve(Coord q, const std::vector<CoordRow>& a, const CoordRow& b,
                   std::size_t unknowns) {
  Echelon e(q, unknowns + 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != unknowns || b.size() != a.size())
      fail(Errc::shape_mismatch, "system dimensions disagree");
    CoordRow aug = a[i];
    aug.push_back(b[i]);
    e.grow(std::move(aug));
  }
  Solve out;
  for (std::size_t p : e.pivots)
    if (p == unknowns) {
      out.kind = Solve::Kind::inconsistent;
      return out;
    }
  if (e.rank() < unknowns) {
    out.kind = Solve::Kind::underdetermined;
    out.null_dim = unknowns - e.rank();
    return out;
  }
  out.kind = Solve::Kind::unique;
  out.x.assign(unknowns, 0);
  for (std::size_t r = 0; r < e.rank(); ++r) out.x[e.pivots[r]] = e.rows[r][unknowns];
  return out;
}

}  // namespace rowlrpc::fq
