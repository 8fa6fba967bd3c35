#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rowlrpc/error.hpp"

namespace rowlrpc {

class Rng;

// A coordinate in the prime field F_q (always reduced into [0, q)).
using Coord = std::uint32_t;
using CoordRow = std::vector<Coord>;

// Element of the extension field F_{q^m}: m coordinates over F_q, least
// degree first, i.e. c[0] + c[1]*x + ... + c[m-1]*x^(m-1) mod the field
// modulus. field_id ties the element to the Field that created it.
struct Fe {
  std::uint32_t field_id = 0;
  CoordRow c;

  friend bool operator==(const Fe&, const Fe&) = default;
};

struct FeHash {
  std::size_t operator()(const Fe& a) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull ^ a.field_id;
    for (Coord v : a.c) {
      h ^= v;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Arithmetic context for F_{q^m}, q prime. Construction verifies that q is
// prime and that the modulus is monic of degree m and irreducible over F_q
// (by trial division against every monic polynomial of degree <= m/2, under
// a candidate budget suitable for small q and moderate m).
class Field {
public:
  // Uses the built-in least-lexicographic irreducible modulus for (q, m).
  Field(Coord q, unsigned m);
  // Explicit modulus: m+1 coordinates, least degree first, monic.
  Field(Coord q, unsigned m, CoordRow modulus);

  Coord q() const { return q_; }
  unsigned m() const { return m_; }
  std::uint32_t id() const { return id_; }
  const CoordRow& modulus() const { return mod_; }
  // log2 of |F_{q^m}|, for enumeration budget checks.
  double log2_order() const;

  Fe zero() const;
  Fe one() const;
  Fe from_scalar(Coord a) const;  // embeds F_q as the constant coordinate
  Fe from_coords(CoordRow c) const;
  Fe monomial(unsigned degree, Coord coeff = 1) const;

  bool is_zero(const Fe& a) const;
  bool in_prime_subfield(const Fe& a) const;

  Fe add(const Fe& a, const Fe& b) const;
  Fe sub(const Fe& a, const Fe& b) const;
  Fe neg(const Fe& a) const;
  Fe mul(const Fe& a, const Fe& b) const;
  Fe inv(const Fe& a) const;
  Fe div(const Fe& a, const Fe& b) const;
  Fe pow(const Fe& a, std::uint64_t e) const;
  // F_q scalar times field element (coordinate-wise).
  Fe scalar_mul(Coord s, const Fe& a) const;

  // Prime-subfield scalar arithmetic.
  Coord sc_add(Coord a, Coord b) const { return (a + b) % q_; }
  Coord sc_sub(Coord a, Coord b) const { return (a + q_ - b) % q_; }
  Coord sc_neg(Coord a) const { return a == 0 ? 0 : q_ - a; }
  Coord sc_mul(Coord a, Coord b) const {
    return static_cast<Coord>(static_cast<std::uint64_t>(a) * b % q_);
  }
  Coord sc_inv(Coord a) const;

  Fe random_element(Rng& rng) const;
  Fe random_nonzero(Rng& rng) const;

  // Textual form "c0,c1,...,c(m-1)".
  std::string to_string(const Fe& a) const;
  Fe parse(std::string_view text) const;

  // Throws context_mismatch unless a belongs to this field.
  void check(const Fe& a) const;

  // Least-lexicographic monic irreducible of degree m over F_q, coordinates
  // least degree first (the same choice the (q, m) constructor makes).
  static CoordRow default_modulus(Coord q, unsigned m);

private:
  Coord q_ = 0;
  unsigned m_ = 0;
  std::uint32_t id_ = 0;
  CoordRow mod_;      // m+1 coords, mod_[m] == 1
  CoordRow neg_top_;  // -mod_[0..m-1] mod q, used during reduction

  void reduce_into(std::vector<std::uint64_t>& buf, Fe& out) const;
};

}  // namespace rowlrpc
