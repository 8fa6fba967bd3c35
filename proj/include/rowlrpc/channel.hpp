#pragma once

#include "rowlrpc/field.hpp"
#include "rowlrpc/linalg.hpp"
#include "rowlrpc/subspace.hpp"

namespace rowlrpc {

class Rng;

// Error vector of exact rank weight r: span of the entries equals `support`.
struct ErrorPattern {
  Vec e;
  Subspace support;
  unsigned r = 0;
};

// Uniform entries from a random r-dimensional support, resampled until the
// entries span the whole support.
ErrorPattern sample_error(const Field& f, unsigned n, unsigned r, Rng& rng);

// Entrywise sum codeword + e.
Vec apply(const Field& f, const Vec& codeword, const ErrorPattern& err);

}  // namespace rowlrpc
