#include "rowlrpc/channel.hpp"

#include "rowlrpc/rng.hpp"

namespace rowlrpc {

ErrorPattern sample_error(const Field& f, unsigned n, unsigned r, Rng& rng) {
  if (r < 1 || r > n || r > f.m()) fail(Errc::invalid_argument, "need 1 <= r <= min(n, m)");
  for (;;) {
    const Subspace support = random_subspace(f, r, rng);
    const auto basis = support.basis_elements(f);
    Vec e(n, f.zero());
    for (unsigned j = 0; j < n; ++j) {
      Fe acc = f.zero();
      for (const Fe& b : basis) {
        const Coord c = rng.below(f.q());
        if (c) acc = f.add(acc, f.scalar_mul(c, b));
      }
      e[j] = acc;
    }
    if (entry_span(f, e) == support) return ErrorPattern{std::move(e), support, r};
  }
}

Vec apply(const Field& f, const Vec& codeword, const ErrorPattern& err) {
  if (codeword.size() != err.e.size()) fail(Errc::shape_mismatch, "length mismatch");
  Vec out(codeword.size(), f.zero());
  for (std::size_t i = 0; i < codeword.size(); ++i) out[i] = f.add(codeword[i], err.e[i]);
  return out;
}

}  // namespace rowlrpc
