#include "rowlrpc/subspace.hpp"

#include <algorithm>

#include "rowlrpc/fq_matrix.hpp"
#include "rowlrpc/rng.hpp"

namespace rowlrpc {

namespace detail {
Subspace make_subspace(std::uint32_t field_id, unsigned m, std::vector<CoordRow> rref_rows) {
  return Subspace(field_id, m, std::move(rref_rows));
}
}  // namespace detail

namespace {

void check_space(const Field& f, const Subspace& v) {
  if (v.dim() == 0 && v.field_id() == 0 && v.ambient() == 0) return;  // default-constructed zero
  if (v.field_id() != f.id() || v.ambient() != f.m())
    fail(Errc::context_mismatch, "subspace does not belong to this field");
}

Subspace from_echelon(const Field& f, const fq::Echelon& e) {
  return detail::make_subspace(f.id(), f.m(), e.rows);
}

fq::Echelon to_echelon(const Field& f, const Subspace& v) {
  fq::Echelon e(f.q(), f.m());
  for (const CoordRow& r : v.basis_rows()) e.grow(r);
  return e;
}

std::uint64_t pow_checked(Coord q, unsigned d, std::uint64_t budget) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < d; ++i) {
    if (v > budget / q) return budget + 1;
    v *= q;
  }
  return v;
}

}  // namespace

std::vector<Fe> Subspace::basis_elements(const Field& f) const {
  check_space(f, *this);
  std::vector<Fe> out;
  out.reserve(rows_.size());
  for (const CoordRow& r : rows_) out.push_back(f.from_coords(r));
  return out;
}

std::size_t SubspaceHash::operator()(const Subspace& v) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull ^ v.field_id();
  for (const CoordRow& row : v.basis_rows())
    for (Coord c : row) {
      h ^= c + 1;
      h *= 0x100000001b3ull;
    }
  return static_cast<std::size_t>(h);
}

Subspace zero_subspace(const Field& f) { return detail::make_subspace(f.id(), f.m(), {}); }

Subspace full_space(const Field& f) {
  std::vector<CoordRow> rows;
  for (unsigned i = 0; i < f.m(); ++i) {
    CoordRow r(f.m(), 0);
    r[i] = 1;
    rows.push_back(std::move(r));
  }
  return detail::make_subspace(f.id(), f.m(), std::move(rows));
}

Subspace span(const Field& f, const std::vector<Fe>& elements) {
  fq::Echelon e(f.q(), f.m());
  for (const Fe& a : elements) {
    f.check(a);
    e.grow(a.c);
  }
  return from_echelon(f, e);
}

bool contains(const Field& f, const Subspace& v, const Fe& a) {
  check_space(f, v);
  f.check(a);
  const CoordRow res = to_echelon(f, v).reduce(a.c);
  return std::all_of(res.begin(), res.end(), [](Coord c) { return c == 0; });
}

Subspace sum(const Field& f, const Subspace& a, const Subspace& b) {
  check_space(f, a);
  check_space(f, b);
  fq::Echelon e = to_echelon(f, a);
  for (const CoordRow& r : b.basis_rows()) e.grow(r);
  return from_echelon(f, e);
}

Subspace intersect(const Field& f, const Subspace& a, const Subspace& b) {
  check_space(f, a);
  check_space(f, b);
  // Zassenhaus: rows [u | u] for u in basis(a), [v | 0] for v in basis(b);
  // after reduction, rows whose pivot lies in the right half carry a basis of
  // the intersection in that half.
  const unsigned m = f.m();
  fq::Echelon e(f.q(), 2 * static_cast<std::size_t>(m));
  for (const CoordRow& u : a.basis_rows()) {
    CoordRow row(2 * m, 0);
    std::copy(u.begin(), u.end(), row.begin());
    std::copy(u.begin(), u.end(), row.begin() + m);
    e.grow(std::move(row));
  }
  for (const CoordRow& v : b.basis_rows()) {
    CoordRow row(2 * m, 0);
    std::copy(v.begin(), v.end(), row.begin());
    e.grow(std::move(row));
  }
  fq::Echelon out(f.q(), m);
  for (std::size_t r = 0; r < e.rank(); ++r)
    if (e.pivots[r] >= m) out.grow(CoordRow(e.rows[r].begin() + m, e.rows[r].end()));
  return from_echelon(f, out);
}

Subspace product(const Field& f, const Subspace& a, const Subspace& b) {
  check_space(f, a);
  check_space(f, b);
  std::vector<Fe> prods;
  for (const Fe& u : a.basis_elements(f))
    for (const Fe& v : b.basis_elements(f)) prods.push_back(f.mul(u, v));
  return span(f, prods);
}

Subspace scale(const Field& f, const Fe& lambda, const Subspace& v) {
  check_space(f, v);
  f.check(lambda);
  if (f.is_zero(lambda)) fail(Errc::invalid_argument, "scaling by zero collapses the subspace");
  std::vector<Fe> scaled;
  for (const Fe& u : v.basis_elements(f)) scaled.push_back(f.mul(lambda, u));
  return span(f, scaled);
}

std::vector<Fe> enumerate(const Field& f, const Subspace& v, std::uint64_t budget) {
  check_space(f, v);
  const std::uint64_t count = pow_checked(f.q(), v.dim(), budget);
  if (count > budget) fail(Errc::enumeration_too_large, "q^dim exceeds the enumeration budget");
  std::vector<Fe> out;
  out.reserve(count);
  out.push_back(f.zero());
  // Add one basis element at a time: every new element is (previous block) +
  // c * basis[k] for c = 1..q-1, so each element appears exactly once.
  for (const Fe& bk : v.basis_elements(f)) {
    const std::size_t block = out.size();
    Fe mult = f.zero();
    for (Coord c = 1; c < f.q(); ++c) {
      mult = f.add(mult, bk);
      for (std::size_t i = 0; i < block; ++i) out.push_back(f.add(out[i], mult));
    }
  }
  return out;
}

std::vector<Fe> inverse_set(const Field& f, const Subspace& v, std::uint64_t budget) {
  std::vector<Fe> out;
  for (const Fe& a : enumerate(f, v, budget))
    if (!f.is_zero(a)) out.push_back(f.inv(a));
  return out;
}

Subspace random_subspace(const Field& f, unsigned d, Rng& rng) {
  if (d > f.m()) fail(Errc::invalid_argument, "dimension exceeds ambient space");
  fq::Echelon e(f.q(), f.m());
  while (e.rank() < d) e.grow(f.random_element(rng).c);
  return from_echelon(f, e);
}

std::optional<Fe> is_scalar_multiple(const Field& f, const Subspace& a, const Subspace& b,
                                     std::uint64_t budget) {
  check_space(f, a);
  check_space(f, b);
  if (a.dim() != b.dim() || a.dim() == 0)
    fail(Errc::invalid_argument, "is_scalar_multiple needs equal nonzero dimensions");
  // If a = lambda*b then lambda*b0 lies in a, so lambda = a_elem / b0 for some
  // nonzero a_elem; testing all of them is exhaustive.
  const Fe b0_inv = f.inv(b.basis_elements(f)[0]);
  for (const Fe& ae : enumerate(f, a, budget)) {
    if (f.is_zero(ae)) continue;
    const Fe lambda = f.mul(ae, b0_inv);
    if (scale(f, lambda, b) == a) return lambda;
  }
  return std::nullopt;
}

std::uint64_t subspace_count(Coord q, unsigned m, unsigned d) {
  if (d > m) return 0;
  // Gaussian binomial [m, d]_q = prod_{i<d} (q^{m-i} - 1) / (q^{i+1} - 1).
  unsigned __int128 num = 1;
  std::uint64_t den = 1;
  auto qpow = [q](unsigned e) {
    unsigned __int128 v = 1;
    for (unsigned i = 0; i < e; ++i) v *= q;
    return v;
  };
  for (unsigned i = 0; i < d; ++i) {
    num *= qpow(m - i) - 1;
    den *= static_cast<std::uint64_t>(qpow(i + 1) - 1);
    if (num > (static_cast<unsigned __int128>(1) << 100))
      fail(Errc::enumeration_too_large, "subspace count overflows");
  }
  const unsigned __int128 out = num / den;
  if (out > ~0ull) fail(Errc::enumeration_too_large, "subspace count overflows");
  return static_cast<std::uint64_t>(out);
}

std::vector<Subspace> all_subspaces_of_dim(const Field& f, unsigned d, std::uint64_t budget) {
  const unsigned m = f.m();
  if (d > m) fail(Errc::invalid_argument, "dimension exceeds ambient space");
  const std::uint64_t total = subspace_count(f.q(), m, d);
  if (total > budget) fail(Errc::enumeration_too_large, "too many subspaces to enumerate");
  std::vector<Subspace> out;
  out.reserve(total);
  if (d == 0) {
    out.push_back(zero_subspace(f));
    return out;
  }
  // One RREF shape per pivot-column choice; fill the free positions (right of
  // each pivot, outside pivot columns) with every coordinate combination.
  std::vector<unsigned> pivots(d);
  for (unsigned i = 0; i < d; ++i) pivots[i] = i;
  const Coord q = f.q();
  for (;;) {
    std::vector<std::pair<unsigned, unsigned>> free_pos;
    std::vector<bool> is_pivot(m, false);
    for (unsigned p : pivots) is_pivot[p] = true;
    for (unsigned r = 0; r < d; ++r)
      for (unsigned c = pivots[r] + 1; c < m; ++c)
        if (!is_pivot[c]) free_pos.push_back({r, c});

    std::vector<CoordRow> rows(d, CoordRow(m, 0));
    for (unsigned r = 0; r < d; ++r) rows[r][pivots[r]] = 1;
    CoordRow digits(free_pos.size(), 0);
    for (;;) {
      for (std::size_t i = 0; i < free_pos.size(); ++i)
        rows[free_pos[i].first][free_pos[i].second] = digits[i];
      out.push_back(detail::make_subspace(f.id(), m, rows));
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
      if (i == digits.size()) break;
    }

    // Next pivot combination in lexicographic order.
    int j = static_cast<int>(d) - 1;
    while (j >= 0 && pivots[j] == m - d + j) --j;
    if (j < 0) break;
    ++pivots[j];
    for (unsigned t = j + 1; t < d; ++t) pivots[t] = pivots[t - 1] + 1;
  }
  return out;
}

std::string subspace_to_string(const Field& f, const Subspace& v) {
  check_space(f, v);
  std::string out;
  for (const CoordRow& row : v.basis_rows()) {
    if (!out.empty()) out.push_back('\n');
    out += f.to_string(f.from_coords(row));
  }
  return out;
}

}  // namespace rowlrpc
