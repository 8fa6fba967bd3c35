#include "rowlrpc/decoder.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

namespace rowlrpc {

namespace {

using FeSet = std::unordered_set<Fe, FeHash>;

std::uint64_t pow_checked(Coord q, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (v > cap / q) return cap + 1;
    v *= q;
  }
  return v;
}

// First size-r subset of `pool` (in lexicographic combination order) that
// passes `ok` and is not already in `used`.
std::optional<std::vector<unsigned>> first_subset(
    const std::vector<unsigned>& pool, unsigned r,
    const std::vector<std::vector<unsigned>>& used,
    const std::function<bool(const std::vector<unsigned>&)>& ok) {
  const std::size_t n = pool.size();
  if (n < r) return std::nullopt;
  std::vector<std::size_t> idx(r);
  for (unsigned i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    std::vector<unsigned> cand(r);
    for (unsigned i = 0; i < r; ++i) cand[i] = pool[idx[i]];
    if (std::find(used.begin(), used.end(), cand) == used.end() && ok(cand)) return cand;
    // Next combination.
    int j = static_cast<int>(r) - 1;
    while (j >= 0 && idx[j] == n - r + j) --j;
    if (j < 0) return std::nullopt;
    ++idx[j];
    for (unsigned t = j + 1; t < r; ++t) idx[t] = idx[t - 1] + 1;
  }
}

Subspace span_of_set(const Field& f, const FeSet& elems) {
  return span(f, std::vector<Fe>(elems.begin(), elems.end()));
}

}  // namespace

std::string_view to_string(DecodeStatus status) {
  switch (status) {
    case DecodeStatus::success: return "success";
    case DecodeStatus::insufficient_nonzero_syndromes: return "insufficient_nonzero_syndromes";
    case DecodeStatus::support_not_recovered: return "support_not_recovered";
    case DecodeStatus::partial_support: return "partial_support";
    case DecodeStatus::reconstruction_inconsistent: return "reconstruction_inconsistent";
    case DecodeStatus::reconstruction_ambiguous: return "reconstruction_ambiguous";
  }
  return "unknown";
}

NormalizedSystem normalize(const Field& f, const RowLrpcCode& code, const Vec& s) {
  const std::size_t rows = code.H.rows();
  if (s.size() != rows) fail(Errc::shape_mismatch, "syndrome length must be n-k");
  NormalizedSystem sys;
  sys.original_syndrome = s;
  sys.spaces.reserve(rows);
  sys.rhs_bits.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    f.check(s[i]);
    if (f.is_zero(s[i])) {
      sys.spaces.push_back(code.row_supports[i]);
      sys.rhs_bits.push_back(0);
    } else {
      sys.spaces.push_back(scale(f, f.inv(s[i]), code.row_supports[i]));
      sys.rhs_bits.push_back(1);
    }
  }
  return sys;
}

CandidateSet candidate_set(const Field& f, const NormalizedSystem& sys,
                           const std::vector<unsigned>& indices, unsigned r,
                           std::uint64_t config_budget) {
  if (indices.size() != r || r == 0)
    fail(Errc::invalid_argument, "index set size must equal r >= 1");
  std::vector<unsigned> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(Errc::invalid_argument, "index set rows must be distinct");
  std::uint64_t dim_total = 0;
  for (unsigned i : indices) {
    if (i >= sys.spaces.size()) fail(Errc::invalid_argument, "row index out of range");
    if (!sys.rhs_bits[i]) fail(Errc::invalid_argument, "index set may only use nonzero-syndrome rows");
    dim_total += sys.spaces[i].dim();
  }
  const std::uint64_t configs = pow_checked(f.q(), r * dim_total, config_budget);
  if (configs > config_budget)
    fail(Errc::enumeration_too_large, "candidate configurations exceed the budget");

  CandidateSet out;
  out.indices = indices;
  out.configurations = configs;

  if (r == 1) {
    // 1x1 Cramer: a * eps = 1, so every nonzero a contributes inv(a).
    for (const Fe& a : enumerate(f, sys.spaces[indices[0]])) {
      if (f.is_zero(a)) continue;
      ++out.solves;
      out.elements.insert(f.inv(a));
    }
    return out;
  }

  if (r == 2) {
    // Closed-form 2x2 Cramer against rhs (1,1):
    //   det = u1*v2 - u2*v1, eps1 = (v2 - u2)/det, eps2 = (u1 - v1)/det,
    // with (u1, u2) from the first row's space and (v1, v2) from the second.
    const std::vector<Fe> eu = enumerate(f, sys.spaces[indices[0]]);
    const std::vector<Fe> ev = enumerate(f, sys.spaces[indices[1]]);
    const std::size_t nu = eu.size(), nv = ev.size();
    // Product table keeps the hot loop multiplication-free for typical dims.
    const bool table = nu * nv <= (1u << 14);
    std::vector<Fe> prod;
    if (table) {
      prod.reserve(nu * nv);
      for (std::size_t u = 0; u < nu; ++u)
        for (std::size_t v = 0; v < nv; ++v) prod.push_back(f.mul(eu[u], ev[v]));
    }
    auto product_at = [&](std::size_t u, std::size_t v) {
      return table ? prod[u * nv + v] : f.mul(eu[u], ev[v]);
    };
    std::unordered_map<Fe, Fe, FeHash> inv_cache;
    for (std::size_t u1 = 0; u1 < nu; ++u1)
      for (std::size_t u2 = 0; u2 < nu; ++u2)
        for (std::size_t v1 = 0; v1 < nv; ++v1)
          for (std::size_t v2 = 0; v2 < nv; ++v2) {
            const Fe det = f.sub(product_at(u1, v2), product_at(u2, v1));
            if (f.is_zero(det)) continue;
            ++out.solves;
            auto it = inv_cache.find(det);
            if (it == inv_cache.end()) it = inv_cache.emplace(det, f.inv(det)).first;
            const Fe& det_inv = it->second;
            const Fe num1 = f.sub(ev[v2], eu[u2]);
            if (!f.is_zero(num1)) out.elements.insert(f.mul(num1, det_inv));
            const Fe num2 = f.sub(eu[u1], ev[v1]);
            if (!f.is_zero(num2)) out.elements.insert(f.mul(num2, det_inv));
          }
    return out;
  }

  // General r: odometer over all configurations, one r x r solve each.
  std::vector<std::vector<Fe>> elems;
  for (unsigned i : indices) elems.push_back(enumerate(f, sys.spaces[i]));
  std::vector<std::size_t> digit(static_cast<std::size_t>(r) * r, 0);
  const Vec ones(r, f.one());
  for (;;) {
    Mat a(r, r, f.zero());
    for (unsigned row = 0; row < r; ++row)
      for (unsigned col = 0; col < r; ++col) a.at(row, col) = elems[row][digit[row * r + col]];
    const SolveFqm sol = solve_fqm(f, a, ones);
    if (sol.kind == SolveFqm::Kind::unique) {
      ++out.solves;
      for (const Fe& x : sol.x)
        if (!f.is_zero(x)) out.elements.insert(x);
    }
    std::size_t pos = 0;
    while (pos < digit.size()) {
      const unsigned row = static_cast<unsigned>(pos / r);
      if (++digit[pos] < elems[row].size()) break;
      digit[pos++] = 0;
    }
    if (pos == digit.size()) break;
  }
  return out;
}

std::vector<std::vector<unsigned>> select_index_sets(const Field& f, const NormalizedSystem& sys,
                                                     unsigned r, unsigned max_sets) {
  std::vector<unsigned> usable;
  for (unsigned i = 0; i < sys.rhs_bits.size(); ++i)
    if (sys.rhs_bits[i]) usable.push_back(i);
  std::vector<std::vector<unsigned>> chosen;
  if (r == 0 || usable.size() < r) return chosen;

  // Pairwise trivial-intersection cache over usable rows.
  std::map<std::pair<unsigned, unsigned>, bool> trivial;
  auto pair_trivial = [&](unsigned a, unsigned b) {
    const auto key = std::minmax(a, b);
    auto it = trivial.find(key);
    if (it == trivial.end())
      it = trivial.emplace(key, intersect(f, sys.spaces[a], sys.spaces[b]).dim() == 0).first;
    return it->second;
  };
  auto all_trivial = [&](const std::vector<unsigned>& set) {
    for (std::size_t i = 0; i < set.size(); ++i)
      for (std::size_t j = i + 1; j < set.size(); ++j)
        if (!pair_trivial(set[i], set[j])) return false;
    return true;
  };
  auto any = [](const std::vector<unsigned>&) { return true; };

  while (chosen.size() < max_sets) {
    std::vector<unsigned> pool = usable;
    std::size_t added = 0;
    while (pool.size() >= r && chosen.size() < max_sets) {
      auto pick = first_subset(pool, r, chosen, all_trivial);
      if (!pick) pick = first_subset(pool, r, chosen, any);
      if (!pick) break;
      chosen.push_back(*pick);
      ++added;
      std::vector<unsigned> next;
      for (unsigned row : pool)
        if (std::find(pick->begin(), pick->end(), row) == pick->end()) next.push_back(row);
      pool = std::move(next);
    }
    if (added == 0) break;
  }
  return chosen;
}

SupportResult recover_support_rank1(const Field& f, const NormalizedSystem& sys) {
  SupportResult out;
  std::vector<unsigned> usable;
  for (unsigned i = 0; i < sys.rhs_bits.size(); ++i)
    if (sys.rhs_bits[i]) usable.push_back(i);
  if (usable.empty()) {
    out.status = DecodeStatus::insufficient_nonzero_syndromes;
    return out;
  }
  Subspace meet = sys.spaces[usable[0]];
  out.sets_used.push_back({usable[0]});
  out.sets_intersected = 1;
  for (std::size_t t = 1; t < usable.size() && meet.dim() > 1; ++t) {
    meet = intersect(f, meet, sys.spaces[usable[t]]);
    out.sets_used.push_back({usable[t]});
    ++out.sets_intersected;
  }
  if (meet.dim() != 1) {
    out.status = DecodeStatus::support_not_recovered;
    return out;
  }
  const Fe w = meet.basis_elements(f)[0];
  out.status = DecodeStatus::success;
  out.support = span(f, {f.inv(w)});
  return out;
}

SupportResult recover_support(const Field& f, const NormalizedSystem& sys, unsigned r,
                              const DecodeOptions& opts) {
  if (r == 0) fail(Errc::invalid_argument, "r must be at least 1");
  if (r == 1) return recover_support_rank1(f, sys);

  SupportResult out;
  const auto sets = select_index_sets(f, sys, r, opts.max_sets);
  if (sets.empty()) {
    out.status = DecodeStatus::insufficient_nonzero_syndromes;
    return out;
  }
  bool saw_partial = false;
  std::size_t idx = 0;
  while (idx < sets.size()) {
    FeSet surviving;
    if (idx + 1 < sets.size()) {
      const CandidateSet a = candidate_set(f, sys, sets[idx], r, opts.config_budget);
      const CandidateSet b = candidate_set(f, sys, sets[idx + 1], r, opts.config_budget);
      const FeSet& small = a.elements.size() <= b.elements.size() ? a.elements : b.elements;
      const FeSet& large = a.elements.size() <= b.elements.size() ? b.elements : a.elements;
      for (const Fe& e : small)
        if (large.count(e)) surviving.insert(e);
      out.sets_used.push_back(sets[idx]);
      out.sets_used.push_back(sets[idx + 1]);
      idx += 2;
    } else {
      surviving = candidate_set(f, sys, sets[idx], r, opts.config_budget).elements;
      out.sets_used.push_back(sets[idx]);
      idx += 1;
    }
    out.sets_intersected = static_cast<unsigned>(out.sets_used.size());
    const Subspace s = span_of_set(f, surviving);
    if (s.dim() == r) {
      out.status = DecodeStatus::success;
      out.support = s;
      return out;
    }
    if (s.dim() > 0 && s.dim() < r) saw_partial = true;
  }
  out.status = saw_partial ? DecodeStatus::partial_support : DecodeStatus::support_not_recovered;
  return out;
}

ReconstructResult reconstruct_error(const Field& f, const RowLrpcCode& code, const Vec& s,
                                    const Subspace& support) {
  if (support.dim() == 0) fail(Errc::invalid_argument, "support must have positive dimension");
  const std::size_t rows = code.H.rows();
  if (s.size() != rows) fail(Errc::shape_mismatch, "syndrome length must be n-k");
  const unsigned rdim = support.dim();
  const auto eps = support.basis_elements(f);

  // Unknown lambda[j*rdim + l] is the coefficient of eps[l] in error entry j.
  Mat coeffs(rows, static_cast<std::size_t>(code.n) * rdim, f.zero());
  for (std::size_t i = 0; i < rows; ++i)
    for (unsigned j = 0; j < code.n; ++j) {
      const Fe& h = code.H.at(i, j);
      if (f.is_zero(h)) continue;
      for (unsigned l = 0; l < rdim; ++l)
        coeffs.at(i, static_cast<std::size_t>(j) * rdim + l) = f.mul(h, eps[l]);
    }
  const fq::Solve sol = unfold_solve(f, coeffs, s);

  ReconstructResult out;
  if (sol.kind == fq::Solve::Kind::inconsistent) {
    out.status = DecodeStatus::reconstruction_inconsistent;
    return out;
  }
  if (sol.kind == fq::Solve::Kind::underdetermined) {
    out.status = DecodeStatus::reconstruction_ambiguous;
    return out;
  }
  Vec e(code.n, f.zero());
  for (unsigned j = 0; j < code.n; ++j)
    for (unsigned l = 0; l < rdim; ++l) {
      const Coord lam = sol.x[static_cast<std::size_t>(j) * rdim + l];
      if (lam) e[j] = f.add(e[j], f.scalar_mul(lam, eps[l]));
    }
  if (syndrome(f, code, e) != s)
    fail(Errc::construction_failed, "reconstructed error fails its own syndrome");
  const Subspace esupp = entry_span(f, e);
  out.status = DecodeStatus::success;
  out.error = ErrorPattern{std::move(e), esupp, esupp.dim()};
  return out;
}

bool dimension_condition(unsigned n, unsigned k, unsigned r, unsigned m) {
  const long bound1 = static_cast<long>(n) - 2l * r;
  const long ceil_nr_m = (static_cast<long>(n) * r + m - 1) / m;
  const long bound2 = static_cast<long>(n) - ceil_nr_m;
  return static_cast<long>(k) <= std::min(bound1, bound2);
}

DecodeOutcome decode(const Field& f, const RowLrpcCode& code, const Vec& s, unsigned r,
                     const DecodeOptions& opts) {
  if (r < 1 || r > f.m()) fail(Errc::invalid_argument, "need 1 <= r <= m");
  DecodeOutcome out;
  out.dimension_condition_ok = dimension_condition(code.n, code.k, r, f.m());
  const NormalizedSystem sys = normalize(f, code, s);
  const SupportResult sup = recover_support(f, sys, r, opts);
  out.sets_intersected = sup.sets_intersected;
  out.index_sets_used = sup.sets_used;
  if (sup.status != DecodeStatus::success) {
    out.status = sup.status;
    return out;
  }
  out.support_found = sup.support;
  const ReconstructResult rec = reconstruct_error(f, code, s, *sup.support);
  if (rec.status != DecodeStatus::success) {
    out.status = rec.status;
    return out;
  }
  // A unique solution of rank below r means no error of rank exactly r fits
  // this support.
  if (rec.error->r != r) {
    out.status = DecodeStatus::reconstruction_inconsistent;
    return out;
  }
  out.status = DecodeStatus::success;
  out.error = rec.error;
  return out;
}

}  // namespace rowlrpc
