#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rowlrpc/field.hpp"

namespace rowlrpc {

class Rng;
class Subspace;

namespace detail {
// Internal factory: rows must already be a canonical RREF basis.
Subspace make_subspace(std::uint32_t field_id, unsigned m, std::vector<CoordRow> rref_rows);
}  // namespace detail

// F_q-subspace of F_{q^m}, held as its canonical reduced-row-echelon basis so
// that equal subspaces compare equal as values.
class Subspace {
public:
  Subspace() = default;

  unsigned dim() const { return static_cast<unsigned>(rows_.size()); }
  unsigned ambient() const { return m_; }
  std::uint32_t field_id() const { return field_id_; }
  const std::vector<CoordRow>& basis_rows() const { return rows_; }
  std::vector<Fe> basis_elements(const Field& f) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

private:
  Subspace(std::uint32_t field_id, unsigned m, std::vector<CoordRow> rows)
      : field_id_(field_id), m_(m), rows_(std::move(rows)) {}

  std::uint32_t field_id_ = 0;
  unsigned m_ = 0;
  std::vector<CoordRow> rows_;

  friend Subspace detail::make_subspace(std::uint32_t, unsigned, std::vector<CoordRow>);
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& v) const noexcept;
};

// Default element-enumeration budget: q^dim at most 2^20.
inline constexpr std::uint64_t kEnumBudget = 1ull << 20;

Subspace zero_subspace(const Field& f);
Subspace full_space(const Field& f);
Subspace span(const Field& f, const std::vector<Fe>& elements);
bool contains(const Field& f, const Subspace& v, const Fe& a);
Subspace sum(const Field& f, const Subspace& a, const Subspace& b);
Subspace intersect(const Field& f, const Subspace& a, const Subspace& b);
// Span of all pairwise products of basis elements; dim <= dim(a)*dim(b).
Subspace product(const Field& f, const Subspace& a, const Subspace& b);
Subspace scale(const Field& f, const Fe& lambda, const Subspace& v);
// All q^dim elements, each exactly once, deterministic order.
std::vector<Fe> enumerate(const Field& f, const Subspace& v, std::uint64_t budget = kEnumBudget);
// Inverses of the q^dim - 1 nonzero elements (a set, generally not a subspace).
std::vector<Fe> inverse_set(const Field& f, const Subspace& v, std::uint64_t budget = kEnumBudget);
// Dimension-exactly-d subspace sampled by growing the span with random elements.
Subspace random_subspace(const Field& f, unsigned d, Rng& rng);
// Some lambda with a = scale(lambda, b), if one exists.
std::optional<Fe> is_scalar_multiple(const Field& f, const Subspace& a, const Subspace& b,
                                     std::uint64_t budget = kEnumBudget);
// Every d-dimensional subspace of F_{q^m}, deterministic order (RREF pivot
// patterns); count must fit the budget.
std::vector<Subspace> all_subspaces_of_dim(const Field& f, unsigned d,
                                           std::uint64_t budget = kEnumBudget);
// Number of d-dimensional subspaces of F_{q^m} (Gaussian binomial).
std::uint64_t subspace_count(Coord q, unsigned m, unsigned d);

// RREF basis, one row per line, coordinates in the field's textual form.
std::string subspace_to_string(const Field& f, const Subspace& v);

}  // namespace rowlrpc
