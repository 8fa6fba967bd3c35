#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rowlrpc/channel.hpp"
#include "rowlrpc/codes.hpp"
#include "rowlrpc/field.hpp"
#include "rowlrpc/linalg.hpp"
#include "rowlrpc/subspace.hpp"

namespace rowlrpc {

enum class DecodeStatus {
  success,
  insufficient_nonzero_syndromes,
  support_not_recovered,
  partial_support,
  reconstruction_inconsistent,
  reconstruction_ambiguous,
};

std::string_view to_string(DecodeStatus status);

// Per-row normalized system: spaces[i] is the row support scaled by the
// syndrome inverse when s_i != 0 (rhs_bits[i] = 1), or the raw row support
// when s_i = 0 (rhs_bits[i] = 0).
struct NormalizedSystem {
  std::vector<Subspace> spaces;
  std::vector<std::uint8_t> rhs_bits;
  Vec original_syndrome;
};

NormalizedSystem normalize(const Field& f, const RowLrpcCode& code, const Vec& s);

// Element candidates for the error-support basis harvested from the rows in
// `indices`: every configuration of row-space elements that yields an
// invertible r x r system against the all-ones right side contributes all of
// its nonzero solution coordinates.
struct CandidateSet {
  std::vector<unsigned> indices;
  std::unordered_set<Fe, FeHash> elements;
  std::uint64_t configurations = 0;  // exactly q^(r * sum of space dims)
  std::uint64_t solves = 0;          // configurations with invertible matrix
};

struct DecodeOptions {
  unsigned max_sets = 4;
  std::uint64_t config_budget = 1ull << 20;
};

CandidateSet candidate_set(const Field& f, const NormalizedSystem& sys,
                           const std::vector<unsigned>& indices, unsigned r,
                           std::uint64_t config_budget = DecodeOptions{}.config_budget);

// Up to max_sets size-r subsets of the rows with rhs_bit 1, emitted in rounds:
// each round is internally disjoint and prefers subsets whose spaces pairwise
// intersect trivially; once disjoint choices are exhausted, later rounds reuse
// rows (overlapping sets). Empty result when fewer than r rows are usable.
std::vector<std::vector<unsigned>> select_index_sets(const Field& f, const NormalizedSystem& sys,
                                                     unsigned r, unsigned max_sets);

struct SupportResult {
  DecodeStatus status = DecodeStatus::support_not_recovered;
  std::optional<Subspace> support;  // present iff status == success
  unsigned sets_intersected = 0;
  std::vector<std::vector<unsigned>> sets_used;
};

// r = 1: running intersection of the normalized spaces until dimension 1;
// the support is the span of the inverse of any nonzero intersection element.
SupportResult recover_support_rank1(const Field& f, const NormalizedSystem& sys);

// General r: candidate sets for the selected index sets are intersected
// pairwise in sequence; the span of each intersection is inspected and the
// first one of dimension exactly r is the recovered support. A span of
// intermediate dimension (0 < dim < r) anywhere marks PartialSupport.
SupportResult recover_support(const Field& f, const NormalizedSystem& sys, unsigned r,
                              const DecodeOptions& opts = {});

struct ReconstructResult {
  DecodeStatus status = DecodeStatus::reconstruction_inconsistent;
  std::optional<ErrorPattern> error;  // present iff status == success
};

// Solves for the F_q coordinates of each error entry over the given support
// basis by unfolding the syndrome equations over F_q. Unique solutions are
// verified against the syndrome; rank weight may come out below dim(support).
ReconstructResult reconstruct_error(const Field& f, const RowLrpcCode& code, const Vec& s,
                                    const Subspace& support);

struct DecodeOutcome {
  DecodeStatus status = DecodeStatus::insufficient_nonzero_syndromes;
  std::optional<ErrorPattern> error;     // present iff status == success
  std::optional<Subspace> support_found; // present when support recovery succeeded
  unsigned sets_intersected = 0;
  std::vector<std::vector<unsigned>> index_sets_used;
  bool dimension_condition_ok = true;    // k <= min(n-2r, n-ceil(nr/m))
};

// Sufficient-parameter check from the decoding analysis; failing it is a
// warning, not an input error.
bool dimension_condition(unsigned n, unsigned k, unsigned r, unsigned m);

DecodeOutcome decode(const Field& f, const RowLrpcCode& code, const Vec& s, unsigned r,
                     const DecodeOptions& opts = {});

}  // namespace rowlrpc
