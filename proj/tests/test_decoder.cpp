#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_set>
#include <vector>

#include "rowlrpc/channel.hpp"
#include "rowlrpc/codes.hpp"
#include "rowlrpc/decoder.hpp"
#include "rowlrpc/error.hpp"
#include "rowlrpc/rng.hpp"
#include "rowlrpc/subspace.hpp"

using namespace rowlrpc;

namespace {

using FeSet = std::unordered_set<Fe, FeHash>;

struct Planted {
  RowLrpcCode code;
  ErrorPattern err;
  Vec s;
};

Planted plant(const Field& f, unsigned n, unsigned k, unsigned rho, unsigned r, Rng& rng) {
  Planted p;
  p.code = sample_row_lrpc(f, n, k, rho, rng);
  p.err = sample_error(f, n, r, rng);
  p.s = syndrome(f, p.code, p.err.e);
  return p;
}

Vec zeros(const Field& f, std::size_t n) { return Vec(n, f.from_scalar(0)); }

bool disjoint(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  for (unsigned x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("decoder");

TEST_CASE("status labels are stable") {
  CHECK(to_string(DecodeStatus::success) == "success");
  CHECK(to_string(DecodeStatus::insufficient_nonzero_syndromes) ==
        "insufficient_nonzero_syndromes");
  CHECK(to_string(DecodeStatus::support_not_recovered) == "support_not_recovered");
  CHECK(to_string(DecodeStatus::partial_support) == "partial_support");
  CHECK(to_string(DecodeStatus::reconstruction_inconsistent) ==
        "reconstruction_inconsistent");
  CHECK(to_string(DecodeStatus::reconstruction_ambiguous) == "reconstruction_ambiguous");
}

TEST_CASE("normalize scales supports by syndrome inverses") {
  Field f(2, 8);
  Rng rng(41);

  SUBCASE("zero syndrome keeps the raw supports and flags every row unusable") {
    RowLrpcCode code = sample_row_lrpc(f, 6, 3, 2, rng);
    NormalizedSystem sys = normalize(f, code, zeros(f, 3));
    REQUIRE(sys.spaces.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(sys.rhs_bits[i] == 0);
      CHECK(sys.spaces[i] == code.row_supports[i]);
    }
  }

  SUBCASE("nonzero rows become inverse-scaled supports of the same dimension") {
    for (unsigned t = 0; t < 40; ++t) {
      Planted p = plant(f, 6, 3, 2, 2, rng);
      NormalizedSystem sys = normalize(f, p.code, p.s);
      CHECK(sys.original_syndrome == p.s);
      for (std::size_t i = 0; i < sys.spaces.size(); ++i) {
        CHECK(sys.spaces[i].dim() == p.code.row_supports[i].dim());
        if (f.is_zero(p.s[i])) {
          CHECK(sys.rhs_bits[i] == 0);
        } else {
          CHECK(sys.rhs_bits[i] == 1);
          CHECK(sys.spaces[i] == scale(f, f.inv(p.s[i]), p.code.row_supports[i]));
        }
      }
    }
  }

  SUBCASE("rank-1 errors put the inverse of the error element in every usable row") {
    for (unsigned t = 0; t < 60; ++t) {
      Planted p = plant(f, 6, 3, 2, 1, rng);
      // Any nonzero error entry spans the support; its inverse must normalize in.
      Fe eps = p.err.support.basis_elements(f)[0];
      NormalizedSystem sys = normalize(f, p.code, p.s);
      for (std::size_t i = 0; i < sys.spaces.size(); ++i)
        if (sys.rhs_bits[i]) CHECK(contains(f, sys.spaces[i], f.inv(eps)));
    }
  }

  SUBCASE("syndrome of the wrong length is rejected") {
    RowLrpcCode code = sample_row_lrpc(f, 6, 3, 2, rng);
    CHECK_THROWS_AS(normalize(f, code, zeros(f, 2)), Error);
  }
}

TEST_CASE("single-row candidate sets reduce to inverse sets") {
  Field f(2, 10);
  Rng rng(42);
  for (unsigned t = 0; t < 25; ++t) {
    Planted p = plant(f, 6, 3, 2, 1, rng);
    NormalizedSystem sys = normalize(f, p.code, p.s);
    for (unsigned i = 0; i < sys.spaces.size(); ++i) {
      if (!sys.rhs_bits[i]) continue;
      CandidateSet cs = candidate_set(f, sys, {i}, 1);
      std::vector<Fe> inv = inverse_set(f, sys.spaces[i]);
      CHECK(cs.elements == FeSet(inv.begin(), inv.end()));
      CHECK(cs.configurations ==
            static_cast<std::uint64_t>(1) << sys.spaces[i].dim());
      CHECK(cs.solves == inv.size());
    }
  }
}

TEST_CASE("pair candidate sets match a direct enumeration oracle") {
  Field f(2, 10);
  Rng rng(43);
  const Fe one = f.from_scalar(1);
  unsigned checked = 0;
  for (unsigned t = 0; t < 12; ++t) {
    Planted p = plant(f, 6, 2, 2, 2, rng);
    NormalizedSystem sys = normalize(f, p.code, p.s);
    std::vector<unsigned> usable;
    for (unsigned i = 0; i < sys.spaces.size(); ++i)
      if (sys.rhs_bits[i]) usable.push_back(i);
    if (usable.size() < 2) continue;
    const unsigned a = usable[0], b = usable[1];

    // Independent oracle: enumerate every configuration, solve the 2x2 system
    // by generic elimination, and keep all nonzero coordinates of unique
    // solutions.  Cross-checks the closed-form path used by candidate_set.
    FeSet oracle;
    std::uint64_t solves = 0;
    std::vector<Fe> eu = enumerate(f, sys.spaces[a]);
    std::vector<Fe> ev = enumerate(f, sys.spaces[b]);
    Subspace prod = product(f, sys.spaces[a], sys.spaces[b]);
    Subspace add = sum(f, sys.spaces[a], sys.spaces[b]);
    for (const Fe& u1 : eu)
      for (const Fe& u2 : eu)
        for (const Fe& v1 : ev)
          for (const Fe& v2 : ev) {
            Fe det = f.sub(f.mul(u1, v2), f.mul(u2, v1));
            CHECK(contains(f, prod, det));
            if (f.is_zero(det)) continue;
            ++solves;
            Fe n1 = f.sub(v2, u2);
            Fe n2 = f.sub(u1, v1);
            CHECK(contains(f, add, n1));
            CHECK(contains(f, add, n2));
            Mat m = Mat::from_rows({{u1, u2}, {v1, v2}});
            SolveFqm sol = solve_fqm(f, m, {one, one});
            REQUIRE(sol.kind == SolveFqm::Kind::unique);
            for (const Fe& x : sol.x)
              if (!f.is_zero(x)) oracle.insert(x);
          }

    CandidateSet cs = candidate_set(f, sys, {a, b}, 2);
    CHECK(cs.elements == oracle);
    CHECK(cs.solves == solves);
    CHECK(cs.configurations == static_cast<std::uint64_t>(eu.size()) * eu.size() *
                                   ev.size() * ev.size());
    ++checked;
  }
  CHECK(checked >= 8);
}

TEST_CASE("candidate sets contain the planted support elements") {
  Field f(2, 20);
  Rng rng(44);
  unsigned full = 0, trials = 100;
  for (unsigned t = 0; t < trials; ++t) {
    Planted p = plant(f, 20, 14, 2, 2, rng);
    NormalizedSystem sys = normalize(f, p.code, p.s);
    auto sets = select_index_sets(f, sys, 2, 4);
    if (sets.empty()) continue;
    CandidateSet cs = candidate_set(f, sys, sets[0], 2);
    // Exact enumeration cost: q^(r^2 * rho) configurations, one solve each.
    CHECK(cs.configurations == 256);
    CHECK(cs.solves <= cs.configurations);
    bool all = true;
    for (const Fe& e : enumerate(f, p.err.support))
      if (!f.is_zero(e) && !cs.elements.count(e)) all = false;
    if (all) ++full;
  }
  CHECK(full >= 99);
}

TEST_CASE("candidate sets validate their inputs") {
  Field f(2, 8);
  Rng rng(45);
  Planted p = plant(f, 6, 2, 2, 2, rng);
  NormalizedSystem sys = normalize(f, p.code, p.s);
  std::vector<unsigned> usable;
  for (unsigned i = 0; i < sys.spaces.size(); ++i)
    if (sys.rhs_bits[i]) usable.push_back(i);
  REQUIRE(usable.size() >= 2);
  const unsigned a = usable[0], b = usable[1];

  CHECK_THROWS_AS(candidate_set(f, sys, {a}, 2), Error);             // size != r
  CHECK_THROWS_AS(candidate_set(f, sys, {a, a}, 2), Error);          // duplicate row
  CHECK_THROWS_AS(candidate_set(f, sys, {a, 17}, 2), Error);         // out of range
  CHECK_THROWS_AS(candidate_set(f, sys, {}, 0), Error);              // r = 0
  CHECK_THROWS_AS(candidate_set(f, sys, {a, b}, 2, 4), Error);       // budget
  for (unsigned i = 0; i < sys.spaces.size(); ++i)
    if (!sys.rhs_bits[i]) CHECK_THROWS_AS(candidate_set(f, sys, {a, i}, 2), Error);
}

TEST_CASE("candidate sets with no invertible configuration are empty") {
  Field f(2, 6);
  NormalizedSystem sys;
  sys.spaces = {zero_subspace(f), zero_subspace(f)};
  sys.rhs_bits = {1, 1};
  sys.original_syndrome = {f.from_scalar(1), f.from_scalar(1)};
  CandidateSet cs = candidate_set(f, sys, {0, 1}, 2);
  CHECK(cs.elements.empty());
  CHECK(cs.solves == 0);
  CHECK(cs.configurations == 1);
}

TEST_CASE("index-set selection pairs disjoint usable rows first") {
  Field f(2, 20);
  Rng rng(46);

  SUBCASE("four generic nonzero rows split into two disjoint pairs") {
    unsigned seen = 0;
    for (unsigned t = 0; t < 30 && seen < 10; ++t) {
      Planted p = plant(f, 20, 16, 2, 2, rng);
      NormalizedSystem sys = normalize(f, p.code, p.s);
      unsigned usable = 0;
      for (auto b : sys.rhs_bits) usable += b;
      if (usable != 4) continue;
      ++seen;
      auto two = select_index_sets(f, sys, 2, 2);
      REQUIRE(two.size() == 2);
      CHECK(disjoint(two[0], two[1]));

      auto four = select_index_sets(f, sys, 2, 4);
      REQUIRE(four.size() >= 2);
      CHECK(four[0] == two[0]);
      CHECK(four[1] == two[1]);
      // Anything past the disjoint round must reuse rows already consumed.
      for (std::size_t j = 2; j < four.size(); ++j)
        CHECK((!disjoint(four[j], four[0]) || !disjoint(four[j], four[1])));
      std::set<std::vector<unsigned>> uniq(four.begin(), four.end());
      CHECK(uniq.size() == four.size());
    }
    CHECK(seen == 10);
  }

  SUBCASE("rows with zero syndrome are never selected") {
    for (unsigned t = 0; t < 200; ++t) {
      Planted p = plant(f, 20, 16, 2, 2, rng);
      NormalizedSystem sys = normalize(f, p.code, p.s);
      for (const auto& set : select_index_sets(f, sys, 2, 4))
        for (unsigned i : set) CHECK(sys.rhs_bits[i] == 1);
    }
  }

  SUBCASE("fewer usable rows than r yields no sets") {
    Planted p = plant(f, 20, 16, 2, 2, rng);
    NormalizedSystem sys = normalize(f, p.code, zeros(f, 4));
    CHECK(select_index_sets(f, sys, 2, 4).empty());
  }

  SUBCASE("rows with overlapping spaces are avoided when an alternative exists") {
    Rng srng(47);
    Subspace shared = random_subspace(f, 2, srng);
    std::vector<Fe> sb = shared.basis_elements(f);
    // Space 1 shares a basis vector with space 0; spaces 2 and 3 are generic.
    Subspace overlap = span(f, {sb[0], f.random_nonzero(srng)});
    NormalizedSystem sys;
    sys.spaces = {shared, overlap, random_subspace(f, 2, srng), random_subspace(f, 2, srng)};
    sys.rhs_bits = {1, 1, 1, 1};
    sys.original_syndrome = Vec(4, f.from_scalar(1));
    REQUIRE(intersect(f, sys.spaces[0], sys.spaces[1]).dim() > 0);
    REQUIRE(intersect(f, sys.spaces[0], sys.spaces[2]).dim() == 0);
    auto sets = select_index_sets(f, sys, 2, 2);
    REQUIRE(sets.size() == 2);
    CHECK(sets[0] == std::vector<unsigned>{0, 2});
    CHECK(sets[1] == std::vector<unsigned>{1, 3});
  }
}

TEST_CASE("rank-1 support recovery intersects normalized rows") {
  SUBCASE("a single usable row of unit dimension determines the support") {
    Field f(2, 12);
    Rng rng(48);
    unsigned seen = 0;
    for (unsigned t = 0; t < 40 && seen < 15; ++t) {
      Planted p = plant(f, 4, 3, 1, 1, rng);
      if (f.is_zero(p.s[0])) continue;
      ++seen;
      NormalizedSystem sys = normalize(f, p.code, p.s);
      SupportResult res = recover_support_rank1(f, sys);
      REQUIRE(res.status == DecodeStatus::success);
      CHECK(*res.support == p.err.support);
    }
    CHECK(seen == 15);
  }

  SUBCASE("no usable rows reports insufficient syndromes") {
    Field f(2, 12);
    Rng rng(49);
    RowLrpcCode code = sample_row_lrpc(f, 6, 3, 2, rng);
    NormalizedSystem sys = normalize(f, code, zeros(f, 3));
    CHECK(recover_support_rank1(f, sys).status ==
          DecodeStatus::insufficient_nonzero_syndromes);
  }

  SUBCASE("planted rank-1 errors are recovered in at least 99% of 1000 trials") {
    Field f(2, 20);
    unsigned recovered = 0;
    for (unsigned t = 0; t < 1000; ++t) {
      Rng rng = Rng::stream(50, t);
      Planted p = plant(f, 20, 14, 2, 1, rng);
      DecodeOutcome out = decode(f, p.code, p.s, 1, {});
      if (out.support_found && *out.support_found == p.err.support) ++recovered;
    }
    CHECK(recovered >= 990);
  }
}

TEST_CASE("general support recovery dispatches r=1 to the running intersection") {
  Field f(2, 16);
  Rng rng(51);
  for (unsigned t = 0; t < 30; ++t) {
    Planted p = plant(f, 8, 4, 2, 1, rng);
    NormalizedSystem sys = normalize(f, p.code, p.s);
    SupportResult a = recover_support_rank1(f, sys);
    SupportResult b = recover_support(f, sys, 1, {});
    CHECK(a.status == b.status);
    if (a.status == DecodeStatus::success) CHECK(*a.support == *b.support);
  }
}

TEST_CASE("paired intersection recovers rank-2 supports at flagship parameters") {
  Field f(2, 20);

  SUBCASE("six parity rows recover nearly every support") {
    unsigned found = 0, match = 0;
    for (unsigned t = 0; t < 100; ++t) {
      Rng rng = Rng::stream(52, t);
      Planted p = plant(f, 20, 14, 2, 2, rng);
      NormalizedSystem sys = normalize(f, p.code, p.s);
      SupportResult res = recover_support(f, sys, 2, {});
      if (res.status != DecodeStatus::success) continue;
      ++found;
      REQUIRE(res.support->dim() == 2);
      CHECK(res.sets_intersected >= 1);
      CHECK(!res.sets_used.empty());
      if (*res.support == p.err.support) ++match;
    }
    CHECK(found >= 90);
    CHECK(match >= found - 3);
  }

  SUBCASE("four parity rows reproduce the harder regime with partial outcomes") {
    unsigned found = 0, partial = 0, missed = 0;
    for (unsigned t = 0; t < 500; ++t) {
      Rng rng = Rng::stream(53, t);
      Planted p = plant(f, 20, 16, 2, 2, rng);
      NormalizedSystem sys = normalize(f, p.code, p.s);
      SupportResult res = recover_support(f, sys, 2, {});
      if (res.status == DecodeStatus::success) ++found;
      if (res.status == DecodeStatus::partial_support) ++partial;
      if (res.status == DecodeStatus::support_not_recovered) ++missed;
    }
    // Wide 5-sigma sanity band around the measured ~0.71 recovery rate.
    CHECK(found >= 300);
    CHECK(found <= 410);
    CHECK(partial >= 1);
    CHECK(missed >= 1);
  }
}

TEST_CASE("overlapping index sets inherit the shared row's inverse set") {
  Field f(2, 20);
  unsigned checked = 0;
  for (unsigned t = 0; t < 40 && checked < 20; ++t) {
    Rng rng = Rng::stream(54, t);
    Planted p = plant(f, 20, 16, 2, 2, rng);
    NormalizedSystem sys = normalize(f, p.code, p.s);
    std::vector<unsigned> usable;
    for (unsigned i = 0; i < sys.spaces.size(); ++i)
      if (sys.rhs_bits[i]) usable.push_back(i);
    if (usable.size() < 3) continue;
    ++checked;
    CandidateSet bi = candidate_set(f, sys, {usable[0], usable[1]}, 2);
    CandidateSet bj = candidate_set(f, sys, {usable[0], usable[2]}, 2);
    for (const Fe& w : inverse_set(f, sys.spaces[usable[0]])) {
      CHECK(bi.elements.count(w) == 1);
      CHECK(bj.elements.count(w) == 1);
    }
  }
  CHECK(checked == 20);
}

TEST_CASE("error reconstruction solves the unfolded syndrome system") {
  Field f(2, 6);

  SUBCASE("the true support reproduces the planted error whenever unique") {
    unsigned unique = 0, exact = 0;
    for (unsigned t = 0; t < 300; ++t) {
      Rng rng = Rng::stream(777, t);
      Planted p = plant(f, 6, 2, 2, 2, rng);
      ReconstructResult res = reconstruct_error(f, p.code, p.s, p.err.support);
      // The planted error is always a solution, so inconsistency is impossible.
      CHECK(res.status != DecodeStatus::reconstruction_inconsistent);
      if (res.status != DecodeStatus::success) continue;
      ++unique;
      if (res.error->e == p.err.e) ++exact;
      CHECK(syndrome(f, p.code, res.error->e) == p.s);
      CHECK(res.error->r == rank_weight(f, res.error->e));
    }
    CHECK(unique >= 210);
    CHECK(exact == unique);
  }

  SUBCASE("a zero syndrome reconstructs the zero error whenever unique") {
    unsigned unique = 0;
    for (unsigned t = 0; t < 200; ++t) {
      Rng rng = Rng::stream(555, t);
      RowLrpcCode code = sample_row_lrpc(f, 6, 2, 2, rng);
      Subspace sup = random_subspace(f, 2, rng);
      ReconstructResult res = reconstruct_error(f, code, zeros(f, 4), sup);
      if (res.status != DecodeStatus::success) continue;
      ++unique;
      for (const Fe& e : res.error->e) CHECK(f.is_zero(e));
    }
    CHECK(unique >= 120);
  }

  SUBCASE("a wrong support is flagged inconsistent almost surely") {
    unsigned inconsistent = 0;
    for (unsigned t = 0; t < 200; ++t) {
      Rng rng = Rng::stream(999, t);
      Planted p = plant(f, 6, 2, 2, 2, rng);
      Subspace wrong = random_subspace(f, 2, rng);
      while (wrong == p.err.support) wrong = random_subspace(f, 2, rng);
      if (reconstruct_error(f, p.code, p.s, wrong).status ==
          DecodeStatus::reconstruction_inconsistent)
        ++inconsistent;
    }
    CHECK(inconsistent >= 190);
  }

  SUBCASE("a zero-dimensional support is rejected") {
    Rng rng(56);
    Planted p = plant(f, 6, 2, 2, 2, rng);
    CHECK_THROWS_AS(reconstruct_error(f, p.code, p.s, zero_subspace(f)), Error);
  }
}

TEST_CASE("dimension condition matches k <= min(n-2r, n-ceil(nr/m))") {
  CHECK(dimension_condition(20, 16, 2, 20));       // min(16, 18) = 16
  CHECK_FALSE(dimension_condition(20, 17, 2, 20));
  CHECK(dimension_condition(10, 6, 2, 40));        // min(6, 10-1) = 6
  CHECK_FALSE(dimension_condition(10, 7, 2, 40));
  CHECK(dimension_condition(20, 14, 2, 20));
  for (unsigned k = 1; k < 16; ++k) CHECK(dimension_condition(20, k, 2, 20));
}

TEST_CASE("end-to-end decoding returns the planted error when determined") {
  Field f(2, 16);
  unsigned successes = 0;
  for (unsigned t = 0; t < 100; ++t) {
    Rng rng = Rng::stream(57, t);
    Planted p = plant(f, 8, 2, 2, 2, rng);
    DecodeOutcome out = decode(f, p.code, p.s, 2, {});
    CHECK(out.dimension_condition_ok);
    if (out.support_found) CHECK(out.support_found->dim() == 2);
    if (out.status != DecodeStatus::success) continue;
    ++successes;
    REQUIRE(out.error.has_value());
    CHECK(out.error->e == p.err.e);
    CHECK(syndrome(f, p.code, out.error->e) == p.s);
    CHECK(rank_weight(f, out.error->e) == 2);
    CHECK(!out.index_sets_used.empty());
  }
  CHECK(successes >= 80);
}

TEST_CASE("decoding validates inputs and classifies degenerate syndromes") {
  Field f(2, 16);
  Rng rng(58);
  Planted p = plant(f, 8, 2, 2, 2, rng);
  CHECK_THROWS_AS(decode(f, p.code, p.s, 0, {}), Error);
  CHECK_THROWS_AS(decode(f, p.code, p.s, 17, {}), Error);
  DecodeOutcome out = decode(f, p.code, zeros(f, 6), 2, {});
  CHECK(out.status == DecodeStatus::insufficient_nonzero_syndromes);
  CHECK(!out.error.has_value());
  CHECK(!out.support_found.has_value());
}

TEST_CASE("large parameters leave reconstruction ambiguous but keep the support") {
  Field f(2, 20);
  unsigned ambiguous = 0;
  for (unsigned t = 0; t < 60; ++t) {
    Rng rng = Rng::stream(59, t);
    Planted p = plant(f, 20, 14, 2, 2, rng);
    DecodeOutcome out = decode(f, p.code, p.s, 2, {});
    if (out.status == DecodeStatus::reconstruction_ambiguous) {
      ++ambiguous;
      CHECK(out.support_found.has_value());
      CHECK(!out.error.has_value());
    }
    // Success requires a determined system: (n-k) * r * rho < n * r rules it out.
    CHECK(out.status != DecodeStatus::success);
  }
  CHECK(ambiguous >= 50);
}

TEST_SUITE_END();
