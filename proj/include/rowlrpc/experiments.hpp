#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rowlrpc/decoder.hpp"
#include "rowlrpc/field.hpp"

namespace rowlrpc {

// One Monte Carlo run: per trial a fresh code, a fresh exact-rank error, and a
// full decode of the resulting syndrome.
struct TrialConfig {
  Coord q = 2;
  unsigned m = 20;
  unsigned n = 20;
  unsigned k = 16;
  unsigned rho = 2;
  unsigned r = 2;
  unsigned trials = 1000;
  std::uint64_t seed = 1;
  unsigned max_sets = 4;
  unsigned rows_used = 0;  // 0 means all n - k parity rows

  unsigned effective_rows() const { return rows_used == 0 ? n - k : rows_used; }
};

void validate_config(const TrialConfig& cfg);

struct TrialStats {
  unsigned trials = 0;
  unsigned successes = 0;
  std::map<DecodeStatus, unsigned> failure_counts;
  std::uint64_t zero_syndrome_rows_total = 0;
  double mean_sets_intersected = 0.0;
  double wall_time_seconds = 0.0;
};

// Deterministic for a fixed config: trial t always uses Rng::stream(seed, t),
// so the thread count only changes how trials are partitioned, not what any
// trial does. wall_time_seconds is the one field that varies between runs.
TrialStats run_trials(const TrialConfig& cfg, unsigned threads = 1);

struct ZeroSyndromeStats {
  std::uint64_t row_draws = 0;
  std::uint64_t zero_rows = 0;
  double observed_rate = 0.0;
  double predicted_rate = 0.0;       // q^-(r * rho)
  std::vector<double> at_least_t;    // P(>= t nonzero rows), t = 1 .. rows_used
};

ZeroSyndromeStats zero_syndrome_stats(const TrialConfig& cfg);

// True when some selected index set uses two rows whose normalized spaces
// intersect nontrivially; such shared directions inflate candidate sets.
bool has_nontrivial_pair(const Field& f, const std::vector<Subspace>& spaces,
                         const std::vector<std::vector<unsigned>>& index_sets);

struct OverlapStats {
  unsigned trials = 0;
  unsigned flagged_trials = 0;  // trials where a used pair of spaces overlaps
  std::map<DecodeStatus, unsigned> flagged_by_status;
  std::map<DecodeStatus, unsigned> clean_by_status;
};

OverlapStats overlap_failure_stats(const TrialConfig& cfg);

enum class ReportFormat { csv, json };

// CSV columns: q,m,n,k,rho,r,trials,seed,successes,<one per failure status>,
// zero_rate,mean_sets,wall_time. JSON mirrors the same fields.
std::string report(const TrialConfig& cfg, const TrialStats& stats, ReportFormat format);
void write_report(const TrialConfig& cfg, const TrialStats& stats, ReportFormat format,
                  const std::string& path);

// Brute-force cross-check at a deliberately small size: for each planted trial
// the oracle walks every dim-r subspace and keeps those consistent with the
// syndrome. Any decoder success must agree with a uniquely admissible support.
struct OracleCheckResult {
  unsigned trials = 0;
  unsigned planted_admissible = 0;  // sanity: should equal trials
  unsigned oracle_unique = 0;       // trials with exactly one admissible support
  unsigned decoder_successes = 0;
  unsigned agreements = 0;          // successes matching the oracle's unique support
  unsigned contradictions = 0;      // successes the oracle rules out
};

struct OraclePreset {
  TrialConfig cfg;
  std::string name;
};

OraclePreset oracle_preset(const std::string& name);  // "tiny" is the only preset
OracleCheckResult oracle_check(const TrialConfig& cfg);

}  // namespace rowlrpc
