#include "rowlrpc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "rowlrpc/channel.hpp"
#include "rowlrpc/error.hpp"
#include "rowlrpc/rng.hpp"

namespace rowlrpc {

namespace {

constexpr DecodeStatus kFailureStatuses[] = {
    DecodeStatus::insufficient_nonzero_syndromes,
    DecodeStatus::support_not_recovered,
    DecodeStatus::partial_support,
    DecodeStatus::reconstruction_inconsistent,
    DecodeStatus::reconstruction_ambiguous,
};

struct TrialRecord {
  DecodeStatus status;
  unsigned zero_rows;
  unsigned sets_intersected;
};

struct PlantedTrial {
  RowLrpcCode code;
  ErrorPattern err;
  Vec s;
};

PlantedTrial plant_trial(const Field& f, const TrialConfig& cfg, std::uint64_t trial) {
  Rng rng = Rng::stream(cfg.seed, trial);
  PlantedTrial p;
  p.code = sample_row_lrpc(f, cfg.n, cfg.k, cfg.rho, rng);
  p.err = sample_error(f, cfg.n, cfg.r, rng);
  p.s = syndrome(f, p.code, p.err.e);
  return p;
}

// Restricts decoding to the first `rows` parity rows when fewer than n-k are
// requested; the shortened matrix defines a supercode with the same errors.
TrialRecord run_one(const Field& f, const TrialConfig& cfg, std::uint64_t trial) {
  PlantedTrial p = plant_trial(f, cfg, trial);
  const unsigned rows = cfg.effective_rows();
  if (rows < cfg.n - cfg.k) {
    p.code = truncate_rows(f, p.code, rows);
    p.s.resize(rows);
  }
  DecodeOptions opts;
  opts.max_sets = cfg.max_sets;
  DecodeOutcome out = decode(f, p.code, p.s, cfg.r, opts);
  unsigned zero_rows = 0;
  for (const Fe& si : p.s)
    if (f.is_zero(si)) ++zero_rows;
  return {out.status, zero_rows, out.sets_intersected};
}

struct Tally {
  unsigned successes = 0;
  std::map<DecodeStatus, unsigned> failures;
  std::uint64_t zero_rows = 0;
  std::uint64_t sets_total = 0;

  void add(const TrialRecord& rec) {
    if (rec.status == DecodeStatus::success)
      ++successes;
    else
      ++failures[rec.status];
    zero_rows += rec.zero_rows;
    sets_total += rec.sets_intersected;
  }
  void merge(const Tally& o) {
    successes += o.successes;
    for (const auto& [st, c] : o.failures) failures[st] += c;
    zero_rows += o.zero_rows;
    sets_total += o.sets_total;
  }
};

std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double at_least_t_probability(double p_zero, unsigned rows, unsigned t) {
  // Sum of C(rows, i) (1 - p_zero)^i p_zero^(rows - i) over i >= t.
  double total = 0.0;
  for (unsigned i = t; i <= rows; ++i) {
    double c = 1.0;
    for (unsigned j = 0; j < i; ++j) c = c * double(rows - j) / double(j + 1);
    total += c * std::pow(1.0 - p_zero, double(i)) * std::pow(p_zero, double(rows - i));
  }
  return total;
}

}  // namespace

void validate_config(const TrialConfig& cfg) {
  if (cfg.k < 1 || cfg.k >= cfg.n) fail(Errc::invalid_argument, "need 1 <= k < n");
  if (cfg.rho < 1 || cfg.rho > cfg.m) fail(Errc::invalid_argument, "need 1 <= rho <= m");
  if (cfg.r < 1 || cfg.r > std::min(cfg.n, cfg.m))
    fail(Errc::invalid_argument, "need 1 <= r <= min(n, m)");
  if (cfg.trials < 1) fail(Errc::invalid_argument, "need at least one trial");
  if (cfg.rows_used > cfg.n - cfg.k)
    fail(Errc::invalid_argument, "rows_used cannot exceed n - k");
  if (cfg.max_sets < 1) fail(Errc::invalid_argument, "need max_sets >= 1");
}

TrialStats run_trials(const TrialConfig& cfg, unsigned threads) {
  validate_config(cfg);
  Field f(cfg.q, cfg.m);
  const auto start = std::chrono::steady_clock::now();

  Tally total;
  if (threads <= 1 || cfg.trials < 2) {
    for (std::uint64_t t = 0; t < cfg.trials; ++t) total.add(run_one(f, cfg, t));
  } else {
    const unsigned workers = std::min(threads, cfg.trials);
    std::vector<Tally> parts(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t t = w; t < cfg.trials; t += workers)
          parts[w].add(run_one(f, cfg, t));
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& part : parts) total.merge(part);
  }

  TrialStats stats;
  stats.trials = cfg.trials;
  stats.successes = total.successes;
  stats.failure_counts = total.failures;
  stats.zero_syndrome_rows_total = total.zero_rows;
  stats.mean_sets_intersected = double(total.sets_total) / double(cfg.trials);
  stats.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

ZeroSyndromeStats zero_syndrome_stats(const TrialConfig& cfg) {
  validate_config(cfg);
  Field f(cfg.q, cfg.m);
  const unsigned rows = cfg.effective_rows();

  ZeroSyndromeStats out;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    PlantedTrial p = plant_trial(f, cfg, t);
    for (unsigned i = 0; i < rows; ++i)
      if (f.is_zero(p.s[i])) ++out.zero_rows;
    out.row_draws += rows;
  }
  out.observed_rate = double(out.zero_rows) / double(out.row_draws);
  out.predicted_rate = std::pow(double(cfg.q), -double(cfg.r) * double(cfg.rho));
  out.at_least_t.reserve(rows);
  for (unsigned t = 1; t <= rows; ++t)
    out.at_least_t.push_back(at_least_t_probability(out.predicted_rate, rows, t));
  return out;
}

bool has_nontrivial_pair(const Field& f, const std::vector<Subspace>& spaces,
                         const std::vector<std::vector<unsigned>>& index_sets) {
  for (const auto& set : index_sets)
    for (std::size_t a = 0; a < set.size(); ++a)
      for (std::size_t b = a + 1; b < set.size(); ++b)
        if (intersect(f, spaces[set[a]], spaces[set[b]]).dim() > 0) return true;
  return false;
}

OverlapStats overlap_failure_stats(const TrialConfig& cfg) {
  validate_config(cfg);
  Field f(cfg.q, cfg.m);

  OverlapStats out;
  out.trials = cfg.trials;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    PlantedTrial p = plant_trial(f, cfg, t);
    const unsigned rows = cfg.effective_rows();
    if (rows < cfg.n - cfg.k) {
      p.code = truncate_rows(f, p.code, rows);
      p.s.resize(rows);
    }
    NormalizedSystem sys = normalize(f, p.code, p.s);
    auto sets = select_index_sets(f, sys, cfg.r, cfg.max_sets);
    const bool flagged = has_nontrivial_pair(f, sys.spaces, sets);

    DecodeOptions opts;
    opts.max_sets = cfg.max_sets;
    DecodeOutcome dec = decode(f, p.code, p.s, cfg.r, opts);
    if (flagged) {
      ++out.flagged_trials;
      ++out.flagged_by_status[dec.status];
    } else {
      ++out.clean_by_status[dec.status];
    }
  }
  return out;
}

std::string report(const TrialConfig& cfg, const TrialStats& stats, ReportFormat format) {
  const unsigned rows = cfg.effective_rows();
  const double zero_rate =
      double(stats.zero_syndrome_rows_total) / (double(stats.trials) * double(rows));

  if (format == ReportFormat::csv) {
    std::string header = "q,m,n,k,rho,r,trials,seed,successes";
    std::string line;
    line += std::to_string(cfg.q) + "," + std::to_string(cfg.m) + "," +
            std::to_string(cfg.n) + "," + std::to_string(cfg.k) + "," +
            std::to_string(cfg.rho) + "," + std::to_string(cfg.r) + "," +
            std::to_string(cfg.trials) + "," + std::to_string(cfg.seed) + "," +
            std::to_string(stats.successes);
    for (DecodeStatus st : kFailureStatuses) {
      header += ",";
      header += to_string(st);
      auto it = stats.failure_counts.find(st);
      line += "," + std::to_string(it == stats.failure_counts.end() ? 0 : it->second);
    }
    header += ",zero_rate,mean_sets,wall_time";
    line += "," + format_fixed(zero_rate) + "," + format_fixed(stats.mean_sets_intersected) +
            "," + format_fixed(stats.wall_time_seconds);
    return header + "\n" + line + "\n";
  }

  nlohmann::ordered_json j;
  j["q"] = cfg.q;
  j["m"] = cfg.m;
  j["n"] = cfg.n;
  j["k"] = cfg.k;
  j["rho"] = cfg.rho;
  j["r"] = cfg.r;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["successes"] = stats.successes;
  for (DecodeStatus st : kFailureStatuses) {
    auto it = stats.failure_counts.find(st);
    j[std::string(to_string(st))] = it == stats.failure_counts.end() ? 0u : it->second;
  }
  j["zero_rate"] = zero_rate;
  j["mean_sets"] = stats.mean_sets_intersected;
  j["wall_time"] = stats.wall_time_seconds;
  return j.dump(2) + "\n";
}

void write_report(const TrialConfig& cfg, const TrialStats& stats, ReportFormat format,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot open report file: " + path);
  out << report(cfg, stats, format);
  if (!out) fail(Errc::io_error, "cannot write report file: " + path);
}

OraclePreset oracle_preset(const std::string& name) {
  if (name != "tiny") fail(Errc::invalid_argument, "unknown oracle preset: " + name);
  OraclePreset p;
  p.name = name;
  p.cfg.q = 2;
  p.cfg.m = 6;
  p.cfg.n = 6;
  p.cfg.k = 2;
  p.cfg.rho = 2;
  p.cfg.r = 2;
  p.cfg.trials = 200;
  p.cfg.seed = 101;
  return p;
}

OracleCheckResult oracle_check(const TrialConfig& cfg) {
  validate_config(cfg);
  Field f(cfg.q, cfg.m);
  const std::vector<Subspace> grid = all_subspaces_of_dim(f, cfg.r);

  OracleCheckResult out;
  out.trials = cfg.trials;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    PlantedTrial p = plant_trial(f, cfg, t);

    std::vector<const Subspace*> admissible;
    for (const Subspace& v : grid)
      if (reconstruct_error(f, p.code, p.s, v).status !=
          DecodeStatus::reconstruction_inconsistent)
        admissible.push_back(&v);
    bool planted_ok = false;
    for (const Subspace* v : admissible)
      if (*v == p.err.support) planted_ok = true;
    if (planted_ok) ++out.planted_admissible;
    if (admissible.size() == 1) ++out.oracle_unique;

    DecodeOptions opts;
    opts.max_sets = cfg.max_sets;
    DecodeOutcome dec = decode(f, p.code, p.s, cfg.r, opts);
    if (dec.status != DecodeStatus::success) continue;
    ++out.decoder_successes;
    const Subspace& found = dec.error->support;
    bool in_oracle = false;
    for (const Subspace* v : admissible)
      if (*v == found) in_oracle = true;
    if (!in_oracle || (admissible.size() == 1 && !(*admissible[0] == found)))
      ++out.contradictions;
    else if (admissible.size() == 1)
      ++out.agreements;
  }
  return out;
}

}  // namespace rowlrpc
