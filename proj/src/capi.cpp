#include "rowlrpc.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "rowlrpc/channel.hpp"
#include "rowlrpc/codes.hpp"
#include "rowlrpc/decoder.hpp"
#include "rowlrpc/error.hpp"
#include "rowlrpc/experiments.hpp"
#include "rowlrpc/field.hpp"
#include "rowlrpc/linalg.hpp"
#include "rowlrpc/rng.hpp"
#include "rowlrpc/subspace.hpp"

struct rlp_field {
  rowlrpc::Field f;
};

struct rlp_code {
  rowlrpc::RowLrpcCode c;
};

namespace {

thread_local std::string g_last_error;

rlp_status map_errc(rowlrpc::Errc code) {
  using rowlrpc::Errc;
  switch (code) {
    case Errc::invalid_argument: return RLP_ERR_INVALID_ARGUMENT;
    case Errc::context_mismatch: return RLP_ERR_CONTEXT_MISMATCH;
    case Errc::shape_mismatch: return RLP_ERR_SHAPE_MISMATCH;
    case Errc::division_by_zero: return RLP_ERR_DIVISION_BY_ZERO;
    case Errc::not_normalizable: return RLP_ERR_NOT_NORMALIZABLE;
    case Errc::enumeration_too_large: return RLP_ERR_ENUMERATION_TOO_LARGE;
    case Errc::construction_failed: return RLP_ERR_CONSTRUCTION_FAILED;
    case Errc::parse_error: return RLP_ERR_PARSE;
    case Errc::io_error: return RLP_ERR_IO;
  }
  return RLP_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into status codes and g_last_error.
template <typename Fn>
rlp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RLP_OK;
  } catch (const rowlrpc::Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RLP_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RLP_ERR_INTERNAL;
  }
}

rlp_status null_arg(const char* what) {
  g_last_error = std::string("null pointer: ") + what;
  return RLP_ERR_NULL_POINTER;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rowlrpc::CoordRow parse_coord_list(const rowlrpc::Field& f, const char* text,
                                   std::size_t expected) {
  // Reuse the element parser's strict digit handling by splitting manually.
  rowlrpc::CoordRow out;
  std::string cell;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, cell, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(cell, &pos);
    } catch (...) {
      rowlrpc::fail(rowlrpc::Errc::parse_error, "bad coordinate: " + cell);
    }
    while (pos < cell.size() && cell[pos] == ' ') ++pos;
    if (pos != cell.size())
      rowlrpc::fail(rowlrpc::Errc::parse_error, "bad coordinate: " + cell);
    if (v >= f.q())
      rowlrpc::fail(rowlrpc::Errc::parse_error, "coordinate not below q: " + cell);
    out.push_back(static_cast<rowlrpc::Coord>(v));
  }
  if (out.size() != expected)
    rowlrpc::fail(rowlrpc::Errc::parse_error, "expected " + std::to_string(expected) +
                                                  " coordinates");
  return out;
}

std::string coord_list_to_string(const rowlrpc::CoordRow& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(row[i]);
  }
  return out;
}

}  // namespace

extern "C" {

const char* rlp_version(void) { return "0.1.0"; }

const char* rlp_last_error(void) { return g_last_error.c_str(); }

void rlp_string_free(char* s) { std::free(s); }

rlp_status rlp_field_create(uint32_t q, uint32_t m, rlp_field** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new rlp_field{rowlrpc::Field(q, m)}; });
}

rlp_status rlp_field_create_with_modulus(uint32_t q, uint32_t m,
                                         const char* modulus, rlp_field** out) {
  if (!out) return null_arg("out");
  if (!modulus) return null_arg("modulus");
  *out = nullptr;
  return guarded([&] {
    rowlrpc::Field probe(q, m);  // validates q and m before parsing coordinates
    rowlrpc::CoordRow coeffs = parse_coord_list(probe, modulus, m + 1);
    *out = new rlp_field{rowlrpc::Field(q, m, std::move(coeffs))};
  });
}

void rlp_field_destroy(rlp_field* field) { delete field; }

rlp_status rlp_field_modulus(const rlp_field* field, char** out) {
  if (!field) return null_arg("field");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = dup_string(coord_list_to_string(field->f.modulus())); });
}

rlp_status rlp_code_sample(const rlp_field* field, uint32_t n, uint32_t k,
                           uint32_t rho, uint64_t seed, rlp_code** out) {
  if (!field) return null_arg("field");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    rowlrpc::Rng rng(seed);
    *out = new rlp_code{rowlrpc::sample_row_lrpc(field->f, n, k, rho, rng)};
  });
}

rlp_status rlp_code_sample_heavy(const rlp_field* field, uint32_t n, uint32_t k,
                                 uint32_t rho, uint64_t seed, rlp_code** out) {
  if (!field) return null_arg("field");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    rowlrpc::Rng rng(seed);
    *out = new rlp_code{rowlrpc::theorem1_construction(field->f, n, k, rho, rng)};
  });
}

void rlp_code_destroy(rlp_code* code) { delete code; }

rlp_status rlp_code_params(const rlp_code* code, uint32_t* n, uint32_t* k,
                           uint32_t* rho) {
  if (!code) return null_arg("code");
  if (n) *n = code->c.n;
  if (k) *k = code->c.k;
  if (rho) *rho = code->c.rho;
  g_last_error.clear();
  return RLP_OK;
}

rlp_status rlp_code_matrix(const rlp_field* field, const rlp_code* code,
                           char** out) {
  if (!field) return null_arg("field");
  if (!code) return null_arg("code");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = dup_string(rowlrpc::mat_to_string(field->f, code->c.H)); });
}

rlp_status rlp_code_write(const rlp_field* field, const rlp_code* code,
                          const char* path) {
  if (!field) return null_arg("field");
  if (!code) return null_arg("code");
  if (!path) return null_arg("path");
  return guarded([&] { rowlrpc::write_code_file(field->f, code->c, path); });
}

rlp_status rlp_code_read(const char* path, rlp_field** field_out,
                         rlp_code** code_out) {
  if (!path) return null_arg("path");
  if (!field_out) return null_arg("field_out");
  if (!code_out) return null_arg("code_out");
  *field_out = nullptr;
  *code_out = nullptr;
  return guarded([&] {
    rowlrpc::LoadedCode loaded = rowlrpc::read_code_file(path);
    *field_out = new rlp_field{std::move(loaded.field)};
    *code_out = new rlp_code{std::move(loaded.code)};
  });
}

rlp_status rlp_encode(const rlp_field* field, const rlp_code* code,
                      const char* message, char** codeword_out) {
  if (!field) return null_arg("field");
  if (!code) return null_arg("code");
  if (!message) return null_arg("message");
  if (!codeword_out) return null_arg("codeword_out");
  *codeword_out = nullptr;
  return guarded([&] {
    rowlrpc::Mat g = rowlrpc::generator(field->f, code->c);
    rowlrpc::Vec msg = rowlrpc::parse_vec(field->f, message);
    rowlrpc::Vec word = rowlrpc::encode(field->f, g, msg);
    *codeword_out = dup_string(rowlrpc::vec_to_string(field->f, word));
  });
}

rlp_status rlp_syndrome(const rlp_field* field, const rlp_code* code,
                        const char* word, char** syndrome_out) {
  if (!field) return null_arg("field");
  if (!code) return null_arg("code");
  if (!word) return null_arg("word");
  if (!syndrome_out) return null_arg("syndrome_out");
  *syndrome_out = nullptr;
  return guarded([&] {
    rowlrpc::Vec y = rowlrpc::parse_vec(field->f, word);
    rowlrpc::Vec s = rowlrpc::syndrome(field->f, code->c, y);
    *syndrome_out = dup_string(rowlrpc::vec_to_string(field->f, s));
  });
}

rlp_status rlp_sample_error(const rlp_field* field, uint32_t n, uint32_t r,
                            uint64_t seed, char** error_out) {
  if (!field) return null_arg("field");
  if (!error_out) return null_arg("error_out");
  *error_out = nullptr;
  return guarded([&] {
    rowlrpc::Rng rng(seed);
    rowlrpc::ErrorPattern e = rowlrpc::sample_error(field->f, n, r, rng);
    *error_out = dup_string(rowlrpc::vec_to_string(field->f, e.e));
  });
}

rlp_status rlp_vector_add(const rlp_field* field, const char* a, const char* b,
                          char** out) {
  if (!field) return null_arg("field");
  if (!a) return null_arg("a");
  if (!b) return null_arg("b");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    rowlrpc::Vec va = rowlrpc::parse_vec(field->f, a);
    rowlrpc::Vec vb = rowlrpc::parse_vec(field->f, b);
    if (va.size() != vb.size())
      rowlrpc::fail(rowlrpc::Errc::shape_mismatch, "vector lengths differ");
    rowlrpc::Vec sum;
    sum.reserve(va.size());
    for (std::size_t i = 0; i < va.size(); ++i)
      sum.push_back(field->f.add(va[i], vb[i]));
    *out = dup_string(rowlrpc::vec_to_string(field->f, sum));
  });
}

rlp_status rlp_rank_weight(const rlp_field* field, const char* word,
                           uint32_t* weight_out) {
  if (!field) return null_arg("field");
  if (!word) return null_arg("word");
  if (!weight_out) return null_arg("weight_out");
  return guarded([&] {
    rowlrpc::Vec v = rowlrpc::parse_vec(field->f, word);
    *weight_out = rowlrpc::rank_weight(field->f, v);
  });
}

rlp_status rlp_decode(const rlp_field* field, const rlp_code* code,
                      const char* syndrome, uint32_t r, uint32_t max_sets,
                      rlp_decode_result* out) {
  if (!field) return null_arg("field");
  if (!code) return null_arg("code");
  if (!syndrome) return null_arg("syndrome");
  if (!out) return null_arg("out");
  *out = rlp_decode_result{};
  rlp_status rc = guarded([&] {
    rowlrpc::Vec s = rowlrpc::parse_vec(field->f, syndrome);
    rowlrpc::DecodeOptions opts;
    if (max_sets > 0) opts.max_sets = max_sets;
    rowlrpc::DecodeOutcome res = rowlrpc::decode(field->f, code->c, s, r, opts);
    out->status = dup_string(std::string(rowlrpc::to_string(res.status)));
    if (res.support_found)
      out->support = dup_string(rowlrpc::subspace_to_string(field->f, *res.support_found));
    if (res.error)
      out->error = dup_string(rowlrpc::vec_to_string(field->f, res.error->e));
    out->sets_intersected = res.sets_intersected;
    out->dimension_condition_ok = res.dimension_condition_ok ? 1 : 0;
  });
  if (rc != RLP_OK) rlp_decode_result_free(out);
  return rc;
}

void rlp_decode_result_free(rlp_decode_result* result) {
  if (!result) return;
  std::free(result->status);
  std::free(result->support);
  std::free(result->error);
  *result = rlp_decode_result{};
}

rlp_status rlp_simulate(uint32_t q, uint32_t m, uint32_t n, uint32_t k,
                        uint32_t rho, uint32_t r, uint32_t trials,
                        uint64_t seed, uint32_t max_sets, uint32_t rows_used,
                        int json_format, char** report_out) {
  if (!report_out) return null_arg("report_out");
  *report_out = nullptr;
  return guarded([&] {
    rowlrpc::TrialConfig cfg;
    cfg.q = q;
    cfg.m = m;
    cfg.n = n;
    cfg.k = k;
    cfg.rho = rho;
    cfg.r = r;
    cfg.trials = trials;
    cfg.seed = seed;
    if (max_sets > 0) cfg.max_sets = max_sets;
    cfg.rows_used = rows_used;
    rowlrpc::TrialStats stats = rowlrpc::run_trials(cfg);
    *report_out = dup_string(rowlrpc::report(
        cfg, stats, json_format ? rowlrpc::ReportFormat::json : rowlrpc::ReportFormat::csv));
  });
}

rlp_status rlp_weight_probe(const rlp_field* field, const rlp_code* code,
                            uint32_t trials, uint64_t seed,
                            uint32_t* min_weight_out) {
  if (!field) return null_arg("field");
  if (!code) return null_arg("code");
  if (!min_weight_out) return null_arg("min_weight_out");
  return guarded([&] {
    rowlrpc::Rng rng(seed);
    *min_weight_out = rowlrpc::weight_probe(field->f, code->c, trials, rng);
  });
}

rlp_status rlp_oracle_check(const char* preset, uint32_t trials,
                            char** summary_out) {
  if (!preset) return null_arg("preset");
  if (!summary_out) return null_arg("summary_out");
  *summary_out = nullptr;
  return guarded([&] {
    rowlrpc::OraclePreset p = rowlrpc::oracle_preset(preset);
    if (trials > 0) p.cfg.trials = trials;
    rowlrpc::OracleCheckResult res = rowlrpc::oracle_check(p.cfg);
    std::string line = "preset=" + p.name + " trials=" + std::to_string(res.trials) +
                       " planted_admissible=" + std::to_string(res.planted_admissible) +
                       " oracle_unique=" + std::to_string(res.oracle_unique) +
                       " decoder_successes=" + std::to_string(res.decoder_successes) +
                       " agreements=" + std::to_string(res.agreements) +
                       " contradictions=" + std::to_string(res.contradictions);
    *summary_out = dup_string(line);
  });
}

}  // extern "C"
