#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rowlrpc.h"

namespace {

constexpr int kExitFailureOutcome = 2;  // decode ran but did not succeed

struct StringOut {
  char* p = nullptr;
  ~StringOut() { rlp_string_free(p); }
};

int api_error(const char* where) {
  std::cerr << where << ": " << rlp_last_error() << "\n";
  return 1;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot read file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank-metric codes with low-dimensional row supports"};
  app.set_config("--config", "",
                 "read options from a key=value file "
                 "(keys '<subcommand>.<flag>' or under a [subcommand] section)");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rlp_version()));

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "sample a code and write it to a file");
  gen->fallthrough();
  std::uint32_t g_q = 2, g_m = 20, g_n = 20, g_k = 16, g_rho = 2;
  std::uint64_t g_seed = 1;
  std::string g_out = "code.txt";
  bool g_heavy = false;
  gen->add_option("--q", g_q, "prime base field size")->capture_default_str();
  gen->add_option("--m", g_m, "extension degree")->capture_default_str();
  gen->add_option("--n", g_n, "code length")->capture_default_str();
  gen->add_option("--k", g_k, "code dimension")->capture_default_str();
  gen->add_option("--rho", g_rho, "row support dimension")->capture_default_str();
  gen->add_option("--seed", g_seed, "sampling seed")->capture_default_str();
  gen->add_option("--out", g_out, "output file")->capture_default_str();
  gen->add_flag("--heavy", g_heavy,
                "use the structured construction whose matrix weight exceeds rho");
  std::uint32_t g_plant_r = 0;
  std::string g_synd_out, g_err_out;
  gen->add_option("--plant-r", g_plant_r,
                  "also sample an error of exactly this rank against the code");
  gen->add_option("--syndrome-out", g_synd_out, "file for the planted error's syndrome");
  gen->add_option("--error-out", g_err_out, "file for the planted error vector");

  // ---- decode ---------------------------------------------------------------
  auto* dec = app.add_subcommand("decode", "decode a syndrome against a stored code");
  dec->fallthrough();
  std::string d_code, d_syndrome_file, d_syndrome_text;
  std::uint32_t d_r = 2, d_max_sets = 0;
  dec->add_option("--code", d_code, "code file written by gen")->required();
  dec->add_option("--syndrome", d_syndrome_file, "file holding the syndrome vector");
  dec->add_option("--syndrome-text", d_syndrome_text,
                  "inline syndrome (space-separated elements) instead of a file");
  dec->add_option("--r", d_r, "error rank to decode")->capture_default_str();
  dec->add_option("--max-sets", d_max_sets, "candidate index-set cap (0 = default)");

  // ---- simulate -------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Monte Carlo decoding trials");
  sim->fallthrough();
  std::uint32_t s_q = 2, s_m = 20, s_n = 20, s_k = 16, s_rho = 2, s_r = 2;
  std::uint32_t s_trials = 1000, s_max_sets = 0, s_rows = 0;
  std::uint64_t s_seed = 1;
  std::string s_format = "csv", s_out;
  sim->add_option("--q", s_q, "prime base field size")->capture_default_str();
  sim->add_option("--m", s_m, "extension degree")->capture_default_str();
  sim->add_option("--n", s_n, "code length")->capture_default_str();
  sim->add_option("--k", s_k, "code dimension")->capture_default_str();
  sim->add_option("--rho", s_rho, "row support dimension")->capture_default_str();
  sim->add_option("--r", s_r, "error rank")->capture_default_str();
  sim->add_option("--trials", s_trials, "number of trials")->capture_default_str();
  sim->add_option("--seed", s_seed, "master seed")->capture_default_str();
  sim->add_option("--max-sets", s_max_sets, "candidate index-set cap (0 = default)");
  sim->add_option("--rows-used", s_rows, "parity rows given to the decoder (0 = all)");
  sim->add_option("--format", s_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sim->add_option("--out", s_out, "write the report here instead of stdout");

  // ---- probe-theorem1 -------------------------------------------------------
  auto* probe = app.add_subcommand(
      "probe-theorem1", "matrix weight of the structured construction under row transforms");
  probe->fallthrough();
  std::uint32_t p_q = 2, p_m = 6, p_n = 8, p_k = 4, p_rho = 2, p_trials = 100;
  std::uint64_t p_seed = 1;
  probe->add_option("--q", p_q, "prime base field size")->capture_default_str();
  probe->add_option("--m", p_m, "extension degree")->capture_default_str();
  probe->add_option("--n", p_n, "code length")->capture_default_str();
  probe->add_option("--k", p_k, "code dimension")->capture_default_str();
  probe->add_option("--rho", p_rho, "row support dimension")->capture_default_str();
  probe->add_option("--trials", p_trials, "random row transforms to try")
      ->capture_default_str();
  probe->add_option("--seed", p_seed, "sampling seed")->capture_default_str();

  // ---- oracle-check ----------------------------------------------------------
  auto* oracle = app.add_subcommand(
      "oracle-check", "compare the decoder against the exhaustive support oracle");
  oracle->fallthrough();
  std::string o_preset = "tiny";
  std::uint32_t o_trials = 0;
  oracle->add_option("--preset", o_preset, "parameter preset")->capture_default_str();
  oracle->add_option("--trials", o_trials, "override the preset trial count (0 = keep)");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    rlp_field* field = nullptr;
    if (rlp_field_create(g_q, g_m, &field) != RLP_OK) return api_error("gen");
    rlp_code* code = nullptr;
    rlp_status rc = g_heavy ? rlp_code_sample_heavy(field, g_n, g_k, g_rho, g_seed, &code)
                            : rlp_code_sample(field, g_n, g_k, g_rho, g_seed, &code);
    if (rc != RLP_OK) {
      rlp_field_destroy(field);
      return api_error("gen");
    }
    if (rlp_code_write(field, code, g_out.c_str()) != RLP_OK) {
      rlp_code_destroy(code);
      rlp_field_destroy(field);
      return api_error("gen");
    }
    std::cout << "wrote [" << g_n << "," << g_k << "] code over GF(" << g_q << "^" << g_m
              << ") with row weight " << g_rho << " to " << g_out << "\n";
    if (g_plant_r > 0) {
      StringOut err, synd;
      if (rlp_sample_error(field, g_n, g_plant_r, g_seed + 1, &err.p) != RLP_OK ||
          rlp_syndrome(field, code, err.p, &synd.p) != RLP_OK) {
        rlp_code_destroy(code);
        rlp_field_destroy(field);
        return api_error("gen");
      }
      bool ok = true;
      if (!g_synd_out.empty()) ok = write_output(std::string(synd.p) + "\n", g_synd_out);
      if (ok && !g_err_out.empty()) ok = write_output(std::string(err.p) + "\n", g_err_out);
      if (!ok) {
        rlp_code_destroy(code);
        rlp_field_destroy(field);
        std::cerr << "gen: cannot write planted-error files\n";
        return 1;
      }
      std::cout << "planted a rank-" << g_plant_r << " error";
      if (!g_synd_out.empty()) std::cout << "; syndrome in " << g_synd_out;
      if (!g_err_out.empty()) std::cout << "; error in " << g_err_out;
      std::cout << "\n";
    }
    rlp_code_destroy(code);
    rlp_field_destroy(field);
    return 0;
  }

  if (dec->parsed()) {
    if (d_syndrome_file.empty() == d_syndrome_text.empty()) {
      std::cerr << "decode: give exactly one of --syndrome / --syndrome-text\n";
      return 1;
    }
    std::string syndrome_text = d_syndrome_text;
    if (!d_syndrome_file.empty()) syndrome_text = read_text_file(d_syndrome_file);

    rlp_field* field = nullptr;
    rlp_code* code = nullptr;
    if (rlp_code_read(d_code.c_str(), &field, &code) != RLP_OK)
      return api_error("decode");
    rlp_decode_result res{};
    rlp_status rc = rlp_decode(field, code, syndrome_text.c_str(), d_r, d_max_sets, &res);
    rlp_code_destroy(code);
    rlp_field_destroy(field);
    if (rc != RLP_OK) return api_error("decode");

    std::cout << "status: " << res.status << "\n";
    std::cout << "sets_intersected: " << res.sets_intersected << "\n";
    std::cout << "dimension_condition_ok: " << (res.dimension_condition_ok ? "yes" : "no")
              << "\n";
    if (res.support) std::cout << "support basis:\n" << res.support << "\n";
    if (res.error) std::cout << "error: " << res.error << "\n";
    bool success = std::string(res.status) == "success";
    rlp_decode_result_free(&res);
    return success ? 0 : kExitFailureOutcome;
  }

  if (sim->parsed()) {
    StringOut report;
    if (rlp_simulate(s_q, s_m, s_n, s_k, s_rho, s_r, s_trials, s_seed, s_max_sets, s_rows,
                     s_format == "json" ? 1 : 0, &report.p) != RLP_OK)
      return api_error("simulate");
    if (!write_output(report.p, s_out)) {
      std::cerr << "simulate: cannot write " << s_out << "\n";
      return 1;
    }
    return 0;
  }

  if (probe->parsed()) {
    rlp_field* field = nullptr;
    if (rlp_field_create(p_q, p_m, &field) != RLP_OK) return api_error("probe-theorem1");
    rlp_code* code = nullptr;
    if (rlp_code_sample_heavy(field, p_n, p_k, p_rho, p_seed, &code) != RLP_OK) {
      rlp_field_destroy(field);
      return api_error("probe-theorem1");
    }
    uint32_t min_weight = 0;
    rlp_status rc = rlp_weight_probe(field, code, p_trials, p_seed + 1, &min_weight);
    rlp_code_destroy(code);
    rlp_field_destroy(field);
    if (rc != RLP_OK) return api_error("probe-theorem1");
    std::cout << "min matrix weight over " << p_trials << " row transforms: " << min_weight
              << " (row weight " << p_rho << ")\n";
    bool above = min_weight > p_rho;
    std::cout << "stays above the row weight: " << (above ? "yes" : "no") << "\n";
    return above ? 0 : kExitFailureOutcome;
  }

  if (oracle->parsed()) {
    StringOut summary;
    if (rlp_oracle_check(o_preset.c_str(), o_trials, &summary.p) != RLP_OK)
      return api_error("oracle-check");
    std::cout << summary.p << "\n";
    bool clean = std::string(summary.p).find("contradictions=0") != std::string::npos;
    return clean ? 0 : kExitFailureOutcome;
  }

  return 0;
}
