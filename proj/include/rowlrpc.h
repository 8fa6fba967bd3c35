#ifndef ROWLRPC_H
#define ROWLRPC_H

/* C interface to the rank-metric coding library.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return RLP_OK on success; on any other status rlp_last_error()
 * holds a thread-local description of what went wrong.  Strings returned
 * through char** out-parameters are owned by the caller and must be released
 * with rlp_string_free().
 *
 * Field elements are written "c0,c1,...,c(m-1)" (coordinates of ascending
 * basis powers, least degree first).  Vectors are space-separated elements;
 * matrices are newline-separated rows.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rlp_status {
  RLP_OK = 0,
  RLP_ERR_INVALID_ARGUMENT = 1,
  RLP_ERR_CONTEXT_MISMATCH = 2,
  RLP_ERR_SHAPE_MISMATCH = 3,
  RLP_ERR_DIVISION_BY_ZERO = 4,
  RLP_ERR_NOT_NORMALIZABLE = 5,
  RLP_ERR_ENUMERATION_TOO_LARGE = 6,
  RLP_ERR_CONSTRUCTION_FAILED = 7,
  RLP_ERR_PARSE = 8,
  RLP_ERR_IO = 9,
  RLP_ERR_NULL_POINTER = 10,
  RLP_ERR_OUT_OF_MEMORY = 11,
  RLP_ERR_INTERNAL = 12
} rlp_status;

typedef struct rlp_field rlp_field;
typedef struct rlp_code rlp_code;

const char* rlp_version(void);

/* Description of the most recent failure on this thread; empty on success. */
const char* rlp_last_error(void);

void rlp_string_free(char* s);

/* ---- extension fields -------------------------------------------------- */

/* Builds GF(q^m) for prime q with a canonical irreducible modulus. */
rlp_status rlp_field_create(uint32_t q, uint32_t m, rlp_field** out);

/* As above with an explicit modulus given as its m+1 coefficients
 * "c0,c1,...,cm" (must be monic and irreducible). */
rlp_status rlp_field_create_with_modulus(uint32_t q, uint32_t m,
                                         const char* modulus, rlp_field** out);

void rlp_field_destroy(rlp_field* field);

/* Modulus coefficients as "c0,c1,...,cm". */
rlp_status rlp_field_modulus(const rlp_field* field, char** out);

/* ---- codes ------------------------------------------------------------- */

/* Samples a parity check matrix whose rows have low-dimensional supports:
 * (n-k) x n, full rank, each row's entries spanning a rho-dimensional space. */
rlp_status rlp_code_sample(const rlp_field* field, uint32_t n, uint32_t k,
                           uint32_t rho, uint64_t seed, rlp_code** out);

/* Structured construction whose matrix weight provably exceeds the row
 * weight: two support blocks plus an identity tail.  Requires
 * 2 <= rho < m and 2*rho - 2 <= k <= n - 2. */
rlp_status rlp_code_sample_heavy(const rlp_field* field, uint32_t n, uint32_t k,
                                 uint32_t rho, uint64_t seed, rlp_code** out);

void rlp_code_destroy(rlp_code* code);

rlp_status rlp_code_params(const rlp_code* code, uint32_t* n, uint32_t* k,
                           uint32_t* rho);

/* Parity check matrix as text (rows on lines, entries space-separated). */
rlp_status rlp_code_matrix(const rlp_field* field, const rlp_code* code,
                           char** out);

rlp_status rlp_code_write(const rlp_field* field, const rlp_code* code,
                          const char* path);

/* Reads a code file and reconstructs both the field and the code. */
rlp_status rlp_code_read(const char* path, rlp_field** field_out,
                         rlp_code** code_out);

/* ---- vectors and channel ----------------------------------------------- */

/* Encodes a length-k message with the canonical generator of the code. */
rlp_status rlp_encode(const rlp_field* field, const rlp_code* code,
                      const char* message, char** codeword_out);

rlp_status rlp_syndrome(const rlp_field* field, const rlp_code* code,
                        const char* word, char** syndrome_out);

/* Length-n error vector whose entries span exactly an r-dimensional space. */
rlp_status rlp_sample_error(const rlp_field* field, uint32_t n, uint32_t r,
                            uint64_t seed, char** error_out);

rlp_status rlp_vector_add(const rlp_field* field, const char* a, const char* b,
                          char** out);

rlp_status rlp_rank_weight(const rlp_field* field, const char* word,
                           uint32_t* weight_out);

/* ---- decoding ----------------------------------------------------------- */

/* All strings are NULL when their stage was not reached; status is always
 * set.  Release with rlp_decode_result_free. */
typedef struct rlp_decode_result {
  char* status;            /* "success", "support_not_recovered", ... */
  char* support;           /* recovered support basis, one row per line */
  char* error;             /* reconstructed error vector */
  uint32_t sets_intersected;
  int dimension_condition_ok;
} rlp_decode_result;

rlp_status rlp_decode(const rlp_field* field, const rlp_code* code,
                      const char* syndrome, uint32_t r, uint32_t max_sets,
                      rlp_decode_result* out);

void rlp_decode_result_free(rlp_decode_result* result);

/* ---- experiments -------------------------------------------------------- */

/* Monte Carlo run: fresh code + planted exact-rank error per trial, decoded
 * and tallied.  rows_used = 0 means all n-k parity rows.  The report is CSV
 * when json_format is 0, JSON otherwise. */
rlp_status rlp_simulate(uint32_t q, uint32_t m, uint32_t n, uint32_t k,
                        uint32_t rho, uint32_t r, uint32_t trials,
                        uint64_t seed, uint32_t max_sets, uint32_t rows_used,
                        int json_format, char** report_out);

/* Minimum matrix weight seen over `trials` random invertible row transforms
 * (the identity included as the first observation). */
rlp_status rlp_weight_probe(const rlp_field* field, const rlp_code* code,
                            uint32_t trials, uint64_t seed,
                            uint32_t* min_weight_out);

/* Compares decoder outcomes against the exhaustive support oracle on the
 * named preset ("tiny"); trials = 0 keeps the preset's count.  The summary
 * line reports trials, unique-oracle counts, agreements, contradictions. */
rlp_status rlp_oracle_check(const char* preset, uint32_t trials,
                            char** summary_out);

#ifdef __cplusplus
}
#endif

#endif /* ROWLRPC_H */
