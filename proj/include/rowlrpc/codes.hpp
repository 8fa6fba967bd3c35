#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rowlrpc/field.hpp"
#include "rowlrpc/linalg.hpp"
#include "rowlrpc/subspace.hpp"

namespace rowlrpc {

class Rng;

// Code with a parity check matrix whose rows each live in a small subspace:
// row i of H has all entries inside row_supports[i], dim(row_supports[i]) <=
// rho. H is full rank (n-k) x n.
struct RowLrpcCode {
  unsigned n = 0;
  unsigned k = 0;
  unsigned rho = 0;
  Mat H;
  std::vector<Subspace> row_supports;
};

// Throws unless all RowLrpcCode invariants hold for this field.
void validate_code(const Field& f, const RowLrpcCode& code);

// Per-row random supports of dimension rho; rows resampled until each has
// rank weight exactly rho and H is full rank.
RowLrpcCode sample_row_lrpc(const Field& f, unsigned n, unsigned k, unsigned rho, Rng& rng);

// One global support of dimension delta shared by all rows (classical flavor;
// matrix weight <= delta).
RowLrpcCode sample_lrpc(const Field& f, unsigned n, unsigned k, unsigned delta, Rng& rng);

// Two support rows (bases of A and B with A never a scalar multiple of B)
// plus an identity block; separates row weight from matrix weight.
RowLrpcCode theorem1_construction(const Field& f, unsigned n, unsigned k, unsigned rho, Rng& rng);

// Minimum of matrix_weight(T*H) over `trials` random invertible T.
unsigned weight_probe(const Field& f, const RowLrpcCode& code, unsigned trials, Rng& rng);

// For row weight 1: scales each row by the inverse of a nonzero entry so all
// entries land in F_q; preserves the row space.
Mat normalize_weight_one(const Field& f, const Mat& h);

// Generator matrix: canonical basis of the null space of H (k x n, full rank).
Mat generator(const Field& f, const RowLrpcCode& code);
Vec encode(const Field& f, const Mat& g, const Vec& msg);
// s = y * H^T, length n-k.
Vec syndrome(const Field& f, const RowLrpcCode& code, const Vec& y);

// Keeps only the first `rows` parity rows (1 <= rows <= n-k); the result
// checks a larger code with the same codewords included.
RowLrpcCode truncate_rows(const Field& f, const RowLrpcCode& code, unsigned rows);

// File format: header "q m n k rho modulus" (modulus = comma-joined
// coefficients, least degree first), then H one row per line.
void write_code(const Field& f, const RowLrpcCode& code, std::ostream& out);
void write_code_file(const Field& f, const RowLrpcCode& code, const std::string& path);

struct LoadedCode {
  Field field;
  RowLrpcCode code;
};
LoadedCode read_code(std::istream& in);
LoadedCode read_code_file(const std::string& path);

}  // namespace rowlrpc
