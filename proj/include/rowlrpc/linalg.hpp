#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rowlrpc/field.hpp"
#include "rowlrpc/fq_matrix.hpp"
#include "rowlrpc/subspace.hpp"

namespace rowlrpc {

class Rng;

// Row vector over F_{q^m}.
using Vec = std::vector<Fe>;

// Dense rectangular matrix over F_{q^m}, row-major.
class Mat {
public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, const Fe& fill)
      : rows_(rows), cols_(cols), e_(rows * cols, fill) {}
  static Mat from_rows(const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Fe& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const Fe& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
  Vec row(std::size_t r) const { return Vec(e_.begin() + r * cols_, e_.begin() + (r + 1) * cols_); }

  friend bool operator==(const Mat&, const Mat&) = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Fe> e_;
};

// Span of a vector's entries (the "support" of the vector).
Subspace entry_span(const Field& f, const Vec& v);
// Rank weight: dimension of the span of the entries.
unsigned rank_weight(const Field& f, const Vec& v);
// Rank weight of the flattened entry list.
unsigned matrix_weight(const Field& f, const Mat& m);
// Maximum rank weight over the rows.
unsigned row_weight(const Field& f, const Mat& m);

Fe det(const Field& f, const Mat& m);
unsigned rank(const Field& f, const Mat& m);

struct SolveFqm {
  enum class Kind { unique, inconsistent, underdetermined };
  Kind kind = Kind::inconsistent;
  Vec x;                     // populated when kind == unique
  std::size_t null_dim = 0;  // solution-space dimension when underdetermined
};

// Solves m·x^T = b over F_{q^m}.
SolveFqm solve_fqm(const Field& f, const Mat& m, const Vec& b);

// Solves sum_j lambda_j * coeffs(i, j) = rhs_i with lambda_j in F_q, by
// expanding every F_{q^m} equation into m coordinate equations over F_q.
fq::Solve unfold_solve(const Field& f, const Mat& coeffs, const Vec& rhs);

// Basis (as rows) of {x : m·x^T = 0}; row count = cols - rank.
Mat null_space(const Field& f, const Mat& m);

Mat identity(const Field& f, std::size_t n);
Mat transpose(const Field& f, const Mat& m);
Mat mat_mul(const Field& f, const Mat& a, const Mat& b);
Vec mat_vec(const Field& f, const Mat& m, const Vec& v);  // m · v^T
Vec vec_mat(const Field& f, const Vec& v, const Mat& m);  // v · m
Mat random_matrix(const Field& f, std::size_t rows, std::size_t cols, Rng& rng);
Mat random_invertible(const Field& f, std::size_t n, Rng& rng);

// Entries in the field's textual form, space-separated; matrix rows
// newline-separated.
std::string vec_to_string(const Field& f, const Vec& v);
Vec parse_vec(const Field& f, std::string_view text);
std::string mat_to_string(const Field& f, const Mat& m);
Mat parse_mat(const Field& f, std::string_view text);

}  // namespace rowlrpc
