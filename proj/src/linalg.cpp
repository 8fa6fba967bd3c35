#include "rowlrpc/linalg.hpp"

#include <algorithm>
#include <utility>

#include "rowlrpc/rng.hpp"

namespace rowlrpc {

namespace {

void check_vec(const Field& f, const Vec& v) {
  for (const Fe& a : v) f.check(a);
}

void check_mat(const Field& f, const Mat& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) f.check(m.at(r, c));
}

// In-place reduced row echelon form over F_{q^m}; returns pivot columns.
// Row swaps recorded in `sign_flips` for the determinant.
std::vector<std::size_t> rref_fqm(const Field& f, Mat& m, unsigned* sign_flips = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && f.is_zero(m.at(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
      if (sign_flips) ++*sign_flips;
    }
    const Fe piv_inv = f.inv(m.at(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) = f.mul(piv_inv, m.at(row, c));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || f.is_zero(m.at(r, col))) continue;
      const Fe factor = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Mat Mat::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return Mat();
  const std::size_t cols = rows[0].size();
  Mat out;
  out.rows_ = rows.size();
  out.cols_ = cols;
  out.e_.reserve(rows.size() * cols);
  for (const Vec& r : rows) {
    if (r.size() != cols) fail(Errc::shape_mismatch, "ragged rows");
    out.e_.insert(out.e_.end(), r.begin(), r.end());
  }
  return out;
}

Subspace entry_span(const Field& f, const Vec& v) {
  check_vec(f, v);
  return span(f, v);
}

unsigned rank_weight(const Field& f, const Vec& v) { return entry_span(f, v).dim(); }

unsigned matrix_weight(const Field& f, const Mat& m) {
  Vec flat;
  flat.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) flat.push_back(m.at(r, c));
  return rank_weight(f, flat);
}

unsigned row_weight(const Field& f, const Mat& m) {
  if (m.rows() == 0) fail(Errc::invalid_argument, "row_weight needs at least one row");
  unsigned best = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) best = std::max(best, rank_weight(f, m.row(r)));
  return best;
}

Fe det(const Field& f, const Mat& m) {
  if (m.rows() != m.cols()) fail(Errc::shape_mismatch, "determinant needs a square matrix");
  check_mat(f, m);
  if (m.rows() == 0) return f.one();
  // Triangularize with row swaps; product of pivots times swap sign.
  Mat work = m;
  Fe result = f.one();
  unsigned flips = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < work.cols(); ++col) {
    std::size_t sel = row;
    while (sel < work.rows() && f.is_zero(work.at(sel, col))) ++sel;
    if (sel == work.rows()) return f.zero();
    if (sel != row) {
      for (std::size_t c = 0; c < work.cols(); ++c) std::swap(work.at(sel, c), work.at(row, c));
      ++flips;
    }
    const Fe piv = work.at(row, col);
    result = f.mul(result, piv);
    const Fe piv_inv = f.inv(piv);
    for (std::size_t r = row + 1; r < work.rows(); ++r) {
      if (f.is_zero(work.at(r, col))) continue;
      const Fe factor = f.mul(work.at(r, col), piv_inv);
      for (std::size_t c = col; c < work.cols(); ++c)
        work.at(r, c) = f.sub(work.at(r, c), f.mul(factor, work.at(row, c)));
    }
    ++row;
  }
  if (flips % 2 == 1) result = f.neg(result);
  return result;
}

unsigned rank(const Field& f, const Mat& m) {
  check_mat(f, m);
  Mat work = m;
  return static_cast<unsigned>(rref_fqm(f, work).size());
}

SolveFqm solve_fqm(const Field& f, const Mat& m, const Vec& b) {
  check_mat(f, m);
  check_vec(f, b);
  if (m.rows() != b.size()) fail(Errc::shape_mismatch, "rows(m) must equal length(b)");
  Mat aug(m.rows(), m.cols() + 1, f.zero());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  const auto pivots = rref_fqm(f, aug);
  SolveFqm out;
  if (!pivots.empty() && pivots.back() == m.cols()) {
    out.kind = SolveFqm::Kind::inconsistent;
    return out;
  }
  if (pivots.size() < m.cols()) {
    out.kind = SolveFqm::Kind::underdetermined;
    out.null_dim = m.cols() - pivots.size();
    return out;
  }
  out.kind = SolveFqm::Kind::unique;
  out.x.assign(m.cols(), f.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) out.x[pivots[r]] = aug.at(r, m.cols());
  return out;
}

fq::Solve unfold_solve(const Field& f, const Mat& coeffs, const Vec& rhs) {
  check_mat(f, coeffs);
  check_vec(f, rhs);
  if (coeffs.rows() != rhs.size()) fail(Errc::shape_mismatch, "rows(coeffs) must equal length(rhs)");
  const unsigned mdeg = f.m();
  const std::size_t unknowns = coeffs.cols();
  std::vector<CoordRow> a;
  CoordRow b;
  a.reserve(coeffs.rows() * mdeg);
  b.reserve(coeffs.rows() * mdeg);
  for (std::size_t i = 0; i < coeffs.rows(); ++i)
    for (unsigned t = 0; t < mdeg; ++t) {
      CoordRow row(unknowns);
      for (std::size_t j = 0; j < unknowns; ++j) row[j] = coeffs.at(i, j).c[t];
      a.push_back(std::move(row));
      b.push_back(rhs[i].c[t]);
    }
  return fq::solve(f.q(), a, b, unknowns);
}

Mat null_space(const Field& f, const Mat& m) {
  check_mat(f, m);
  Mat work = m;
  const auto pivots = rref_fqm(f, work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec x(m.cols(), f.zero());
    x[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = f.neg(work.at(r, free));
    basis.push_back(std::move(x));
  }
  if (basis.empty()) return Mat(0, m.cols(), f.zero());
  return Mat::from_rows(basis);
}

Mat identity(const Field& f, std::size_t n) {
  Mat out(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i) out.at(i, i) = f.one();
  return out;
}

Mat transpose(const Field& f, const Mat& m) {
  check_mat(f, m);
  Mat out(m.cols(), m.rows(), f.zero());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(c, r) = m.at(r, c);
  return out;
}

Mat mat_mul(const Field& f, const Mat& a, const Mat& b) {
  check_mat(f, a);
  check_mat(f, b);
  if (a.cols() != b.rows()) fail(Errc::shape_mismatch, "inner dimensions disagree");
  Mat out(a.rows(), b.cols(), f.zero());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t i = 0; i < a.cols(); ++i) {
      if (f.is_zero(a.at(r, i))) continue;
      for (std::size_t c = 0; c < b.cols(); ++c)
        out.at(r, c) = f.add(out.at(r, c), f.mul(a.at(r, i), b.at(i, c)));
    }
  return out;
}

Vec mat_vec(const Field& f, const Mat& m, const Vec& v) {
  check_mat(f, m);
  check_vec(f, v);
  if (m.cols() != v.size()) fail(Errc::shape_mismatch, "matrix-vector shapes disagree");
  Vec out(m.rows(), f.zero());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!f.is_zero(m.at(r, c))) out[r] = f.add(out[r], f.mul(m.at(r, c), v[c]));
  return out;
}

Vec vec_mat(const Field& f, const Vec& v, const Mat& m) {
  check_mat(f, m);
  check_vec(f, v);
  if (m.rows() != v.size()) fail(Errc::shape_mismatch, "vector-matrix shapes disagree");
  Vec out(m.cols(), f.zero());
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!f.is_zero(v[r]))
      for (std::size_t c = 0; c < m.cols(); ++c)
        out[c] = f.add(out[c], f.mul(v[r], m.at(r, c)));
  return out;
}

Mat random_matrix(const Field& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Mat out(rows, cols, f.zero());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = f.random_element(rng);
  return out;
}

Mat random_invertible(const Field& f, std::size_t n, Rng& rng) {
  for (;;) {
    Mat m = random_matrix(f, n, n, rng);
    if (!f.is_zero(det(f, m))) return m;
  }
}

std::string vec_to_string(const Field& f, const Vec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(' ');
    out += f.to_string(v[i]);
  }
  return out;
}

Vec parse_vec(const Field& f, std::string_view text) {
  Vec out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t') ++end;
    out.push_back(f.parse(text.substr(pos, end - pos)));
    pos = end;
  }
  if (out.empty()) fail(Errc::parse_error, "empty vector");
  return out;
}

std::string mat_to_string(const Field& f, const Mat& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out.push_back('\n');
    out += vec_to_string(f, m.row(r));
  }
  return out;
}

Mat parse_mat(const Field& f, std::string_view text) {
  std::vector<Vec> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.find_first_not_of(" \t\r") != std::string_view::npos)
      rows.push_back(parse_vec(f, line));
    pos = nl + 1;
  }
  if (rows.empty()) fail(Errc::parse_error, "empty matrix");
  return Mat::from_rows(rows);
}

}  // namespace rowlrpc
