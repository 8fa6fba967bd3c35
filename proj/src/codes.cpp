#include "rowlrpc/codes.hpp"

#include <fstream>
#include <sstream>

#include "rowlrpc/rng.hpp"

namespace rowlrpc {

namespace {

constexpr unsigned kResampleBudget = 100000;

// Uniform element of a subspace: random F_q combination of the basis.
Fe random_in(const Field& f, const Subspace& v, Rng& rng) {
  Fe acc = f.zero();
  for (const CoordRow& row : v.basis_rows()) {
    const Coord c = rng.below(f.q());
    if (c) acc = f.add(acc, f.scalar_mul(c, f.from_coords(row)));
  }
  return acc;
}

void check_dims(const Field& f, unsigned n, unsigned k, unsigned rho) {
  if (k < 1 || k >= n) fail(Errc::invalid_argument, "need 1 <= k < n");
  if (rho < 1 || rho > f.m()) fail(Errc::invalid_argument, "need 1 <= rho <= m");
}

}  // namespace

void validate_code(const Field& f, const RowLrpcCode& code) {
  const unsigned rows = code.n - code.k;
  if (code.k < 1 || code.k >= code.n) fail(Errc::invalid_argument, "need 1 <= k < n");
  if (code.H.rows() != rows || code.H.cols() != code.n)
    fail(Errc::shape_mismatch, "parity matrix must be (n-k) x n");
  if (code.row_supports.size() != rows)
    fail(Errc::shape_mismatch, "one support per parity row required");
  for (unsigned i = 0; i < rows; ++i) {
    const Subspace& s = code.row_supports[i];
    if (s.dim() > code.rho) fail(Errc::invalid_argument, "row support exceeds rho");
    for (unsigned j = 0; j < code.n; ++j)
      if (!contains(f, s, code.H.at(i, j)))
        fail(Errc::invalid_argument, "row entry outside its declared support");
  }
  if (rank(f, code.H) != rows) fail(Errc::invalid_argument, "parity matrix is rank deficient");
}

RowLrpcCode sample_row_lrpc(const Field& f, unsigned n, unsigned k, unsigned rho, Rng& rng) {
  check_dims(f, n, k, rho);
  if (n < rho) fail(Errc::invalid_argument, "rows of rank weight rho need n >= rho");
  const unsigned rows = n - k;
  for (unsigned attempt = 0; attempt < kResampleBudget; ++attempt) {
    RowLrpcCode code{n, k, rho, Mat(rows, n, f.zero()), {}};
    for (unsigned i = 0; i < rows; ++i) {
      for (unsigned tries = 0;; ++tries) {
        if (tries >= kResampleBudget)
          fail(Errc::construction_failed, "could not reach exact row rank weight");
        const Subspace support = random_subspace(f, rho, rng);
        Vec row(n, f.zero());
        for (unsigned j = 0; j < n; ++j) row[j] = random_in(f, support, rng);
        if (entry_span(f, row) == support) {
          for (unsigned j = 0; j < n; ++j) code.H.at(i, j) = row[j];
          code.row_supports.push_back(support);
          break;
        }
      }
    }
    if (rank(f, code.H) == rows) return code;
  }
  fail(Errc::construction_failed, "full-rank parity matrix not reached");
}

RowLrpcCode sample_lrpc(const Field& f, unsigned n, unsigned k, unsigned delta, Rng& rng) {
  check_dims(f, n, k, delta);
  const unsigned rows = n - k;
  for (unsigned attempt = 0; attempt < kResampleBudget; ++attempt) {
    const Subspace support = random_subspace(f, delta, rng);
    RowLrpcCode code{n, k, delta, Mat(rows, n, f.zero()), {}};
    for (unsigned i = 0; i < rows; ++i) {
      code.row_supports.push_back(support);
      for (unsigned j = 0; j < n; ++j) code.H.at(i, j) = random_in(f, support, rng);
    }
    if (rank(f, code.H) == rows) return code;
  }
  fail(Errc::construction_failed, "full-rank parity matrix not reached");
}

RowLrpcCode theorem1_construction(const Field& f, unsigned n, unsigned k, unsigned rho,
                                  Rng& rng) {
  if (rho < 2 || rho >= f.m()) fail(Errc::invalid_argument, "need 2 <= rho < m");
  if (k + 2 < 2 * rho || k > n - 2) fail(Errc::invalid_argument, "need 2*rho-2 <= k <= n-2");
  check_dims(f, n, k, rho);

  Subspace a, b;
  for (unsigned tries = 0;; ++tries) {
    if (tries >= kResampleBudget)
      fail(Errc::construction_failed, "no scalar-independent support pair found");
    a = random_subspace(f, rho, rng);
    b = random_subspace(f, rho, rng);
    if (!is_scalar_multiple(f, a, b).has_value()) break;
  }

  const unsigned rows = n - k;
  RowLrpcCode code{n, k, rho, Mat(rows, n, f.zero()), {}};
  const auto abasis = a.basis_elements(f);
  const auto bbasis = b.basis_elements(f);
  for (unsigned t = 0; t < rho; ++t) {
    code.H.at(0, t) = abasis[t];
    code.H.at(1, rho + t) = bbasis[t];
  }
  code.row_supports.push_back(a);
  code.row_supports.push_back(b);
  // Identity block of order n-k-2 starting right after the 2*rho support
  // columns; each row padded with k+2-2*rho zeros.
  const Subspace unit = span(f, {f.one()});
  for (unsigned t = 0; t + 2 < rows; ++t) {
    code.H.at(2 + t, 2 * rho + t) = f.one();
    code.row_supports.push_back(unit);
  }
  validate_code(f, code);
  return code;
}

unsigned weight_probe(const Field& f, const RowLrpcCode& code, unsigned trials, Rng& rng) {
  const unsigned rows = code.n - code.k;
  // The identity is always observed (it is an invertible change of basis too),
  // so the probe returns at most matrix_weight(H).
  unsigned best = matrix_weight(f, code.H);
  for (unsigned t = 0; t < trials; ++t) {
    const Mat tmat = random_invertible(f, rows, rng);
    const unsigned w = matrix_weight(f, mat_mul(f, tmat, code.H));
    if (w < best) best = w;
  }
  return best;
}

Mat normalize_weight_one(const Field& f, const Mat& h) {
  Mat out = h;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    Fe pivot = f.zero();
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (!f.is_zero(h.at(i, j))) {
        pivot = h.at(i, j);
        break;
      }
    if (f.is_zero(pivot)) fail(Errc::not_normalizable, "zero parity row");
    const Fe pinv = f.inv(pivot);
    for (std::size_t j = 0; j < h.cols(); ++j) {
      out.at(i, j) = f.mul(pinv, h.at(i, j));
      if (!f.in_prime_subfield(out.at(i, j)))
        fail(Errc::not_normalizable, "row rank weight exceeds 1");
    }
  }
  return out;
}

Mat generator(const Field& f, const RowLrpcCode& code) {
  const Mat g = null_space(f, code.H);
  if (g.rows() != code.k) fail(Errc::construction_failed, "generator rank mismatch");
  return g;
}

Vec encode(const Field& f, const Mat& g, const Vec& msg) {
  if (msg.size() != g.rows()) fail(Errc::shape_mismatch, "message length must equal k");
  return vec_mat(f, msg, g);
}

Vec syndrome(const Field& f, const RowLrpcCode& code, const Vec& y) {
  if (y.size() != code.n) fail(Errc::shape_mismatch, "received word length must equal n");
  return mat_vec(f, code.H, y);
}

RowLrpcCode truncate_rows(const Field& f, const RowLrpcCode& code, unsigned rows) {
  const unsigned full = code.n - code.k;
  if (rows < 1 || rows > full) fail(Errc::invalid_argument, "rows must lie in [1, n-k]");
  if (rows == full) return code;
  RowLrpcCode out{code.n, code.n - rows, code.rho, Mat(rows, code.n, f.zero()), {}};
  for (unsigned i = 0; i < rows; ++i) {
    for (unsigned j = 0; j < code.n; ++j) out.H.at(i, j) = code.H.at(i, j);
    out.row_supports.push_back(code.row_supports[i]);
  }
  return out;
}

void write_code(const Field& f, const RowLrpcCode& code, std::ostream& out) {
  out << f.q() << ' ' << f.m() << ' ' << code.n << ' ' << code.k << ' ' << code.rho << ' ';
  for (unsigned i = 0; i <= f.m(); ++i) {
    if (i) out << ',';
    out << f.modulus()[i];
  }
  out << '\n' << mat_to_string(f, code.H) << '\n';
}

void write_code_file(const Field& f, const RowLrpcCode& code, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot open " + path + " for writing");
  write_code(f, code, out);
  if (!out.flush()) fail(Errc::io_error, "write to " + path + " failed");
}

LoadedCode read_code(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) fail(Errc::parse_error, "missing code header");
  std::istringstream hs(header);
  unsigned long q = 0, m = 0, n = 0, k = 0, rho = 0;
  std::string modtext;
  if (!(hs >> q >> m >> n >> k >> rho >> modtext))
    fail(Errc::parse_error, "header must be: q m n k rho modulus");
  CoordRow modulus;
  std::size_t pos = 0;
  while (pos <= modtext.size()) {
    std::size_t comma = modtext.find(',', pos);
    if (comma == std::string::npos) comma = modtext.size();
    modulus.push_back(static_cast<Coord>(std::stoul(modtext.substr(pos, comma - pos))));
    pos = comma + 1;
  }
  Field field(static_cast<Coord>(q), static_cast<unsigned>(m), modulus);

  std::string body, line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    body += line;
    body.push_back('\n');
  }
  const Mat h = parse_mat(field, body);
  RowLrpcCode code{static_cast<unsigned>(n), static_cast<unsigned>(k),
                   static_cast<unsigned>(rho), h, {}};
  for (std::size_t i = 0; i < h.rows(); ++i)
    code.row_supports.push_back(entry_span(field, h.row(i)));
  validate_code(field, code);
  return LoadedCode{std::move(field), std::move(code)};
}

LoadedCode read_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open " + path);
  return read_code(in);
}

}  // namespace rowlrpc
