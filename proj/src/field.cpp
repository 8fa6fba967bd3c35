#include "rowlrpc/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "rowlrpc/rng.hpp"

namespace rowlrpc {
namespace {

constexpr Coord kMaxQ = 1u << 20;               // keeps schoolbook products in uint64
constexpr std::uint64_t kDivisorBudget = 1ull << 22;  // trial-division candidates

bool is_prime(Coord q) {
  if (q < 2) return false;
  for (Coord d = 2; static_cast<std::uint64_t>(d) * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

// Dense polynomials over F_q, coordinates least degree first, no trailing
// zeros (zero polynomial = empty vector). Used for modulus verification and
// inversion only; field element arithmetic has its own fixed-width path.
using Poly = std::vector<Coord>;

Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Coord sc_inv_q(Coord a, Coord q) {
  // Fermat: a^(q-2) mod q.
  std::uint64_t base = a % q, acc = 1;
  for (Coord e = q - 2; e; e >>= 1) {
    if (e & 1) acc = acc * base % q;
    base = base * base % q;
  }
  return static_cast<Coord>(acc);
}

// rem <- rem mod div (in place); div monic-normalized internally.
void poly_mod_inplace(Poly& rem, const Poly& div, Coord q) {
  const Coord lead_inv = sc_inv_q(div.back(), q);
  while (deg(rem) >= deg(div)) {
    const Coord c = static_cast<Coord>(static_cast<std::uint64_t>(rem.back()) * lead_inv % q);
    const std::size_t shift = rem.size() - div.size();
    if (c != 0)
      for (std::size_t i = 0; i < div.size(); ++i) {
        const std::uint64_t sub = static_cast<std::uint64_t>(c) * div[i] % q;
        Coord& r = rem[shift + i];
        r = static_cast<Coord>((r + q - sub) % q);
      }
    rem.pop_back();
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
}

Poly poly_divmod(Poly& rem, const Poly& div, Coord q) {
  const Coord lead_inv = sc_inv_q(div.back(), q);
  Poly quot(rem.size() >= div.size() ? rem.size() - div.size() + 1 : 0, 0);
  while (deg(rem) >= deg(div)) {
    const Coord c = static_cast<Coord>(static_cast<std::uint64_t>(rem.back()) * lead_inv % q);
    const std::size_t shift = rem.size() - div.size();
    quot[shift] = c;
    if (c != 0)
      for (std::size_t i = 0; i < div.size(); ++i) {
        const std::uint64_t sub = static_cast<std::uint64_t>(c) * div[i] % q;
        Coord& r = rem[shift + i];
        r = static_cast<Coord>((r + q - sub) % q);
      }
    rem.pop_back();
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
  return trim(std::move(quot));
}

Poly poly_mul(const Poly& a, const Poly& b, Coord q) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<Coord>((out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % q);
  }
  return trim(std::move(out));
}

Poly poly_sub(const Poly& a, const Poly& b, Coord q) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Coord av = i < a.size() ? a[i] : 0;
    const Coord bv = i < b.size() ? b[i] : 0;
    out[i] = (av + q - bv) % q;
  }
  return trim(std::move(out));
}

std::uint64_t pow_u64_checked(Coord q, unsigned d, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < d; ++i) {
    if (v > cap / q) return cap + 1;
    v *= q;
  }
  return v;
}

// Trial division by every monic polynomial of degree 1..m/2. The candidate
// count must fit the budget; the library targets small q.
bool is_irreducible(const Poly& f, Coord q) {
  const int m = deg(f);
  if (m <= 0) return false;
  if (m == 1) return true;
  if (f[0] == 0) return false;  // divisible by x
  std::uint64_t total = 0;
  for (unsigned d = 1; d <= static_cast<unsigned>(m) / 2; ++d) {
    const std::uint64_t count = pow_u64_checked(q, d, kDivisorBudget);
    total += count;
    if (total > kDivisorBudget)
      fail(Errc::enumeration_too_large, "irreducibility check exceeds trial-division budget");
  }
  for (unsigned d = 1; d <= static_cast<unsigned>(m) / 2; ++d) {
    const std::uint64_t count = pow_u64_checked(q, d, kDivisorBudget);
    Poly g(d + 1, 0);
    g[d] = 1;
    for (std::uint64_t n = 0; n < count; ++n) {
      std::uint64_t v = n;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = static_cast<Coord>(v % q);
        v /= q;
      }
      Poly rem = f;
      poly_mod_inplace(rem, g, q);
      if (rem.empty()) return false;
    }
  }
  return true;
}

std::uint32_t context_id(Coord q, unsigned m, const CoordRow& mod) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ull;
  };
  feed(q);
  feed(m);
  for (Coord c : mod) feed(c);
  const std::uint32_t id = static_cast<std::uint32_t>(h ^ (h >> 32));
  return id ? id : 1;
}

}  // namespace

CoordRow Field::default_modulus(Coord q, unsigned m) {
  if (!is_prime(q) || q >= kMaxQ) fail(Errc::invalid_argument, "q must be a small prime");
  if (m == 0) fail(Errc::invalid_argument, "extension degree must be positive");

  static std::mutex cache_mutex;
  static std::map<std::pair<Coord, unsigned>, CoordRow> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({q, m});
    if (it != cache.end()) return it->second;
  }

  // Scan non-leading coefficient vectors in lexicographic order with the
  // highest degree most significant, i.e. counting n upward with c0 the least
  // significant base-q digit. First hit for q=2: x^3+x+1, x^4+x+1, x^20+x^3+1.
  const std::uint64_t count = pow_u64_checked(q, m, kDivisorBudget << 8);
  Poly f(m + 1, 0);
  f[m] = 1;
  for (std::uint64_t n = 1; n < count; ++n) {
    std::uint64_t v = n;
    for (unsigned i = 0; i < m; ++i) {
      f[i] = static_cast<Coord>(v % q);
      v /= q;
    }
    if (is_irreducible(f, q)) {
      CoordRow result(f.begin(), f.end());
      std::lock_guard<std::mutex> lock(cache_mutex);
      cache.insert({{q, m}, result});
      return result;
    }
  }
  fail(Errc::construction_failed, "no irreducible modulus found");
}

Field::Field(Coord q, unsigned m) : Field(q, m, default_modulus(q, m)) {}

Field::Field(Coord q, unsigned m, CoordRow modulus) : q_(q), m_(m), mod_(std::move(modulus)) {
  if (!is_prime(q_) || q_ >= kMaxQ) fail(Errc::invalid_argument, "q must be a small prime");
  if (m_ == 0) fail(Errc::invalid_argument, "extension degree must be positive");
  if (mod_.size() != m_ + 1) fail(Errc::invalid_argument, "modulus must have degree m");
  for (Coord c : mod_)
    if (c >= q_) fail(Errc::invalid_argument, "modulus coordinate out of range");
  if (mod_[m_] != 1) fail(Errc::invalid_argument, "modulus must be monic");
  if (!is_irreducible(Poly(mod_.begin(), mod_.end()), q_))
    fail(Errc::invalid_argument, "modulus is reducible");
  neg_top_.resize(m_);
  for (unsigned i = 0; i < m_; ++i) neg_top_[i] = sc_neg(mod_[i]);
  id_ = context_id(q_, m_, mod_);
}

double Field::log2_order() const { return m_ * std::log2(static_cast<double>(q_)); }

Fe Field::zero() const { return Fe{id_, CoordRow(m_, 0)}; }

Fe Field::one() const { return from_scalar(1); }

Fe Field::from_scalar(Coord a) const {
  Fe out{id_, CoordRow(m_, 0)};
  out.c[0] = a % q_;
  return out;
}

Fe Field::from_coords(CoordRow c) const {
  if (c.size() != m_) fail(Errc::shape_mismatch, "element needs exactly m coordinates");
  for (Coord v : c)
    if (v >= q_) fail(Errc::invalid_argument, "coordinate out of range");
  return Fe{id_, std::move(c)};
}

Fe Field::monomial(unsigned degree, Coord coeff) const {
  if (degree >= m_) fail(Errc::invalid_argument, "monomial degree must be below m");
  Fe out{id_, CoordRow(m_, 0)};
  out.c[degree] = coeff % q_;
  return out;
}

bool Field::is_zero(const Fe& a) const {
  check(a);
  return std::all_of(a.c.begin(), a.c.end(), [](Coord v) { return v == 0; });
}

bool Field::in_prime_subfield(const Fe& a) const {
  check(a);
  return std::all_of(a.c.begin() + 1, a.c.end(), [](Coord v) { return v == 0; });
}

Fe Field::add(const Fe& a, const Fe& b) const {
  check(a);
  check(b);
  Fe out{id_, CoordRow(m_)};
  for (unsigned i = 0; i < m_; ++i) out.c[i] = (a.c[i] + b.c[i]) % q_;
  return out;
}

Fe Field::sub(const Fe& a, const Fe& b) const {
  check(a);
  check(b);
  Fe out{id_, CoordRow(m_)};
  for (unsigned i = 0; i < m_; ++i) out.c[i] = (a.c[i] + q_ - b.c[i]) % q_;
  return out;
}

Fe Field::neg(const Fe& a) const {
  check(a);
  Fe out{id_, CoordRow(m_)};
  for (unsigned i = 0; i < m_; ++i) out.c[i] = sc_neg(a.c[i]);
  return out;
}

Fe Field::scalar_mul(Coord s, const Fe& a) const {
  check(a);
  s %= q_;
  Fe out{id_, CoordRow(m_)};
  for (unsigned i = 0; i < m_; ++i)
    out.c[i] = static_cast<Coord>(static_cast<std::uint64_t>(s) * a.c[i] % q_);
  return out;
}

void Field::reduce_into(std::vector<std::uint64_t>& buf, Fe& out) const {
  for (std::size_t d = buf.size(); d-- > m_;) {
    const Coord c = static_cast<Coord>(buf[d] % q_);
    if (c != 0)
      for (unsigned j = 0; j < m_; ++j)
        buf[d - m_ + j] += static_cast<std::uint64_t>(c) * neg_top_[j];
  }
  out.field_id = id_;
  out.c.resize(m_);
  for (unsigned i = 0; i < m_; ++i) out.c[i] = static_cast<Coord>(buf[i] % q_);
}

Fe Field::mul(const Fe& a, const Fe& b) const {
  check(a);
  check(b);
  std::vector<std::uint64_t> buf(2 * m_ - 1, 0);
  for (unsigned i = 0; i < m_; ++i) {
    if (a.c[i] == 0) continue;
    const std::uint64_t ai = a.c[i];
    for (unsigned j = 0; j < m_; ++j) buf[i + j] += ai * b.c[j];
    if (((i + 1) & 15u) == 0)  // keep accumulators far from overflow for large m
      for (auto& v : buf) v %= q_;
  }
  Fe out;
  reduce_into(buf, out);
  return out;
}

Fe Field::inv(const Fe& a) const {
  check(a);
  if (is_zero(a)) fail(Errc::division_by_zero, "inverse of zero");
  // Extended Euclid over F_q[x] against the modulus.
  Poly r0(mod_.begin(), mod_.end());
  Poly r1 = trim(Poly(a.c.begin(), a.c.end()));
  Poly t0{}, t1{1};
  while (!r1.empty()) {
    Poly rem = std::move(r0);
    Poly quot = poly_divmod(rem, r1, q_);
    r0 = std::move(r1);
    r1 = std::move(rem);
    Poly t2 = poly_sub(t0, poly_mul(quot, t1, q_), q_);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is a nonzero constant: scale t0 by its inverse.
  const Coord scale = sc_inv_q(r0[0], q_);
  Fe out{id_, CoordRow(m_, 0)};
  for (std::size_t i = 0; i < t0.size(); ++i)
    out.c[i] = static_cast<Coord>(static_cast<std::uint64_t>(t0[i]) * scale % q_);
  return out;
}

Fe Field::div(const Fe& a, const Fe& b) const { return mul(a, inv(b)); }

Fe Field::pow(const Fe& a, std::uint64_t e) const {
  check(a);
  Fe acc = one();
  Fe base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

Coord Field::sc_inv(Coord a) const {
  a %= q_;
  if (a == 0) fail(Errc::division_by_zero, "inverse of zero scalar");
  return sc_inv_q(a, q_);
}

Fe Field::random_element(Rng& rng) const {
  Fe out{id_, CoordRow(m_)};
  for (unsigned i = 0; i < m_; ++i) out.c[i] = rng.below(q_);
  return out;
}

Fe Field::random_nonzero(Rng& rng) const {
  for (;;) {
    Fe out = random_element(rng);
    if (!is_zero(out)) return out;
  }
}

std::string Field::to_string(const Fe& a) const {
  check(a);
  std::string out;
  for (unsigned i = 0; i < m_; ++i) {
    if (i) out.push_back(',');
    out += std::to_string(a.c[i]);
  }
  return out;
}

Fe Field::parse(std::string_view text) const {
  CoordRow coords;
  coords.reserve(m_);
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                            : comma - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    if (tok.empty()) fail(Errc::parse_error, "empty coordinate");
    std::uint64_t v = 0;
    for (char ch : tok) {
      if (ch < '0' || ch > '9') fail(Errc::parse_error, "coordinate is not a decimal integer");
      v = v * 10 + static_cast<std::uint64_t>(ch - '0');
      if (v >= q_) fail(Errc::parse_error, "coordinate out of range for F_q");
    }
    coords.push_back(static_cast<Coord>(v));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (coords.size() != m_) fail(Errc::parse_error, "element needs exactly m coordinates");
  return Fe{id_, std::move(coords)};
}

void Field::check(const Fe& a) const {
  if (a.field_id != id_ || a.c.size() != m_)
    fail(Errc::context_mismatch, "element does not belong to this field");
}

}  // namespace rowlrpc
