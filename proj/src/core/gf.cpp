#include "gf.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "error.hpp"

namespace clutterforge {

namespace {

// Fixed moduli, coefficients from the constant term up.
const std::map<int, std::vector<int>>& modulus_table() {
  static const std::map<int, std::vector<int>> table = {
      {4, {1, 1, 1}},           // x^2 + x + 1
      {8, {1, 1, 0, 1}},        // x^3 + x + 1
      {9, {2, 2, 1}},           // x^2 + 2x + 2
      {16, {1, 1, 0, 0, 1}},    // x^4 + x + 1
      {25, {2, 4, 1}},          // x^2 + 4x + 2
      {27, {1, 2, 0, 1}},       // x^3 + 2x + 1
      {32, {1, 0, 1, 0, 0, 1}}, // x^5 + x^2 + 1
  };
  return table;
}

using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic-or-not b over GF(p); b must be nonzero.
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  int lead_inv = 1;
  while ((lead_inv * b.back()) % p != 1) ++lead_inv;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const int factor = (a.back() * lead_inv) % p;
    for (int i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - factor * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

std::vector<int> digits(int value, int p, int k) {
  std::vector<int> d(k);
  for (int i = 0; i < k; ++i) {
    d[i] = value % p;
    value /= p;
  }
  return d;
}

int undigits(const std::vector<int>& d, int p) {
  int v = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) v = v * p + d[i];
  return v;
}

}  // namespace

bool prime_power(int q, int& p, int& k) {
  if (q < 2) return false;
  int base = 0;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      base = d;
      break;
    }
  }
  if (base == 0) base = q;
  int e = 0, r = q;
  while (r % base == 0) {
    r /= base;
    ++e;
  }
  if (r != 1) return false;
  p = base;
  k = e;
  return true;
}

bool is_irreducible(const std::vector<int>& coeffs, int p) {
  Poly f = coeffs;
  trim(f);
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  for (int d = 1; 2 * d <= deg; ++d) {
    // every monic polynomial of degree d
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int low = 0; low < count; ++low) {
      Poly g = digits(low, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Field::Field(int q) : q_(q) {
  if (q > kMaxFieldOrder) fail(Errc::Unsupported, "field order " + std::to_string(q) + " exceeds 32");
  if (!prime_power(q, p_, k_)) fail(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
  if (k_ == 1) {
    modulus_ = {0, 1};
  } else {
    modulus_ = modulus_table().at(q);
    if (!is_irreducible(modulus_, p_)) fail(Errc::Internal, "built-in modulus is reducible");
  }
  build_tables();
  verify_axioms();
}

void Field::build_tables() {
  for (int x = 0; x < q_; ++x) {
    const auto dx = digits(x, p_, k_);
    for (int y = 0; y < q_; ++y) {
      const auto dy = digits(y, p_, k_);
      std::vector<int> s(k_);
      for (int i = 0; i < k_; ++i) s[i] = (dx[i] + dy[i]) % p_;
      add_[x][y] = static_cast<Element>(undigits(s, p_));

      Poly prod(2 * k_, 0);
      for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p_;
      Poly r = k_ == 1 ? Poly{prod[0]} : poly_mod(prod, modulus_, p_);
      r.resize(k_, 0);
      mul_[x][y] = static_cast<Element>(undigits(r, p_));
    }
  }
  for (int x = 0; x < q_; ++x) {
    for (int y = 0; y < q_; ++y) {
      if (add_[x][y] == 0) neg_[x] = static_cast<Element>(y);
      if (mul_[x][y] == 1) inv_[x] = static_cast<Element>(y);
    }
  }
}

void Field::verify_axioms() const {
  auto bad = [](const char* what) { fail(Errc::Internal, std::string("field axiom violated: ") + what); };
  for (int x = 0; x < q_; ++x) {
    if (add_[x][0] != x || mul_[x][1] != x) bad("identity");
    std::vector<bool> seen_add(q_), seen_mul(q_);
    for (int y = 0; y < q_; ++y) {
      if (add_[x][y] != add_[y][x] || mul_[x][y] != mul_[y][x]) bad("commutativity");
      seen_add[add_[x][y]] = true;
      if (x != 0 && y != 0) seen_mul[mul_[x][y]] = true;
      for (int z = 0; z < q_; ++z) {
        if (mul_[x][add_[y][z]] != add_[mul_[x][y]][mul_[x][z]]) bad("distributivity");
        if (add_[add_[x][y]][z] != add_[x][add_[y][z]]) bad("additive associativity");
        if (mul_[mul_[x][y]][z] != mul_[x][mul_[y][z]]) bad("multiplicative associativity");
      }
    }
    for (int y = 0; y < q_; ++y) {
      if (!seen_add[y]) bad("addition is not a Latin square");
      if (x != 0 && y != 0 && !seen_mul[y]) bad("multiplication is not a Latin square");
    }
    Element acc = 0;
    for (int i = 0; i < p_; ++i) acc = add_[acc][x];
    if (acc != 0) bad("characteristic");
  }
  // cyclic multiplicative group: some element has order q-1
  bool cyclic = false;
  for (int g = 1; g < q_ && !cyclic; ++g) {
    Element acc = static_cast<Element>(g);
    int order = 1;
    while (acc != 1) {
      acc = mul_[acc][g];
      ++order;
    }
    cyclic = order == q_ - 1;
  }
  if (!cyclic) bad("multiplicative group is not cyclic");
}

Element Field::inv(Element x) const {
  if (x == 0) fail(Errc::DivisionByZero, "inverse of zero");
  return inv_[x];
}

std::string Field::symbol(Element x) const {
  if (q_ == 4) {
    static const char* names[] = {"0", "1", "a", "b"};
    return names[x];
  }
  return std::to_string(static_cast<int>(x));
}

std::string Field::tables_text() const {
  std::size_t width = 1;
  for (int x = 0; x < q_; ++x) width = std::max(width, symbol(static_cast<Element>(x)).size());
  auto cell = [&](const std::string& s) { return std::string(width - s.size() + 1, ' ') + s; };
  std::ostringstream out;
  out << "GF(" << q_ << "), p=" << p_ << ", k=" << k_ << ", modulus";
  for (int i = static_cast<int>(modulus_.size()) - 1; i >= 0; --i) out << ' ' << modulus_[i];
  out << "\n";
  for (int table = 0; table < 2; ++table) {
    out << "\n" << cell(table == 0 ? "+" : "*") << " |";
    for (int y = 0; y < q_; ++y) out << cell(symbol(static_cast<Element>(y)));
    out << "\n" << std::string(width + 1, '-') << "-+" << std::string((width + 1) * q_, '-') << "\n";
    for (int x = 0; x < q_; ++x) {
      out << cell(symbol(static_cast<Element>(x))) << " |";
      for (int y = 0; y < q_; ++y) {
        const Element v = table == 0 ? add_[x][y] : mul_[x][y];
        out << cell(symbol(v));
      }
      out << "\n";
    }
  }
  return out.str();
}

std::shared_ptr<const Field> Field::get(int q) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const Field>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const Field>(q);
  cache.emplace(q, f);
  return f;
}

}  // namespace clutterforge
