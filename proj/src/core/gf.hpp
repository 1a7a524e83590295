#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace clutterforge {

/// A field element in canonical encoding: value = sum c_i p^i where c_i are
/// the coefficients of the polynomial representative.
using Element = std::uint8_t;

inline constexpr int kMaxFieldOrder = 32;

/// Arithmetic in GF(q), q = p^k <= 32, by table lookup. Immutable after
/// construction; obtain instances through Field::get.
class Field {
 public:
  static std::shared_ptr<const Field> get(int q);

  int q() const noexcept { return q_; }
  int p() const noexcept { return p_; }
  int k() const noexcept { return k_; }
  /// Coefficients c_0..c_k of the monic modulus (c_k == 1).
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  Element add(Element x, Element y) const noexcept { return add_[x][y]; }
  Element sub(Element x, Element y) const noexcept { return add_[x][neg_[y]]; }
  Element mul(Element x, Element y) const noexcept { return mul_[x][y]; }
  Element neg(Element x) const noexcept { return neg_[x]; }
  /// Throws DivisionByZero for x == 0.
  Element inv(Element x) const;
  Element div(Element x, Element y) const { return mul(x, inv(y)); }

  /// Human-readable symbol; GF(4) uses the 0,1,a,b naming.
  std::string symbol(Element x) const;

  /// Addition and multiplication tables laid out as bordered grids.
  std::string tables_text() const;

  bool operator==(const Field& o) const noexcept { return q_ == o.q_; }

  explicit Field(int q);

 private:
  void build_tables();
  void verify_axioms() const;

  int q_ = 0, p_ = 0, k_ = 0;
  std::vector<int> modulus_;
  std::array<std::array<Element, kMaxFieldOrder>, kMaxFieldOrder> add_{};
  std::array<std::array<Element, kMaxFieldOrder>, kMaxFieldOrder> mul_{};
  std::array<Element, kMaxFieldOrder> neg_{};
  std::array<Element, kMaxFieldOrder> inv_{};
};

using FieldPtr = std::shared_ptr<const Field>;

/// Factors q as p^k; returns false when q is not a prime power.
bool prime_power(int q, int& p, int& k);

/// Trial-division irreducibility test for a monic polynomial over GF(p).
bool is_irreducible(const std::vector<int>& coeffs, int p);

}  // namespace clutterforge
