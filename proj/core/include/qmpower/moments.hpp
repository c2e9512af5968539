#pragma once

#include <vector>

#include "qmpower/fock.hpp"
#include "qmpower/types.hpp"

namespace qmpower {

inline constexpr int kDefaultMaxOrder = 8;

// <a^{dagger r} a^s>, evaluated as sum_i sqrt((i+s)!/i!) sqrt((i+r)!/i!)
// rho_{i+s, i+r}: the annihilation ladder applied to the ket and bra sides.
// Throws OrderError if r or s cannot be represented in the truncated basis.
Complex normal_moment(const QuantumState& state, int r, int s);

// All normally ordered moments with r + s <= 2 * max_order.
class MomentTable {
 public:
  int max_order() const noexcept { return max_order_; }
  int max_total() const noexcept { return 2 * max_order_; }
  double leakage() const noexcept { return leakage_; }

  Complex operator()(int r, int s) const;
  Complex entry(int r, int s) const { return (*this)(r, s); }

 private:
  friend MomentTable build_table(const QuantumState& state, int max_order);
  MomentTable(int max_order, double leakage);

  static int index(int r, int s) noexcept;

  int max_order_;
  double leakage_;
  std::vector<Complex> entries_;
};

MomentTable build_table(const QuantumState& state,
                        int max_order = kDefaultMaxOrder);

}  // namespace qmpower
