#include "qmpower/moments.hpp"

#include <cmath>
#include <sstream>

#include "qmpower/errors.hpp"

namespace qmpower {
namespace {

// sqrt((i + s)! / i!)
double ladder_weight(int i, int s) {
  double w = 1.0;
  for (int t = 1; t <= s; ++t) w *= static_cast<double>(i + t);
  return std::sqrt(w);
}

void check_order(const QuantumState& state, int r, int s) {
  if (r < 0 || s < 0) throw DomainError("normal_moment: negative order");
  if (r >= state.dim() || s >= state.dim()) {
    std::ostringstream os;
    os << "normal_moment: order (" << r << ", " << s
       << ") exceeds truncation dim " << state.dim();
    throw OrderError(os.str());
  }
}

}  // namespace

Complex normal_moment(const QuantumState& state, int r, int s) {
  check_order(state, r, s);
  const int top = state.dim() - std::max(r, s);
  Complex sum = 0.0;
  if (state.is_pure()) {
    const CVector& c = state.amplitudes();
    for (int i = 0; i < top; ++i) {
      sum += ladder_weight(i, s) * ladder_weight(i, r) * c(i + s) *
             std::conj(c(i + r));
    }
    return sum;
  }
  for (int i = 0; i < top; ++i) {
    sum += ladder_weight(i, s) * ladder_weight(i, r) *
           state.element(i + s, i + r);
  }
  return sum;
}

MomentTable::MomentTable(int max_order, double leakage)
    : max_order_(max_order), leakage_(leakage) {
  const int total = 2 * max_order + 1;
  entries_.assign(static_cast<std::size_t>(total * (total + 1) / 2), 0.0);
}

int MomentTable::index(int r, int s) noexcept {
  const int d = r + s;
  return d * (d + 1) / 2 + s;
}

Complex MomentTable::operator()(int r, int s) const {
  if (r < 0 || s < 0 || r + s > max_total()) {
    std::ostringstream os;
    os << "MomentTable: entry (" << r << ", " << s
       << ") outside table of max order " << max_order_;
    throw OrderError(os.str());
  }
  return entries_[static_cast<std::size_t>(index(r, s))];
}

MomentTable build_table(const QuantumState& state, int max_order) {
  if (max_order < 0) throw DomainError("build_table: negative max_order");
  const int total = 2 * max_order;
  if (total >= state.dim()) {
    std::ostringstream os;
    os << "build_table: order " << total << " exceeds truncation dim "
       << state.dim();
    throw OrderError(os.str());
  }
  MomentTable table(max_order, state.leakage());
  for (int d = 0; d <= total; ++d) {
    for (int s = 0; s <= d; ++s) {
      const int r = d - s;
      if (r < s) {
        table.entries_[static_cast<std::size_t>(MomentTable::index(r, s))] =
            std::conj(table(s, r));
        continue;
      }
      table.entries_[static_cast<std::size_t>(MomentTable::index(r, s))] =
          normal_moment(state, r, s);
    }
  }
  // <a^dagger^r a^r> is real.
  for (int r = 0; 2 * r <= total; ++r) {
    auto& e = table.entries_[static_cast<std::size_t>(MomentTable::index(r, r))];
    e = Complex(e.real(), 0.0);
  }
  return table;
}

}  // namespace qmpower
