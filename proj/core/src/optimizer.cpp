#include <cmath>
#include <vector>

#include "qmpower/errors.hpp"
#include "qmpower/network.hpp"

namespace qmpower {
namespace {

enum class MoveKind { real_rotation, imag_rotation, phase };

struct Move {
  MoveKind kind;
  int target;  // unitary index, or -1 for the amplitudes
  int i;
  int j;
};

// 2x2 move acting on coordinates (i, j); phase moves only touch i.
void rotate_columns(CMatrix& u, const Move& mv, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  if (mv.kind == MoveKind::phase) {
    u.col(mv.i) *= std::polar(1.0, t);
    return;
  }
  const CVector ci = u.col(mv.i);
  const CVector cj = u.col(mv.j);
  if (mv.kind == MoveKind::real_rotation) {
    u.col(mv.i) = c * ci + s * cj;
    u.col(mv.j) = -s * ci + c * cj;
  } else {
    const Complex is(0.0, s);
    u.col(mv.i) = c * ci + is * cj;
    u.col(mv.j) = is * ci + c * cj;
  }
}

void rotate_amplitudes(CVector& a, const Move& mv, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  if (mv.kind == MoveKind::phase) {
    a(mv.i) *= std::polar(1.0, t);
    return;
  }
  const Complex ai = a(mv.i);
  const Complex aj = a(mv.j);
  if (mv.kind == MoveKind::real_rotation) {
    a(mv.i) = c * ai - s * aj;
    a(mv.j) = s * ai + c * aj;
  } else {
    const Complex is(0.0, s);
    a(mv.i) = c * ai + is * aj;
    a(mv.j) = is * ai + c * aj;
  }
}

void apply_move(NetworkConfig& net, const Move& mv, double t) {
  if (mv.target < 0) {
    rotate_amplitudes(net.alphas, mv, t);
  } else {
    rotate_columns(net.unitaries[mv.target], mv, t);
  }
}

double objective(const NetworkConfig& net) { return std::norm(compute_z(net)); }

std::vector<Move> build_moves(const NetworkConfig& net) {
  std::vector<Move> moves;
  const int count = static_cast<int>(net.unitaries.size());
  for (int target = -1; target < count; ++target) {
    for (int i = 0; i < net.m; ++i) {
      for (int j = i + 1; j < net.m; ++j) {
        moves.push_back({MoveKind::real_rotation, target, i, j});
        moves.push_back({MoveKind::imag_rotation, target, i, j});
      }
      moves.push_back({MoveKind::phase, target, i, i});
    }
  }
  return moves;
}

}  // namespace

OptimizationResult numeric_optimize_z(const NetworkConfig& initial,
                                      double phi_target,
                                      const OptimizerOptions& options) {
  initial.validate();
  if (options.grid_points < 3) {
    throw DomainError("numeric_optimize_z: grid_points must be >= 3");
  }
  const double budget = initial.alpha_sq();
  if (!(budget > 0.0)) {
    throw DomainError("numeric_optimize_z: zero classical amplitude");
  }

  OptimizationResult result;
  result.network = initial;
  NetworkConfig& net = result.network;
  double current = objective(net);
  result.trace.push_back(current);
  const std::vector<Move> moves = build_moves(net);

  const double step = 2.0 * kPi / options.grid_points;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;

  auto eval = [&](const Move& mv, double t) {
    NetworkConfig trial = net;
    apply_move(trial, mv, t);
    return objective(trial);
  };

  while (!result.hit_step_cap) {
    const double sweep_start = current;
    for (const Move& mv : moves) {
      if (result.steps >= options.max_steps) {
        result.hit_step_cap = true;
        break;
      }
      ++result.steps;
      double best_t = 0.0;
      double best = current;
      for (int g = 0; g < options.grid_points; ++g) {
        const double t = -kPi + g * step;
        const double v = eval(mv, t);
        if (v > best) {
          best = v;
          best_t = t;
        }
      }
      double lo = best_t - step;
      double hi = best_t + step;
      double x1 = hi - invphi * (hi - lo);
      double x2 = lo + invphi * (hi - lo);
      double f1 = eval(mv, x1);
      double f2 = eval(mv, x2);
      while (hi - lo > options.angle_tolerance) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + invphi * (hi - lo);
          f2 = eval(mv, x2);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - invphi * (hi - lo);
          f1 = eval(mv, x1);
        }
      }
      const double t_ref = 0.5 * (lo + hi);
      const double v_ref = eval(mv, t_ref);
      if (v_ref > best) {
        best = v_ref;
        best_t = t_ref;
      }
      if (best > current) {
        apply_move(net, mv, best_t);
        current = objective(net);
      }
    }
    result.trace.push_back(current);
    if ((current - sweep_start) / budget < options.tolerance) {
      result.converged = !result.hit_step_cap;
      break;
    }
  }

  // z is linear in the amplitudes.
  const Complex z = compute_z(net);
  if (std::abs(z) > 0.0) {
    net.alphas *= std::polar(1.0, phi_target - std::arg(z));
  }
  result.objective = objective(net);
  return result;
}

}  // namespace qmpower
