#include "svrcsp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svrcsp {

void StandardLp::add_row(std::vector<std::pair<int, double>> row, char sense, double r) {
  std::sort(row.begin(), row.end());
  rows.push_back(std::move(row));
  senses.push_back(sense);
  rhs.push_back(r);
}

namespace {

enum VarState : char { kAtLower, kAtUpper, kBasic };

// Bounded-variable revised simplex with a dense basis inverse and a
// two-phase start (no big-M).  Sized for desk-scale models.
class Simplex {
 public:
  Simplex(const StandardLp& lp, const LpOptions& opts) : lp_(lp), opts_(opts) {
    n_ = lp.num_vars;
    m_ = lp.num_rows();
    slack_begin_ = n_;
    art_begin_ = n_ + m_;
    total_ = n_ + 2 * m_;

    lo_.assign(total_, 0.0);
    hi_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.lb[j];
      hi_[j] = lp.ub[j];
      if (lo_[j] > hi_[j]) throw std::invalid_argument("solve_lp: lb > ub");
    }
    cols_.assign(total_, {});
    for (int i = 0; i < m_; ++i) {
      for (auto [j, a] : lp.rows[i]) cols_[j].push_back({i, a});
    }
    for (int i = 0; i < m_; ++i) {
      double big = 1.0 + std::fabs(lp.rhs[i]);
      for (auto [j, a] : lp.rows[i]) {
        big += std::fabs(a) * std::max(std::fabs(lp.lb[j]), std::fabs(lp.ub[j]));
      }
      const int s = slack_begin_ + i;
      cols_[s] = {{i, 1.0}};
      switch (lp.senses[i]) {
        case 'L': lo_[s] = 0.0; hi_[s] = big; break;
        case 'G': lo_[s] = -big; hi_[s] = 0.0; break;
        case 'E': lo_[s] = 0.0; hi_[s] = 0.0; break;
        default: throw std::invalid_argument("solve_lp: bad row sense");
      }
      lo_[art_begin_ + i] = 0.0;
      hi_[art_begin_ + i] = big;
    }
  }

  LpOutcome run() {
    LpOutcome out;
    init_basis();

    // Phase 1: drive artificial infeasibility to zero.
    cost_.assign(total_, 0.0);
    for (int i = 0; i < m_; ++i) cost_[art_begin_ + i] = 1.0;
    const bool phase1_ok = optimize(out);
    if (!phase1_ok) {
      out.status = LpStatus::IterationLimit;
      return out;
    }
    double infeas = 0.0;
    for (int i = 0; i < m_; ++i) infeas += value(art_begin_ + i);
    if (infeas > 1e-6) {
      out.status = LpStatus::Infeasible;
      out.iterations = iters_;
      return out;
    }
    retire_artificials();

    // Phase 2: the real objective.
    cost_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = lp_.obj[j];
    degenerate_run_ = 0;
    if (!optimize(out)) {
      out.status = LpStatus::IterationLimit;
      extract(out);
      return out;
    }
    out.status = LpStatus::Optimal;
    refactor();  // tighten the final point
    extract(out);
    return out;
  }

 private:
  double value(int j) const { return x_[j]; }

  void column_times(const std::vector<double>& vec_rows, int j, double& out) const {
    double s = 0.0;
    for (auto [i, a] : cols_[j]) s += vec_rows[i] * a;
    out = s;
  }

  void init_basis() {
    x_.assign(total_, 0.0);
    state_.assign(total_, kAtLower);
    basis_.assign(m_, -1);
    in_basis_.assign(total_, false);
    for (int j = 0; j < n_; ++j) {
      // Nonbasic at the finite bound closest to zero.
      x_[j] = (std::fabs(lo_[j]) <= std::fabs(hi_[j])) ? lo_[j] : hi_[j];
      state_[j] = (x_[j] == lo_[j]) ? kAtLower : kAtUpper;
    }
    std::vector<double> residual(m_, 0.0);
    for (int i = 0; i < m_; ++i) residual[i] = lp_.rhs[i];
    for (int j = 0; j < n_; ++j) {
      if (x_[j] != 0.0) {
        for (auto [i, a] : cols_[j]) residual[i] -= a * x_[j];
      }
    }
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const int s = slack_begin_ + i;
      const int t = art_begin_ + i;
      if (residual[i] >= lo_[s] && residual[i] <= hi_[s]) {
        basis_[i] = s;
        x_[s] = residual[i];
        state_[s] = kBasic;
        x_[t] = 0.0;
        binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
      } else {
        // Slack pinned at its nearest bound; artificial absorbs the rest.
        x_[s] = (residual[i] < lo_[s]) ? lo_[s] : hi_[s];
        state_[s] = (x_[s] == lo_[s]) ? kAtLower : kAtUpper;
        const double rem = residual[i] - x_[s];
        cols_[art_begin_ + i] = {{i, rem >= 0 ? 1.0 : -1.0}};
        basis_[i] = t;
        x_[t] = std::fabs(rem);
        state_[t] = kBasic;
        binv_[static_cast<std::size_t>(i) * m_ + i] = (rem >= 0 ? 1.0 : -1.0);
      }
      in_basis_[basis_[i]] = true;
    }
  }

  // Pivot artificials out of the basis where possible; redundant rows keep
  // a fixed artificial.  All artificial bounds collapse to zero.
  void retire_artificials() {
    for (int i = 0; i < m_; ++i) {
      const int t = art_begin_ + i;
      hi_[t] = 0.0;
      if (!in_basis_[t]) x_[t] = 0.0;
    }
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < art_begin_) continue;
      int replacement = -1;
      std::vector<double> w;
      for (int j = 0; j < art_begin_ && replacement < 0; ++j) {
        if (in_basis_[j] || hi_[j] - lo_[j] < opts_.zero_tol) continue;
        double wr = 0.0;
        for (auto [i, a] : cols_[j]) wr += binv_[static_cast<std::size_t>(r) * m_ + i] * a;
        if (std::fabs(wr) > 1e-7) {
          replacement = j;
          w = direction(j);
        }
      }
      if (replacement < 0) continue;  // redundant row
      const int leaving = basis_[r];
      // Degenerate swap: the replacement enters at its current value, so no
      // other basic value moves.
      apply_pivot(replacement, r, w, x_[replacement], +1,
                  state_[replacement] == kAtLower ? kAtLower : kAtUpper);
      x_[leaving] = 0.0;
      state_[leaving] = kAtLower;
    }
  }

  std::vector<double> direction(int q) const {
    std::vector<double> w(m_, 0.0);
    for (auto [i, a] : cols_[q]) {
      for (int k = 0; k < m_; ++k) w[k] += binv_[static_cast<std::size_t>(k) * m_ + i] * a;
    }
    return w;
  }

  // One simplex phase on the current cost vector.  Returns false on
  // iteration limit.
  bool optimize(LpOutcome& out) {
    long since_refactor = 0;
    while (true) {
      if (iters_ >= opts_.max_iterations) return false;

      // Duals and pricing.
      std::vector<double> y(m_, 0.0);
      for (int i = 0; i < m_; ++i) {
        const double cb = cost_[basis_[i]];
        if (cb != 0.0) {
          const double* row = &binv_[static_cast<std::size_t>(i) * m_];
          for (int k = 0; k < m_; ++k) y[k] += cb * row[k];
        }
      }
      const bool bland = degenerate_run_ >= opts_.bland_threshold;
      int entering = -1;
      double best = opts_.opt_tol;
      char enter_dir = kAtLower;
      for (int j = 0; j < total_; ++j) {
        if (in_basis_[j] || hi_[j] - lo_[j] < opts_.zero_tol) continue;
        double d;
        column_times(y, j, d);
        d = cost_[j] - d;
        const bool candidate = (state_[j] == kAtLower && d < -opts_.opt_tol) ||
                               (state_[j] == kAtUpper && d > opts_.opt_tol);
        if (!candidate) continue;
        if (bland) {
          entering = j;
          enter_dir = state_[j];
          break;
        }
        if (std::fabs(d) > best) {
          best = std::fabs(d);
          entering = j;
          enter_dir = state_[j];
        }
      }
      if (entering < 0) {
        out.duals = y;
        return true;  // optimal for this phase
      }

      const std::vector<double> w = direction(entering);
      const int sigma = (enter_dir == kAtLower) ? +1 : -1;

      // Ratio test; basic variable i moves by -sigma * t * w[i].
      double t_limit = hi_[entering] - lo_[entering];
      int leaving_row = -1;
      char leaving_state = kAtLower;
      for (int i = 0; i < m_; ++i) {
        const double delta = -sigma * w[i];
        const int bj = basis_[i];
        double t_i;
        char hit;
        if (delta > opts_.feas_tol) {
          t_i = (hi_[bj] - x_[bj]) / delta;
          hit = kAtUpper;
        } else if (delta < -opts_.feas_tol) {
          t_i = (x_[bj] - lo_[bj]) / (-delta);
          hit = kAtLower;
        } else {
          continue;
        }
        if (t_i < 0.0) t_i = 0.0;
        if (t_i < t_limit - 1e-12 ||
            (t_i < t_limit + 1e-12 && leaving_row >= 0 && bland && bj < basis_[leaving_row])) {
          t_limit = t_i;
          leaving_row = i;
          leaving_state = hit;
        }
      }

      ++iters_;
      if (t_limit < 1e-10) {
        ++degenerate_run_;
      } else {
        degenerate_run_ = 0;
      }

      if (leaving_row < 0) {
        // Bound flip of the entering variable.
        for (int i = 0; i < m_; ++i) x_[basis_[i]] += -sigma * t_limit * w[i];
        state_[entering] = (enter_dir == kAtLower) ? kAtUpper : kAtLower;
        x_[entering] = (enter_dir == kAtLower) ? hi_[entering] : lo_[entering];
        continue;
      }

      const int leaving = basis_[leaving_row];
      for (int i = 0; i < m_; ++i) x_[basis_[i]] += -sigma * t_limit * w[i];
      const double entering_value =
          ((enter_dir == kAtLower) ? lo_[entering] : hi_[entering]) + sigma * t_limit;
      apply_pivot(entering, leaving_row, w, entering_value, sigma, enter_dir);
      x_[leaving] = (leaving_state == kAtLower) ? lo_[leaving] : hi_[leaving];
      state_[leaving] = leaving_state;

      if (++since_refactor >= 300) {
        refactor();
        since_refactor = 0;
      }
    }
  }

  void apply_pivot(int entering, int row, const std::vector<double>& w, double entering_value,
                   int /*sigma*/, char /*enter_dir*/) {
    const int leaving = basis_[row];
    in_basis_[leaving] = false;
    in_basis_[entering] = true;
    basis_[row] = entering;
    x_[entering] = entering_value;
    state_[entering] = kBasic;

    const double pivot = w[row];
    double* prow = &binv_[static_cast<std::size_t>(row) * m_];
    for (int k = 0; k < m_; ++k) prow[k] /= pivot;
    for (int i = 0; i < m_; ++i) {
      if (i == row || std::fabs(w[i]) < 1e-14) continue;
      double* irow = &binv_[static_cast<std::size_t>(i) * m_];
      const double f = w[i];
      for (int k = 0; k < m_; ++k) irow[k] -= f * prow[k];
    }
  }

  // Rebuild the basis inverse from scratch and recompute basic values.
  void refactor() {
    std::vector<double> B(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int c = 0; c < m_; ++c) {
      for (auto [i, a] : cols_[basis_[c]]) B[static_cast<std::size_t>(i) * m_ + c] = a;
    }
    std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) inv[static_cast<std::size_t>(i) * m_ + i] = 1.0;
    for (int c = 0; c < m_; ++c) {
      int piv = c;
      double best = std::fabs(B[static_cast<std::size_t>(c) * m_ + c]);
      for (int i = c + 1; i < m_; ++i) {
        const double v = std::fabs(B[static_cast<std::size_t>(i) * m_ + c]);
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (best < 1e-12) throw std::runtime_error("solve_lp: singular basis during refactor");
      if (piv != c) {
        for (int k = 0; k < m_; ++k) {
          std::swap(B[static_cast<std::size_t>(piv) * m_ + k], B[static_cast<std::size_t>(c) * m_ + k]);
          std::swap(inv[static_cast<std::size_t>(piv) * m_ + k],
                    inv[static_cast<std::size_t>(c) * m_ + k]);
        }
      }
      const double p = B[static_cast<std::size_t>(c) * m_ + c];
      for (int k = 0; k < m_; ++k) {
        B[static_cast<std::size_t>(c) * m_ + k] /= p;
        inv[static_cast<std::size_t>(c) * m_ + k] /= p;
      }
      for (int i = 0; i < m_; ++i) {
        if (i == c) continue;
        const double f = B[static_cast<std::size_t>(i) * m_ + c];
        if (std::fabs(f) < 1e-15) continue;
        for (int k = 0; k < m_; ++k) {
          B[static_cast<std::size_t>(i) * m_ + k] -= f * B[static_cast<std::size_t>(c) * m_ + k];
          inv[static_cast<std::size_t>(i) * m_ + k] -= f * inv[static_cast<std::size_t>(c) * m_ + k];
        }
      }
    }
    binv_ = std::move(inv);

    std::vector<double> residual(m_, 0.0);
    for (int i = 0; i < m_; ++i) residual[i] = lp_.rhs[i];
    for (int j = 0; j < total_; ++j) {
      if (in_basis_[j] || x_[j] == 0.0) continue;
      for (auto [i, a] : cols_[j]) residual[i] -= a * x_[j];
    }
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      const double* row = &binv_[static_cast<std::size_t>(i) * m_];
      for (int k = 0; k < m_; ++k) v += row[k] * residual[k];
      x_[basis_[i]] = v;
    }
  }

  void extract(LpOutcome& out) const {
    out.x.assign(n_, 0.0);
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) {
      out.x[j] = x_[j];
      obj += lp_.obj[j] * x_[j];
    }
    out.objective = obj;
    out.iterations = iters_;
    // Dual objective: y'b plus reduced costs at their nonbasic bounds.
    double dual = 0.0;
    if (!out.duals.empty()) {
      for (int i = 0; i < m_; ++i) dual += out.duals[i] * lp_.rhs[i];
      for (int j = 0; j < total_; ++j) {
        if (in_basis_[j]) continue;
        double d;
        column_times(out.duals, j, d);
        d = cost_[j] - d;
        dual += d * x_[j];
      }
      out.duals.resize(m_);
    }
    out.dual_objective = dual;
  }

  const StandardLp& lp_;
  const LpOptions& opts_;
  int n_ = 0, m_ = 0, slack_begin_ = 0, art_begin_ = 0, total_ = 0;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> lo_, hi_, cost_, x_, binv_;
  std::vector<int> basis_;
  std::vector<char> state_;
  std::vector<bool> in_basis_;
  long iters_ = 0;
  long degenerate_run_ = 0;
};

}  // namespace

LpOutcome solve_lp(const StandardLp& lp, const LpOptions& opts) {
  if (static_cast<int>(lp.obj.size()) != lp.num_vars ||
      static_cast<int>(lp.lb.size()) != lp.num_vars ||
      static_cast<int>(lp.ub.size()) != lp.num_vars) {
    throw std::invalid_argument("solve_lp: inconsistent dimensions");
  }
  if (lp.num_rows() == 0) {
    // Pure bound minimisation.
    LpOutcome out;
    out.status = LpStatus::Optimal;
    out.x.resize(lp.num_vars);
    for (int j = 0; j < lp.num_vars; ++j) {
      out.x[j] = (lp.obj[j] >= 0) ? lp.lb[j] : lp.ub[j];
      out.objective += lp.obj[j] * out.x[j];
    }
    out.dual_objective = out.objective;
    return out;
  }
  Simplex s(lp, opts);
  return s.run();
}

}  // namespace svrcsp
