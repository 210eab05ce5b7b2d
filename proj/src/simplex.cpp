#include "stateq/simplex.hpp"

#include <cassert>
#include <limits>

namespace stateq {

namespace {

// Dense tableau over rationals. Columns: structural vars, then slack/surplus,
// then artificials, then the right-hand side.
class Tableau {
 public:
  Tableau(const std::vector<LinRow>& rows, NodeIndex var_count)
      : n_(var_count), m_(rows.size()) {
    std::size_t slack_count = 0;
    for (const auto& r : rows)
      if (r.rel != Rel::eq) ++slack_count;
    slack0_ = n_;
    art0_ = n_ + slack_count;
    cols_ = art0_ + m_;  // one artificial slot per row (not all used)
    t_.assign(m_, std::vector<Rat>(cols_ + 1, Rat(0)));
    basis_.assign(m_, 0);
    is_artificial_.assign(cols_, false);

    std::size_t next_slack = slack0_;
    std::size_t next_art = art0_;
    for (std::size_t i = 0; i < m_; ++i) {
      const LinRow& r = rows[i];
      bool flip = r.rhs < 0;
      Rat sign = flip ? Rat(-1) : Rat(1);
      for (const auto& [j, c] : r.coeffs) t_[i][j] = sign * Rat(c);
      t_[i][cols_] = sign * Rat(r.rhs);
      Rel rel = r.rel;
      if (flip && rel != Rel::eq) rel = rel == Rel::ge ? Rel::le : Rel::ge;
      if (rel == Rel::le) {
        t_[i][next_slack] = 1;
        basis_[i] = next_slack++;
      } else if (rel == Rel::ge) {
        t_[i][next_slack++] = -1;
        t_[i][next_art] = 1;
        is_artificial_[next_art] = true;
        basis_[i] = next_art++;
      } else {
        t_[i][next_art] = 1;
        is_artificial_[next_art] = true;
        basis_[i] = next_art++;
      }
    }
    art_end_ = next_art;
    row_active_.assign(m_, true);
  }

  // Minimizes the given full-length cost vector from the current basis.
  // Returns optimal/unbounded/pivot_limit.
  LpStatus run(const std::vector<Rat>& cost, std::uint64_t max_pivots,
               std::uint64_t& pivots, bool allow_artificial_entering) {
    // objective row: reduced costs r_j = c_j - c_B . column_j
    std::vector<Rat> red(cols_, Rat(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      Rat acc = cost[j];
      for (std::size_t i = 0; i < m_; ++i) {
        if (!row_active_[i]) continue;
        const Rat& cb = cost[basis_[i]];
        if (cb != 0 && t_[i][j] != 0) acc -= cb * t_[i][j];
      }
      red[j] = acc;
    }
    for (;;) {
      // Bland: entering column with negative reduced cost, smallest index.
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allow_artificial_entering && is_artificial_[j]) continue;
        if (red[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return LpStatus::optimal;
      // ratio test; tie broken by smallest basis variable index
      std::size_t leave = m_;
      Rat best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!row_active_[i]) continue;
        if (t_[i][enter] > 0) {
          Rat ratio = t_[i][cols_] / t_[i][enter];
          if (leave == m_ || ratio < best_ratio ||
              (ratio == best_ratio && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave == m_) return LpStatus::unbounded;
      if (++pivots > max_pivots) return LpStatus::pivot_limit;
      pivot(leave, enter, &red);
    }
  }

  void pivot(std::size_t row, std::size_t col, std::vector<Rat>* red) {
    Rat p = t_[row][col];
    assert(p != 0);
    for (std::size_t j = 0; j <= cols_; ++j) t_[row][j] /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || !row_active_[i]) continue;
      Rat f = t_[i][col];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[row][j] != 0) t_[i][j] -= f * t_[row][j];
    }
    if (red) {
      Rat f = (*red)[col];
      if (f != 0)
        for (std::size_t j = 0; j < cols_; ++j)
          if (t_[row][j] != 0) (*red)[j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  // After a zero-cost phase-1 optimum, pivots artificial variables out of the
  // basis or deactivates redundant rows.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!row_active_[i] || !is_artificial_[basis_[i]]) continue;
      std::size_t col = cols_;
      for (std::size_t j = 0; j < art0_; ++j) {
        if (t_[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col == cols_) {
        row_active_[i] = false;  // redundant row
      } else {
        pivot(i, col, nullptr);
      }
    }
  }

  Rat objective_value(const std::vector<Rat>& cost) const {
    Rat v = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!row_active_[i]) continue;
      const Rat& cb = cost[basis_[i]];
      if (cb != 0) v += cb * t_[i][cols_];
    }
    return v;
  }

  std::vector<Rat> structural_solution() const {
    std::vector<Rat> x(n_, Rat(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (!row_active_[i]) continue;
      if (basis_[i] < n_) x[basis_[i]] = t_[i][cols_];
    }
    return x;
  }

  std::size_t cols() const { return cols_; }
  std::size_t art0() const { return art0_; }
  std::size_t art_end() const { return art_end_; }
  bool artificial(std::size_t j) const { return is_artificial_[j]; }

 private:
  std::size_t n_, m_, cols_ = 0, slack0_ = 0, art0_ = 0, art_end_ = 0;
  std::vector<std::vector<Rat>> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_artificial_;
  std::vector<bool> row_active_;
};

}  // namespace

LpResult lp_minimize(const std::vector<LinRow>& rows, NodeIndex var_count,
                     const std::vector<Rat>& objective,
                     std::uint64_t max_pivots) {
  LpResult out;
  Tableau tab(rows, var_count);

  std::vector<Rat> phase1_cost(tab.cols(), Rat(0));
  for (std::size_t j = tab.art0(); j < tab.art_end(); ++j)
    if (tab.artificial(j)) phase1_cost[j] = 1;
  LpStatus st = tab.run(phase1_cost, max_pivots, out.pivots, true);
  if (st == LpStatus::pivot_limit) {
    out.status = st;
    return out;
  }
  // Phase 1 is bounded below by 0, so `unbounded` cannot occur here.
  if (tab.objective_value(phase1_cost) != 0) {
    out.status = LpStatus::infeasible;
    return out;
  }
  tab.drive_out_artificials();

  std::vector<Rat> cost(tab.cols(), Rat(0));
  for (std::size_t j = 0; j < var_count; ++j) cost[j] = objective[j];
  st = tab.run(cost, max_pivots, out.pivots, false);
  if (st != LpStatus::optimal) {
    out.status = st;
    return out;
  }
  out.status = LpStatus::optimal;
  out.value = tab.objective_value(cost);
  out.x = tab.structural_solution();
  return out;
}

}  // namespace stateq
