#include "sdg/simplex.hpp"

#include <cmath>
#include <limits>

#include "sdg/errors.hpp"

namespace sdg {

namespace {

class Tableau {
 public:
  Tableau(const std::vector<std::vector<double>>& A, const std::vector<double>& b, double tol)
      : m_(static_cast<int>(A.size())), n_(A.empty() ? 0 : static_cast<int>(A[0].size())), tol_(tol) {
    width_ = n_ + m_ + 1;
    t_.assign(static_cast<std::size_t>(m_), std::vector<double>(static_cast<std::size_t>(width_), 0.0));
    flipped_.assign(static_cast<std::size_t>(m_), false);
    basis_.resize(static_cast<std::size_t>(m_));
    for (int r = 0; r < m_; ++r) {
      if (static_cast<int>(A[r].size()) != n_) throw Error(errc::kInternal, "ragged constraint matrix");
      const double sign = b[r] < 0.0 ? -1.0 : 1.0;
      flipped_[r] = sign < 0.0;
      for (int j = 0; j < n_; ++j) t_[r][j] = sign * A[r][j];
      t_[r][n_ + r] = 1.0;
      t_[r][width_ - 1] = sign * b[r];
      basis_[r] = n_ + r;
    }
  }

  // Maximises cost·x over the current basis; columns >= allowed never enter.
  SimplexResult::Status optimise(const std::vector<double>& cost, int allowed, int& pivots) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < allowed && enter < 0; ++j) {
        if (is_basic(j)) continue;
        if (reduced(cost, j) > 1e-10) enter = j;
      }
      if (enter < 0) return SimplexResult::Status::optimal;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m_; ++r) {
        const double a = t_[r][enter];
        if (a <= tol_) continue;
        const double ratio = t_[r][width_ - 1] / a;
        if (ratio < best - 1e-14 || (std::fabs(ratio - best) <= 1e-14 && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave < 0) return SimplexResult::Status::unbounded;
      pivot(leave, enter);
      if (++pivots > 200000) throw Error(errc::kInternal, "simplex pivot limit reached");
    }
  }

  void drive_out_artificials(int& pivots) {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (int j = 0; j < n_; ++j) {
        if (!is_basic(j) && std::fabs(t_[r][j]) > tol_) {
          pivot(r, j);
          ++pivots;
          break;
        }
      }
    }
  }

  double objective(const std::vector<double>& cost) const {
    double z = 0.0;
    for (int r = 0; r < m_; ++r) z += cost[basis_[r]] * t_[r][width_ - 1];
    return z;
  }

  std::vector<double> primal() const {
    std::vector<double> x(static_cast<std::size_t>(n_), 0.0);
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < n_) x[basis_[r]] = t_[r][width_ - 1];
    return x;
  }

  // Multipliers c_B B^{-1}, read off the artificial block, for the original rows.
  std::vector<double> duals(const std::vector<double>& cost) const {
    std::vector<double> w(static_cast<std::size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i) {
      for (int r = 0; r < m_; ++r) w[i] += cost[basis_[r]] * t_[r][n_ + i];
      if (flipped_[i]) w[i] = -w[i];
    }
    return w;
  }

  int columns() const { return n_; }
  int total_columns() const { return n_ + m_; }

 private:
  bool is_basic(int j) const {
    for (int b : basis_)
      if (b == j) return true;
    return false;
  }

  double reduced(const std::vector<double>& cost, int j) const {
    double z = cost[j];
    for (int r = 0; r < m_; ++r) z -= cost[basis_[r]] * t_[r][j];
    return z;
  }

  void pivot(int row, int col) {
    auto& pr = t_[row];
    const double p = pr[col];
    for (double& v : pr) v /= p;
    for (int r = 0; r < m_; ++r) {
      if (r == row) continue;
      const double f = t_[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < width_; ++j) t_[r][j] -= f * pr[j];
      t_[r][col] = 0.0;
    }
    basis_[row] = col;
  }

  int m_;
  int n_;
  int width_ = 0;
  double tol_;
  std::vector<std::vector<double>> t_;
  std::vector<bool> flipped_;
  std::vector<int> basis_;
};

}  // namespace

SimplexResult simplex_maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                               const std::vector<double>& c, double pivot_tol) {
  Tableau tab(A, b, pivot_tol);
  SimplexResult res;
  const int n = tab.columns();
  const int total = tab.total_columns();

  std::vector<double> phase1(static_cast<std::size_t>(total), 0.0);
  for (int j = n; j < total; ++j) phase1[j] = -1.0;
  tab.optimise(phase1, total, res.pivots);
  if (tab.objective(phase1) < -1e-9) {
    res.status = SimplexResult::Status::infeasible;
    return res;
  }
  tab.drive_out_artificials(res.pivots);

  std::vector<double> phase2(static_cast<std::size_t>(total), 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = c[j];
  res.status = tab.optimise(phase2, n, res.pivots);
  if (res.status != SimplexResult::Status::optimal) return res;
  res.objective = tab.objective(phase2);
  res.x = tab.primal();
  res.duals = tab.duals(phase2);
  return res;
}

}  // namespace sdg
