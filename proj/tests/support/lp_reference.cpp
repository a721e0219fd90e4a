#include "lp_reference.hpp"

#include <cmath>
#include <algorithm>
#include <functional>

namespace lsfrp::testing {

namespace {

struct Hyperplane {
  std::vector<double> a;
  double b;
};

bool solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs, std::vector<double>& x) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-10) return false;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  x.assign(n, 0.0);
  for (int i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return true;
}

}  // namespace

std::optional<double> vertex_enumeration_optimum(const lp::LinearModel& model) {
  const int n = model.num_vars();
  std::vector<Hyperplane> planes;
  std::vector<int> mandatory;
  for (int i = 0; i < model.num_rows(); ++i) {
    Hyperplane h{std::vector<double>(n, 0.0), model.row(i).rhs};
    for (const auto& t : model.row(i).terms) h.a[t.var] += t.coef;
    if (model.row(i).sense == lp::Sense::eq) mandatory.push_back(static_cast<int>(planes.size()));
    planes.push_back(std::move(h));
  }
  for (int j = 0; j < n; ++j) {
    Hyperplane lo{std::vector<double>(n, 0.0), model.var(j).lb};
    lo.a[j] = 1.0;
    Hyperplane hi{std::vector<double>(n, 0.0), model.var(j).ub};
    hi.a[j] = 1.0;
    planes.push_back(std::move(lo));
    planes.push_back(std::move(hi));
  }

  std::optional<double> best;
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(chosen.size()) == n) {
      for (int m : mandatory)
        if (std::find(chosen.begin(), chosen.end(), m) == chosen.end()) return;
      std::vector<std::vector<double>> a;
      std::vector<double> b;
      for (int c : chosen) {
        a.push_back(planes[c].a);
        b.push_back(planes[c].b);
      }
      std::vector<double> x;
      if (!solve_square(a, b, x)) return;
      if (model.max_violation(x) > 1e-7) return;
      const double v = model.evaluate(x);
      if (!best || v > *best) best = v;
      return;
    }
    for (int p = start; p < static_cast<int>(planes.size()); ++p) {
      chosen.push_back(p);
      rec(p + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return best;
}

std::optional<double> integer_enumeration_optimum(const lp::LinearModel& model) {
  const int n = model.num_vars();
  std::vector<double> x(n);
  std::optional<double> best;
  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      if (model.max_violation(x) > 1e-9) return;
      const double v = model.evaluate(x);
      if (!best || v > *best) best = v;
      return;
    }
    for (double v = std::ceil(model.var(j).lb); v <= model.var(j).ub + 1e-9; v += 1.0) {
      x[j] = v;
      rec(j + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace lsfrp::testing
