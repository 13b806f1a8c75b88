#include "qchan/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qchan {

NelderMeadResult nelder_mead_minimize(
    const std::function<double(const RVector&)>& f, const RVector& x0,
    const NelderMeadOptions& opts) {
  const int n = static_cast<int>(x0.size());
  if (n == 0) throw Error("nelder_mead_minimize: empty parameter vector");

  constexpr double alpha = 1.0;  // reflection
  constexpr double gamma = 2.0;  // expansion
  constexpr double beta = 0.5;   // contraction
  constexpr double sigma = 0.5;  // shrink

  std::vector<RVector> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1](i) += opts.initial_step;
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<int> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });
  };

  int iter = 0;
  bool converged = false;
  for (; iter < opts.max_iters; ++iter) {
    sort_simplex();
    if (vals[order[n]] - vals[order[0]] < opts.f_tol) {
      converged = true;
      break;
    }
    RVector centroid = RVector::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[order[i]];
    centroid /= n;
    const int worst = order[n];

    RVector refl = centroid + alpha * (centroid - pts[worst]);
    double f_refl = f(refl);
    if (f_refl < vals[order[0]]) {
      RVector exp_pt = centroid + gamma * (refl - centroid);
      double f_exp = f(exp_pt);
      if (f_exp < f_refl) {
        pts[worst] = exp_pt;
        vals[worst] = f_exp;
      } else {
        pts[worst] = refl;
        vals[worst] = f_refl;
      }
      continue;
    }
    if (f_refl < vals[order[n - 1]]) {
      pts[worst] = refl;
      vals[worst] = f_refl;
      continue;
    }
    bool outside = f_refl < vals[worst];
    RVector contr = outside ? RVector(centroid + beta * (refl - centroid))
                            : RVector(centroid + beta * (pts[worst] - centroid));
    double f_contr = f(contr);
    if (f_contr < std::min(f_refl, vals[worst])) {
      pts[worst] = contr;
      vals[worst] = f_contr;
      continue;
    }
    // shrink toward the best vertex
    for (int i = 1; i <= n; ++i) {
      int idx = order[i];
      pts[idx] = pts[order[0]] + sigma * (pts[idx] - pts[order[0]]);
      vals[idx] = f(pts[idx]);
    }
  }

  sort_simplex();
  NelderMeadResult res;
  res.x = pts[order[0]];
  res.value = vals[order[0]];
  res.iterations = iter;
  res.converged = converged;
  return res;
}

}  // namespace qchan
