#include "qchan/capacity.hpp"

#include <Eigen/QR>
#include <cmath>
#include <functional>
#include <sstream>

#include "qchan/inequalities.hpp"
#include "qchan/random.hpp"

namespace qchan {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

constexpr double kBadObjective = -1e9;

// x (length 2 d^2) -> rho = L L^dag / tr(L L^dag)
CMatrix state_from_params(const RVector& x, int d) {
  CMatrix l(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      int base = 2 * (i * d + j);
      l(i, j) = Complex(x(base), x(base + 1));
    }
  CMatrix rho = l * l.adjoint();
  double tr = rho.trace().real();
  if (tr < 1e-14) return CMatrix();
  return rho / tr;
}

RVector params_from_factor(const CMatrix& l) {
  const int d = static_cast<int>(l.rows());
  RVector x(2 * d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      int base = 2 * (i * d + j);
      x(base) = l(i, j).real();
      x(base + 1) = l(i, j).imag();
    }
  return x;
}

// Cholesky-style factor of a density matrix for use as a starting point.
CMatrix factor_of_state(const CMatrix& rho) {
  auto eig = hermitian_eig(rho);
  CMatrix l = CMatrix::Zero(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double lam = std::max(0.0, eig.values(i));
    l.col(i) = std::sqrt(lam) * eig.vectors.col(i);
  }
  return l;
}

struct StateSearchResult {
  double value = kBadObjective;
  RVector x;
  int best_restart = 0;
  bool converged = false;
};

// Shared multi-start driver: maximizes `objective` over density-matrix
// parameters. Start list: maximally mixed, |0><0|, caller-provided states,
// then random factors.
StateSearchResult maximize_over_states(
    const std::function<double(const CMatrix&)>& objective, int d,
    const OptimizerConfig& cfg, const std::vector<CMatrix>& seed_states) {
  auto penalized = [&](const RVector& x) {
    CMatrix rho = state_from_params(x, d);
    if (rho.size() == 0) return -kBadObjective;
    return -objective(rho);
  };

  std::vector<RVector> starts;
  starts.push_back(params_from_factor(CMatrix::Identity(d, d) /
                                      std::sqrt(static_cast<double>(d))));
  CMatrix pure = CMatrix::Zero(d, d);
  pure(0, 0) = 1.0;
  starts.push_back(params_from_factor(pure));
  for (const auto& s : seed_states) starts.push_back(params_from_factor(factor_of_state(s)));

  Rng rng(cfg.seed);
  int total = std::max<int>(cfg.restarts, static_cast<int>(starts.size()));
  NelderMeadOptions opts;
  opts.max_iters = cfg.max_iters;
  opts.f_tol = cfg.f_tol;
  opts.initial_step = 0.25;

  StateSearchResult best;
  for (int r = 0; r < total; ++r) {
    RVector x0;
    if (r < static_cast<int>(starts.size())) {
      x0 = starts[r];
    } else {
      Rng child = rng.child(r);
      x0.resize(2 * d * d);
      for (int i = 0; i < x0.size(); ++i) x0(i) = child.normal();
    }
    auto res = nelder_mead_minimize(penalized, x0, opts);
    double value = -res.value;
    if (value > best.value) {
      best.value = value;
      best.x = res.x;
      best.best_restart = r;
      best.converged = res.converged;
    }
  }
  return best;
}

}  // namespace

std::string to_string(EncodingClass c) {
  switch (c) {
    case EncodingClass::kStateOnly: return "state-only";
    case EncodingClass::kGeneralEncoding: return "general-encoding";
    case EncodingClass::kObserved: return "observed";
  }
  return "unknown";
}

MaxCoherentResult max_coherent_info(const QuantumOperation& e,
                                    const OptimizerConfig& cfg,
                                    const std::vector<CMatrix>& seed_states) {
  if (!e.is_trace_preserving())
    throw Error("max_coherent_info: channel must be trace-preserving");
  const int d = e.dim_in();
  auto objective = [&](const CMatrix& rho) {
    return coherent_information(DensityOperator(rho), e);
  };
  auto sr = maximize_over_states(objective, d, cfg, seed_states);
  MaxCoherentResult out;
  out.argmax = DensityOperator(state_from_params(sr.x, d)).matrix();
  out.value = coherent_information(DensityOperator(out.argmax), e);
  out.best_restart = sr.best_restart;
  out.converged = sr.converged;
  return out;
}

MaxCoherentResult max_avg_coherent_info(const ObservedChannel& obs,
                                        const OptimizerConfig& cfg,
                                        const std::vector<CMatrix>& seed_states) {
  const int d = obs.dim_in();
  auto objective = [&](const CMatrix& rho) {
    return observed_avg_coherent_info(obs, DensityOperator(rho));
  };
  auto sr = maximize_over_states(objective, d, cfg, seed_states);
  MaxCoherentResult out;
  out.argmax = DensityOperator(state_from_params(sr.x, d)).matrix();
  out.value = observed_avg_coherent_info(obs, DensityOperator(out.argmax));
  out.best_restart = sr.best_restart;
  out.converged = sr.converged;
  return out;
}

CapacityEstimate capacity_bound_unitary(const QuantumOperation& n_op, int n_max,
                                        const OptimizerConfig& cfg) {
  if (n_max < 1) throw Error("capacity_bound_unitary: n_max must be >= 1");
  CapacityEstimate est;
  est.encoding_class = EncodingClass::kStateOnly;
  est.seed = cfg.seed;
  for (int n = 1; n <= n_max; ++n) {
    QuantumOperation big = tensor_pow(n_op, n);
    OptimizerConfig sub = cfg;
    sub.seed = Rng(cfg.seed).child(n).seed();
    auto res = max_coherent_info(big, sub);
    CapacityEntry entry;
    entry.n = n;
    entry.c_n = res.value;
    entry.per_use = res.value / n;
    entry.clipped = std::max(0.0, entry.per_use);
    entry.argmax_state = res.argmax;
    entry.best_restart = res.best_restart;
    entry.converged = res.converged;
    est.per_n.push_back(std::move(entry));
  }
  return est;
}

namespace {

struct EncodingParametrization {
  int source_dim;
  int out_dim;
  int kraus_count;

  int param_count() const { return 2 * out_dim * kraus_count * source_dim; }

  // Re-orthonormalizes the raw parameter matrix into an isometry
  // V: source -> out (x) env and reads off the Kraus operators.
  std::vector<CMatrix> kraus_from_params(const RVector& x) const {
    const int rows = out_dim * kraus_count;
    CMatrix g(rows, source_dim);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < source_dim; ++j) {
        int base = 2 * (i * source_dim + j);
        g(i, j) = Complex(x(base), x(base + 1));
      }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix v = q.leftCols(source_dim);
    std::vector<CMatrix> kraus(kraus_count, CMatrix::Zero(out_dim, source_dim));
    for (int e = 0; e < kraus_count; ++e)
      for (int p = 0; p < out_dim; ++p)
        for (int j = 0; j < source_dim; ++j)
          kraus[e](p, j) = v(p * kraus_count + e, j);
    return kraus;
  }

  RVector params_from_kraus(const std::vector<CMatrix>& kraus) const {
    RVector x = RVector::Zero(param_count());
    for (int e = 0; e < kraus_count && e < static_cast<int>(kraus.size()); ++e)
      for (int p = 0; p < out_dim; ++p)
        for (int j = 0; j < source_dim; ++j) {
          int base = 2 * ((p * kraus_count + e) * source_dim + j);
          x(base) = kraus[e](p, j).real();
          x(base + 1) = kraus[e](p, j).imag();
        }
    return x;
  }
};

}  // namespace

CapacityEstimate capacity_bound_general(const QuantumOperation& n_op,
                                        int source_dim, int n_max,
                                        const OptimizerConfig& cfg,
                                        const std::vector<CMatrix>& seed_states) {
  if (n_max < 1) throw Error("capacity_bound_general: n_max must be >= 1");
  if (source_dim < 2) throw Error("capacity_bound_general: source_dim must be >= 2");
  CapacityEstimate est;
  est.encoding_class = EncodingClass::kGeneralEncoding;
  est.seed = cfg.seed;

  for (int n = 1; n <= n_max; ++n) {
    QuantumOperation big = tensor_pow(n_op, n);
    int s_n = 1;
    for (int i = 0; i < n; ++i) s_n *= source_dim;
    if (s_n > kKrausCap)
      throw Error("capacity_bound_general: source dimension exceeds cap");
    EncodingParametrization par{s_n, big.dim_in(), s_n};

    auto value_of = [&](const CMatrix& rho, const std::vector<CMatrix>& enc) {
      QuantumOperation c(enc);
      return coherent_information(DensityOperator(rho),
                                  compose(big, c));
    };

    NelderMeadOptions opts;
    opts.max_iters = cfg.max_iters;
    opts.f_tol = cfg.f_tol;
    opts.initial_step = 0.25;

    // canonical embedding onto the first s_n levels (the identity encoding
    // when dimensions match) anchors the search
    std::vector<CMatrix> id_enc;
    if (big.dim_in() >= s_n) {
      CMatrix v = CMatrix::Zero(big.dim_in(), s_n);
      for (int j = 0; j < s_n; ++j) v(j, j) = 1.0;
      id_enc = {std::move(v)};
    }

    double best_value = kBadObjective;
    CMatrix best_state;
    std::vector<CMatrix> best_enc;
    int best_restart = 0;
    bool best_converged = false;

    // The identity encoding and caller-provided states enter the search
    // directly, so the result dominates their values exactly.
    if (!id_enc.empty()) {
      std::vector<CMatrix> states = seed_states;
      states.push_back(CMatrix::Identity(s_n, s_n) / static_cast<double>(s_n));
      for (const auto& st : states) {
        if (st.rows() != s_n) continue;
        double value = value_of(st, id_enc);
        if (value > best_value) {
          best_value = value;
          best_state = DensityOperator(st).matrix();
          best_enc = id_enc;
          best_converged = true;
        }
      }
    }

    Rng rng(Rng(cfg.seed).child(100 + n).seed());
    const int restarts = std::max(1, cfg.restarts);
    for (int r = 0; r < restarts; ++r) {
      Rng child = rng.child(r);
      // encoding start
      RVector xg(par.param_count());
      if (r == 0 && !id_enc.empty()) {
        xg = par.params_from_kraus(id_enc);
      } else {
        for (int i = 0; i < xg.size(); ++i) xg(i) = child.normal();
      }
      // state start
      RVector xs(2 * s_n * s_n);
      if (r == 0) {
        if (!seed_states.empty()) {
          xs = params_from_factor(factor_of_state(seed_states.front()));
        } else {
          xs = params_from_factor(CMatrix::Identity(s_n, s_n) /
                                  std::sqrt(static_cast<double>(s_n)));
        }
      } else if (r == 1) {
        CMatrix pure = CMatrix::Zero(s_n, s_n);
        pure(0, 0) = 1.0;
        xs = params_from_factor(pure);
      } else {
        for (int i = 0; i < xs.size(); ++i) xs(i) = child.normal();
      }

      bool converged = false;
      static constexpr int kRounds = 3;
      for (int round = 0; round < kRounds; ++round) {
        // optimize the state with the encoding fixed
        auto enc = par.kraus_from_params(xg);
        auto f_state = [&](const RVector& x) {
          CMatrix rho = state_from_params(x, s_n);
          if (rho.size() == 0) return -kBadObjective;
          return -value_of(rho, enc);
        };
        auto rs = nelder_mead_minimize(f_state, xs, opts);
        xs = rs.x;
        // optimize the encoding with the state fixed
        CMatrix rho = state_from_params(xs, s_n);
        auto f_enc = [&](const RVector& x) {
          return -value_of(rho, par.kraus_from_params(x));
        };
        auto re = nelder_mead_minimize(f_enc, xg, opts);
        xg = re.x;
        converged = rs.converged && re.converged;
      }

      CMatrix rho = state_from_params(xs, s_n);
      auto enc = par.kraus_from_params(xg);
      double value = value_of(rho, enc);
      if (value > best_value) {
        best_value = value;
        best_state = DensityOperator(rho).matrix();
        best_enc = enc;
        best_restart = r;
        best_converged = converged;
      }
    }

    CapacityEntry entry;
    entry.n = n;
    entry.c_n = best_value;
    entry.per_use = best_value / n;
    entry.clipped = std::max(0.0, entry.per_use);
    entry.argmax_state = best_state;
    entry.argmax_encoding_kraus = best_enc;
    entry.best_restart = best_restart;
    entry.converged = best_converged;
    est.per_n.push_back(std::move(entry));
  }
  return est;
}

CapacityEstimate observed_capacity_bound(const ObservedChannel& obs, int n_max,
                                         const OptimizerConfig& cfg) {
  if (n_max < 1) throw Error("observed_capacity_bound: n_max must be >= 1");
  CapacityEstimate est;
  est.encoding_class = EncodingClass::kObserved;
  est.seed = cfg.seed;
  for (int n = 1; n <= n_max; ++n) {
    ObservedChannel big = obs.tensor_pow(n);
    OptimizerConfig sub = cfg;
    sub.seed = Rng(cfg.seed).child(200 + n).seed();
    auto res = max_avg_coherent_info(big, sub);
    CapacityEntry entry;
    entry.n = n;
    entry.c_n = res.value;
    entry.per_use = res.value / n;
    entry.clipped = std::max(0.0, entry.per_use);
    entry.argmax_state = res.argmax;
    entry.best_restart = res.best_restart;
    entry.converged = res.converged;
    est.per_n.push_back(std::move(entry));
  }
  return est;
}

CheckReport superadditivity_check(const std::vector<double>& c_values, int dim,
                                  double optimizer_tol) {
  CheckReport rep;
  rep.name = "superadditivity";
  rep.threshold = 2.0 * optimizer_tol;
  const int n_max = static_cast<int>(c_values.size());
  for (int m = 1; m <= n_max; ++m)
    for (int n = m; m + n <= n_max; ++n) {
      double slack = c_values[m + n - 1] - c_values[m - 1] - c_values[n - 1];
      rep.record(slack, "C_" + std::to_string(m) + " + C_" + std::to_string(n) +
                            " > C_" + std::to_string(m + n) + " by " +
                            fmt(-slack));
    }
  double logd = std::log2(static_cast<double>(dim));
  for (int n = 1; n <= n_max; ++n)
    rep.record(n * logd - c_values[n - 1],
               "C_" + std::to_string(n) + " exceeds n log2 d");
  return rep;
}

ShannonResult shannon_capacity(const ClassicalChannel& c, double threshold) {
  if (threshold <= 0) throw Error("shannon_capacity: threshold must be positive");
  const int nx = c.n_in();
  const int ny = c.n_out();
  std::vector<double> px(nx, 1.0 / nx);
  ShannonResult res;
  res.converged = false;

  constexpr int kMaxIters = 200000;
  double capacity = 0.0;
  for (int it = 0; it < kMaxIters; ++it) {
    std::vector<double> qy(ny, 0.0);
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) qy[y] += px[x] * c.prob(y, x);
    // per-symbol divergence D_x = sum_y p(y|x) log2 (p(y|x)/q(y))
    std::vector<double> dx(nx, 0.0);
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y) {
        double p = c.prob(y, x);
        if (p > 0.0 && qy[y] > 0.0) dx[x] += p * std::log2(p / qy[y]);
      }
    double lower = 0.0, upper = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < nx; ++x) {
      lower += px[x] * dx[x];
      upper = std::max(upper, dx[x]);
    }
    capacity = lower;
    res.objective_trace.push_back(lower);
    res.iterations = it + 1;
    if (upper - lower <= threshold) {
      res.converged = true;
      break;
    }
    double norm = 0.0;
    for (int x = 0; x < nx; ++x) {
      px[x] *= std::exp2(dx[x]);
      norm += px[x];
    }
    for (int x = 0; x < nx; ++x) px[x] /= norm;
  }
  res.capacity = capacity;
  res.input_dist = std::move(px);
  return res;
}

CheckReport mutual_info_identity_check(const ClassicalChannel& c,
                                       const std::vector<double>& px) {
  if (static_cast<int>(px.size()) != c.n_in())
    throw Error("mutual_info_identity_check: distribution size mismatch");
  CheckReport rep;
  rep.name = "mutual_info_identity";

  // classical side from the joint distribution
  double hx = shannon_entropy(px);
  std::vector<double> py(c.n_out(), 0.0);
  std::vector<double> joint;
  joint.reserve(static_cast<size_t>(c.n_in()) * c.n_out());
  for (int x = 0; x < c.n_in(); ++x)
    for (int y = 0; y < c.n_out(); ++y) {
      double p = px[x] * c.prob(y, x);
      joint.push_back(p);
      py[y] += p;
    }
  double classical = hx + shannon_entropy(py) - shannon_entropy(joint);

  // quantum side from the channel embedding
  CMatrix rho_x = CMatrix::Zero(c.n_in(), c.n_in());
  for (int x = 0; x < c.n_in(); ++x) rho_x(x, x) = px[x];
  DensityOperator rho(rho_x);
  QuantumOperation n_op = classical_to_quantum(c);
  double quantum = von_neumann_entropy(rho) +
                   entropy_bits(apply(n_op, rho).output) -
                   entropy_exchange(rho, n_op);

  rep.record(-std::abs(classical - quantum),
             "H(X:Y)=" + fmt(classical) + " vs quantum form " + fmt(quantum));
  return rep;
}

QuantumOperation equivalence_map(const ObservedChannel& obs) {
  const int m_count = obs.branch_count();
  std::vector<CMatrix> kraus;
  for (int m = 0; m < m_count; ++m) {
    CMatrix em = CMatrix::Zero(m_count, 1);
    em(m, 0) = 1.0;
    for (const auto& a : obs.branch(m).kraus()) kraus.push_back(tensor(a, em));
  }
  return QuantumOperation(std::move(kraus));
}

CheckReport observed_vs_unobserved(const ObservedChannel& obs, int n_max,
                                   const OptimizerConfig& cfg) {
  CheckReport rep;
  rep.name = "observed_vs_unobserved";
  rep.threshold = 1e-6;
  rep.seed = cfg.seed;
  QuantumOperation total = obs.total();
  for (int n = 1; n <= n_max; ++n) {
    ObservedChannel obs_n = obs.tensor_pow(n);
    QuantumOperation total_n = tensor_pow(total, n);
    OptimizerConfig sub = cfg;
    sub.seed = Rng(cfg.seed).child(300 + n).seed();
    auto un = max_coherent_info(total_n, sub);
    // seeding with the unobserved argmax makes the ordering structural:
    // pointwise, the branch average dominates I(rho, sum_m N_m)
    auto ob = max_avg_coherent_info(obs_n, sub, {un.argmax});
    rep.record((ob.value - un.value) / n,
               "n=" + std::to_string(n) + ": observed=" + fmt(ob.value / n) +
                   " < unobserved=" + fmt(un.value / n));
  }
  return rep;
}

CheckReport equivalence_identity_suite(int trials, uint64_t seed) {
  CheckReport rep;
  rep.name = "equivalence_identity_suite";
  rep.seed = seed;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int d = rng.uniform_int(2, 3);
    ObservedChannel obs = random_observed_channel(d, rng.uniform_int(2, 3), rng);
    DensityOperator rho = random_density(d, rng);
    double avg = observed_avg_coherent_info(obs, rho);
    double via_map = coherent_information(rho, equivalence_map(obs));
    rep.record(-std::abs(avg - via_map),
               "trial " + std::to_string(t) + ": avg=" + fmt(avg) +
                   " vs map=" + fmt(via_map));
  }
  return rep;
}

CheckReport teleportation_gap_check(const OptimizerConfig& cfg) {
  CheckReport rep;
  rep.name = "teleportation_gap";
  rep.threshold = 1e-6;
  rep.seed = cfg.seed;
  ObservedChannel obs = pauli_observed_channel();
  auto unobserved = max_coherent_info(obs.total(), cfg);
  auto observed = max_avg_coherent_info(obs, cfg, {unobserved.argmax});
  rep.record(-std::abs(unobserved.value),
             "unobserved bound " + fmt(unobserved.value) + " != 0");
  rep.record(-std::abs(observed.value - 1.0),
             "observed bound " + fmt(observed.value) + " != 1");
  return rep;
}

CheckReport check_composition_bounds(const QuantumOperation& n1,
                                     const QuantumOperation& n2,
                                     const OptimizerConfig& cfg) {
  if (!n1.is_trace_preserving() || !n2.is_trace_preserving())
    throw Error("check_composition_bounds: channels must be trace-preserving");
  if (n1.dim_out() != n2.dim_in())
    throw Error("check_composition_bounds: dimensions do not compose");
  CheckReport rep;
  rep.name = "composition_bounds";
  rep.threshold = 1e-6;
  rep.seed = cfg.seed;

  const int s = n1.dim_in();
  QuantumOperation composed = compose(n2, n1);
  auto whole = capacity_bound_general(composed, s, 1, cfg);
  double lhs = whole.per_n.front().c_n;
  DensityOperator rho_star(whole.per_n.front().argmax_state);
  QuantumOperation c_star(whole.per_n.front().argmax_encoding_kraus);

  // First factor: at the composed argmax, dropping the second stage can
  // only raise the coherent information (data processing through n2).
  auto first = capacity_bound_general(n1, s, 1, cfg,
                                      {rho_star.matrix()});
  double first_candidate =
      coherent_information(rho_star, compose(n1, c_star));
  double rhs1 = std::max(first.per_n.front().c_n, first_candidate);
  rep.record(rhs1 - lhs,
             "first factor " + fmt(rhs1) + " < composed " + fmt(lhs));

  // Second factor: n1 o C* is an admissible encoding for n2 alone and
  // reproduces the composed value exactly.
  auto second = capacity_bound_general(n2, s, 1, cfg, {rho_star.matrix()});
  double second_candidate =
      coherent_information(rho_star, compose(n2, compose(n1, c_star)));
  double rhs2 = std::max(second.per_n.front().c_n, second_candidate);
  rep.record(rhs2 - lhs,
             "second factor " + fmt(rhs2) + " < composed " + fmt(lhs));
  return rep;
}

}  // namespace qchan
