#include "tobs/fock.hpp"

#include <Eigen/SVD>

namespace tobs {

namespace {

void enumerate_level(int base_dim, int remaining, std::vector<int>& occ,
                     int pos, std::vector<std::vector<int>>& out) {
  if (pos == base_dim - 1) {
    occ[pos] = remaining;
    out.push_back(occ);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    occ[pos] = k;
    enumerate_level(base_dim, remaining - k, occ, pos + 1, out);
  }
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double inv_sqrt_factorials(const std::vector<int>& occ) {
  double acc = 0.0;
  for (const int a : occ) acc += log_factorial(a);
  return std::exp(-0.5 * acc);
}

}  // namespace

FockSpec make_fock(int base_dim, int n_max) {
  if (base_dim < 1) throw std::invalid_argument("make_fock: base_dim must be >= 1");
  if (n_max < 0) throw std::invalid_argument("make_fock: n_max must be >= 0");
  FockSpec f;
  f.base_dim = base_dim;
  f.n_max = n_max;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<int> occ(base_dim, 0);
    std::vector<std::vector<int>> level;
    enumerate_level(base_dim, n, occ, 0, level);
    for (auto& a : level) {
      f.lookup.emplace(a, f.dim());
      f.basis.push_back(std::move(a));
      f.level.push_back(n);
    }
  }
  return f;
}

VecC exp_vector(const FockSpec& f, const VecC& u) {
  if (u.size() != f.base_dim)
    throw std::invalid_argument("exp_vector: base dimension mismatch");
  VecC v(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    cd c = 1.0;
    for (int j = 0; j < f.base_dim; ++j)
      for (int rep = 0; rep < f.basis[i][j]; ++rep) c *= u[j];
    v[i] = c * inv_sqrt_factorials(f.basis[i]);
  }
  return v;
}

MatC creation(const FockSpec& f, const VecC& u) {
  if (u.size() != f.base_dim)
    throw std::invalid_argument("creation: base dimension mismatch");
  MatC a = MatC::Zero(f.dim(), f.dim());
  std::vector<int> target;
  for (int i = 0; i < f.dim(); ++i) {
    if (f.level[i] == f.n_max) continue;  // overflow truncated
    for (int j = 0; j < f.base_dim; ++j) {
      target = f.basis[i];
      target[j] += 1;
      a(f.index_of(target), i) += u[j] * std::sqrt(f.basis[i][j] + 1.0);
    }
  }
  return a;
}

MatC annihilation(const FockSpec& f, const VecC& u) {
  return creation(f, u).adjoint();
}

MatC conservation(const FockSpec& f, const MatC& k) {
  if (k.rows() != f.base_dim || k.cols() != f.base_dim)
    throw std::invalid_argument("conservation: base dimension mismatch");
  MatC a = MatC::Zero(f.dim(), f.dim());
  std::vector<int> target;
  for (int i = 0; i < f.dim(); ++i) {
    for (int p = 0; p < f.base_dim; ++p) {
      if (f.basis[i][p] == 0) continue;
      for (int q = 0; q < f.base_dim; ++q) {
        target = f.basis[i];
        target[p] -= 1;
        target[q] += 1;
        a(f.index_of(target), i) +=
            k(q, p) * std::sqrt(static_cast<double>(f.basis[i][p])) *
            std::sqrt(static_cast<double>(target[q]));
      }
    }
  }
  return a;
}

cd permanent(const MatC& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw std::invalid_argument("permanent: matrix not square");
  if (n == 0) return 1.0;
  if (n > 20) throw std::invalid_argument("permanent: dimension too large");
  cd total = 0.0;
  for (unsigned s = 1; s < (1u << n); ++s) {
    cd prod = 1.0;
    for (int r = 0; r < n; ++r) {
      cd row = 0.0;
      for (int c = 0; c < n; ++c)
        if (s >> c & 1u) row += m(r, c);
      prod *= row;
    }
    const int popcount = __builtin_popcount(s);
    total += ((n - popcount) % 2 == 0 ? 1.0 : -1.0) * prod;
  }
  return total;
}

MatC second_quantization(const FockSpec& f, const MatC& c) {
  if (c.rows() != f.base_dim || c.cols() != f.base_dim)
    throw std::invalid_argument("second_quantization: base dimension mismatch");
  if (op_norm(c) > 1.0 + 1e-10)
    throw std::invalid_argument("second_quantization: operator must be a contraction");
  MatC g = MatC::Zero(f.dim(), f.dim());
  std::vector<std::vector<int>> rows_of(f.dim()), cols_of(f.dim());
  for (int i = 0; i < f.dim(); ++i)
    for (int j = 0; j < f.base_dim; ++j)
      for (int rep = 0; rep < f.basis[i][j]; ++rep) rows_of[i].push_back(j);
  for (int i = 0; i < f.dim(); ++i) cols_of[i] = rows_of[i];

  for (int col = 0; col < f.dim(); ++col) {
    const double wc = inv_sqrt_factorials(f.basis[col]);
    for (int row = 0; row < f.dim(); ++row) {
      if (f.level[row] != f.level[col]) continue;
      const int n = f.level[col];
      if (n == 0) {
        g(row, col) = 1.0;
        continue;
      }
      MatC sub(n, n);
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          sub(r, s) = c(rows_of[row][r], cols_of[col][s]);
      g(row, col) = permanent(sub) * wc * inv_sqrt_factorials(f.basis[row]);
    }
  }
  return g;
}

MatC level_projector(const FockSpec& f, int max_level) {
  MatC p = MatC::Zero(f.dim(), f.dim());
  for (int i = 0; i < f.dim(); ++i)
    if (f.level[i] <= max_level) p(i, i) = 1.0;
  return p;
}

Martingale make_martingale(const TimeObservable& obs, const VecC& generator) {
  if (generator.size() != obs.dim())
    throw std::invalid_argument("make_martingale: generator dimension mismatch");
  return Martingale{obs, generator};
}

VecC martingale_at(const Martingale& m, double t) {
  if (t < 0.0) throw std::invalid_argument("martingale_at: need t >= 0");
  const SpectralInterval window{1.0, 1.0 + t, true};
  return spectral_projector(m.obs, window) * m.generator;
}

cd bracket_measure(const Martingale& a, const Martingale& b, double t) {
  if (a.obs.dim() != b.obs.dim() ||
      (a.obs.inverse_op.m - b.obs.inverse_op.m).norm() != 0.0)
    throw std::invalid_argument("bracket_measure: martingales ride different clocks");
  const VecC ma = martingale_at(a, t);
  const VecC mb = martingale_at(b, t);
  return space_inner(a.obs.space(), ma, mb);
}

MatC hat_operator(const MatC& k, const OperatorMatrix& omega) {
  if (k.rows() != omega.domain.dim || k.cols() != omega.domain.dim)
    throw std::invalid_argument("hat_operator: operator does not act on the domain");
  const MatC t_inv = (adjoint(omega).m * omega.m).eval();
  const double comm = (k * t_inv - t_inv * k).norm();
  if (comm > 1e-8 * std::max(1.0, k.norm()))
    throw std::invalid_argument(
        "hat_operator: operator does not commute with the spectral family");
  Eigen::BDCSVD<MatC> svd(omega.m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const MatC x = svd.matrixU() * svd.matrixV().adjoint();
  return x * k * x.adjoint();
}

}  // namespace tobs
