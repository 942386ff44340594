#pragma once

#include "tobs/timeobs.hpp"

#include <map>
#include <vector>

namespace tobs {

// Symmetric Fock space over C^{base_dim} truncated at total occupation n_max.
// Basis vectors are occupation multi-indices grouped by level; inner products
// on the truncated space are the plain coefficient inner products.
struct FockSpec {
  int base_dim = 0;
  int n_max = 0;
  std::vector<std::vector<int>> basis;
  std::vector<int> level;
  std::map<std::vector<int>, int> lookup;

  int dim() const { return static_cast<int>(basis.size()); }
  int index_of(const std::vector<int>& occ) const {
    auto it = lookup.find(occ);
    return it == lookup.end() ? -1 : it->second;
  }
};

FockSpec make_fock(int base_dim, int n_max);

// Truncated exponential vector with coefficients prod_i u_i^{a_i}/sqrt(a_i!).
VecC exp_vector(const FockSpec& f, const VecC& u);

// Creation operator a†(u), linear in u; occupation overflow past n_max is
// truncated away.  annihilation(u) = creation(u)† is antilinear in u, and the
// commutator [a(u), a†(v)] = <u,v> holds on levels <= n_max - 1.
MatC creation(const FockSpec& f, const VecC& u);
MatC annihilation(const FockSpec& f, const VecC& u);

// Differential second quantization dGamma(K) = sum_{ij} K_ij a†_i a_j.
MatC conservation(const FockSpec& f, const MatC& k);

// Second quantization Gamma(C) via the permanent formula
//   <beta| Gamma(C) |alpha> = per(C[beta, alpha]) / sqrt(beta! alpha!).
MatC second_quantization(const FockSpec& f, const MatC& c);

// Orthogonal projection onto levels <= max_level (used to state truncation-
// sensitive identities away from the top level).
MatC level_projector(const FockSpec& f, int max_level);

// Permanent of a small square matrix (Ryser), dimension <= 20.
cd permanent(const MatC& m);

// Operator-valued martingale m_t = xi([1, 1+t]) v driven by the spectral
// family of a time observable.
struct Martingale {
  TimeObservable obs;
  VecC generator;
};
Martingale make_martingale(const TimeObservable& obs, const VecC& generator);
VecC martingale_at(const Martingale& m, double t);

// Bracket measure of the window [0, t]: <m_t, m'_t> in the observable's
// space.  Both martingales must ride the same observable.
cd bracket_measure(const Martingale& a, const Martingale& b, double t);

// Transport of a base-space operator through an intertwining map omega:
//   K_hat = X K X*  with  X = U W*  from the thin SVD  omega = U S W*.
// Requires [K, omega* omega] ~= 0; then ||K_hat|| = ||K||, K_hat commutes
// with the hardy-side spectral family, and omega* K_hat = K omega*.  The
// result is supported on the closure of ran(omega).
MatC hat_operator(const MatC& k, const OperatorMatrix& omega);

}  // namespace tobs
