#pragma once

#include <vector>

#include "qdyn/numeric.hpp"
#include "qdyn/report.hpp"

namespace qdyn::series {

// Jacobi theta machinery, numeric backend only.  All infinite products are
// truncated at N factors; the geometric tail estimate is available on request.

// Theta_p(z) = (z; p)_inf (p/z; p)_inf (p; p)_inf
Complex theta_big(const Complex& z, const Complex& p, int N, Real* tail = nullptr);

// theta(u) = q^{u^2/r - u} / (p;p)_inf^3 * Theta_p(q^{2u}),  p = q^{2r}.
// Real spectral arguments; q in (0,1), 0 < p < 1.
Real theta_small(const Real& u, const Real& q, const Real& p, int N);

// trigonometric core of theta(u): the same structural prefactor on 1 - q^{2u},
// with the elliptic tail factors (pq^{2u};p)(pq^{-2u};p)(p;p) dropped.  This is
// the normalization in which theta(u) -> [u] is fast in p, and the one the
// additive theta factorials below must use for the additive form to equal the
// multiplicative form exactly under the balancing condition.
Real theta_core(const Real& u, const Real& q, const Real& p);

// ascending theta factorial theta(x)_k = theta(x) theta(x+1) ... theta(x+k-1),
// built on theta_core (see above; validated by the balanced-equality check)
Real theta_fact(const Real& x, const Real& q, const Real& p, int N, int k);

// very well-poised theta hypergeometric series, multiplicative form
Complex elliptic_v_mult(const Complex& a, const std::vector<Complex>& bs, const Complex& q2,
                        const Complex& p, int N, int terms);

// additive form: sum_k theta(u0+2k)/theta(u0) prod_{i=0}^{r-4} theta(u_i)_k / theta(u0+1-u_i)_k
// (the i = 0 slot, u_0 itself, supplies the (a;q^2)_k/(q^2;q^2)_k pair)
Real additive_v(const Real& u0, const std::vector<Real>& us, const Real& q, const Real& p, int N,
                int terms);

// sum_{i>=1} u_i = (r-7)/2 + (r-5)/2 u0
bool v_balanced(const Real& u0, const std::vector<Real>& us, double tol);

}  // namespace qdyn::series
