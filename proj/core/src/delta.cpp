#include "qdyn/delta.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdyn::modules {

DeltaCurrent E_current(const EvalModuleSpec& spec, int zvar) {
  // E(u) v_i = [(l+h+2)/2]_q delta(q^{2u} / q^{2a+h+1}) e^{2Q} v_{i-1}
  const int l = spec.l;
  DeltaCurrent d(l + 1, zvar);
  for (int i = 1; i <= l; ++i) {
    int h = hwt(l, i);
    Rat c = bracket(e_halves(l + h + 2)) / bracket(e_const(1));
    Support sup{Monomial::gen(spec.eval_var, 2), 2 * (h + 1), +1};
    d.ent[i - 1][i].push_back({c, sup, +2});
  }
  return d;
}

DeltaCurrent F_current(const EvalModuleSpec& spec, int zvar) {
  // F(u) v_i = [(l-h+2)/2]_q delta(q^{2u} / q^{2a+h-1}) v_{i+1}
  const int l = spec.l;
  DeltaCurrent d(l + 1, zvar);
  for (int i = 0; i < l; ++i) {
    int h = hwt(l, i);
    Rat c = bracket(e_halves(l - h + 2)) / bracket(e_const(1));
    Support sup{Monomial::gen(spec.eval_var, 2), 2 * (h - 1), +1};
    d.ent[i + 1][i].push_back({c, sup, 0});
  }
  return d;
}

Rat delta_substitute(const Rat& r, int zvar, const Support& sup) {
  // zvar occurs only in even powers; zvar^2 -> sgn * s^{sup.s} * sup.m
  // Realized as zvar -> Y with Y^2 = support: substitute on halved exponents.
  Poly num = r.num();
  auto subst_poly = [&](const Poly& p) {
    PolyBuilder b;
    for (const auto& [m, c] : p.terms()) {
      int k = m.e[zvar];
      if (k % 2 != 0) throw std::domain_error("delta_substitute: odd power of the delta variable");
      Monomial base = m;
      base.e[zvar] = 0;
      int half = k / 2;
      SPoly cc = c.mul_s(sup.s * half);
      if (sup.sgn < 0 && (half % 2 != 0)) cc = -cc;
      b.add(base * sup.m.pow(half), cc);
    }
    return b.take();
  };
  Rat out(subst_poly(num));
  for (const auto& f : r.den()) {
    Poly g = subst_poly(f.p);
    if (g.is_zero())
      throw std::domain_error("delta_substitute: denominator vanishes on the delta support");
    out = out / Rat(g.pow(f.e));
  }
  return out;
}

DeltaCurrent expansion_difference(const ModuleOperator& op, int zvar) {
  DeltaCurrent d(op.dim, zvar);
  for (int i = 0; i < op.dim; ++i)
    for (int j = 0; j < op.dim; ++j)
      for (const auto& comp : op.ent[i][j]) {
        Rat reduced = comp.c;
        if (!comp.phi.empty()) {
          auto [mult, ok] = phi_reduce(comp.phi);
          if (!ok) throw std::domain_error("expansion_difference: irreducible phi factors");
          reduced = reduced * mult;
        }
        // partial fractions in zvar: every den factor containing zvar must be
        // a binomial with zvar-exponents {0,2} after canonicalization
        const Rat r = reduced;
        for (size_t fi = 0; fi < r.den().size(); ++fi) {
          const auto& f = r.den()[fi];
          if (!f.p.depends_on(zvar)) continue;
          if (f.e != 1) throw std::domain_error("expansion_difference: higher-order pole");
          if (f.p.term_count() != 2)
            throw std::domain_error("expansion_difference: non-binomial pole factor");
          // f = t_a + t_b with zvar-exponents 0 and 2 (canonical form)
          const auto& t0 = f.p.terms()[0];
          const auto& t1 = f.p.terms()[1];
          const Poly::Term *ta = &t0, *tb = &t1;
          if (ta->first.e[zvar] != 0) std::swap(ta, tb);
          if (ta->first.e[zvar] != 0 || tb->first.e[zvar] != 2)
            throw std::domain_error("expansion_difference: unsupported pole in " + f.p.str());
          if (ta->second.size() != 1 || tb->second.size() != 1)
            throw std::domain_error("expansion_difference: non-monomial binomial coefficients");
          // f = ta (1 - z^2/z0) with z0 = -ta/tb
          Support sup;
          Monomial mb = tb->first;
          mb.e[zvar] = 0;
          sup.m = ta->first * mb.inv();
          sup.s = ta->second.lo() - tb->second.lo();
          mpz_class ca = ta->second.leading(), cb = tb->second.leading();
          if (ca != 1 && ca != -1) throw std::domain_error("expansion_difference: non-unit coefficient");
          if (cb != 1 && cb != -1) throw std::domain_error("expansion_difference: non-unit coefficient");
          sup.sgn = -static_cast<int>(ca.get_si() * cb.get_si());
          // residue term: -(r * f) |_{z^2 = z0} / ta(z0) ... assembled as
          // -(num / (ta * other factors)) at the support
          Rat rest(r.num());
          for (size_t gj = 0; gj < r.den().size(); ++gj) {
            if (gj == fi) continue;
            const auto& g = r.den()[gj];
            rest = rest / Rat(g.p.pow(g.e));
          }
          rest = rest / Rat(Poly::monomial(ta->first, SPoly::term(ca, ta->second.lo())));
          Rat val = delta_substitute(rest, zvar, sup);
          d.ent[i][j].push_back({-val, sup, comp.qshift, {}});
        }
      }
  return d;
}

namespace {
void sort_terms(std::vector<DTerm>& v) {
  std::sort(v.begin(), v.end(), [](const DTerm& a, const DTerm& b) {
    if (a.sup != b.sup) return a.sup < b.sup;
    return a.qshift < b.qshift;
  });
}
}  // namespace

DeltaCurrent compose(const ModuleOperator& a, const DeltaCurrent& d) {
  DeltaCurrent r(d.dim, d.zvar);
  for (int i = 0; i < d.dim; ++i)
    for (int k = 0; k < d.dim; ++k)
      for (const auto& ac : a.ent[i][k])
        for (int j = 0; j < d.dim; ++j)
          for (const auto& dt : d.ent[k][j]) {
            Rat c = ac.c * dt.coef.shift_p(ac.qshift);
            // the operator may depend on the delta variable
            if (c.depends_on(d.zvar)) c = delta_substitute(c, d.zvar, dt.sup);
            r.ent[i][j].push_back({c, dt.sup, ac.qshift + dt.qshift, phi_mul(ac.phi, dt.phi)});
          }
  return r;
}

DeltaCurrent compose(const DeltaCurrent& d, const ModuleOperator& a) {
  DeltaCurrent r(d.dim, d.zvar);
  for (int i = 0; i < d.dim; ++i)
    for (int k = 0; k < d.dim; ++k)
      for (const auto& dt : d.ent[i][k])
        for (int j = 0; j < d.dim; ++j)
          for (const auto& ac : a.ent[k][j]) {
            Rat c = ac.c.shift_p(dt.qshift);
            if (c.depends_on(d.zvar)) c = delta_substitute(c, d.zvar, dt.sup);
            r.ent[i][j].push_back({dt.coef * c, dt.sup, ac.qshift + dt.qshift, phi_mul(dt.phi, ac.phi)});
          }
  return r;
}

DeltaCurrent dc_scale(const DeltaCurrent& d, const Rat& f) {
  DeltaCurrent r = d;
  for (auto& row : r.ent)
    for (auto& e : row)
      for (auto& t : e) {
        Rat c = f;
        if (c.depends_on(d.zvar)) c = delta_substitute(c, d.zvar, t.sup);
        t.coef = t.coef * c;
      }
  return r;
}

DeltaCurrent dc_sub(const DeltaCurrent& a, const DeltaCurrent& b) {
  if (a.dim != b.dim || a.zvar != b.zvar) throw std::invalid_argument("dc_sub: mismatch");
  DeltaCurrent r = a;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (const auto& t : b.ent[i][j]) r.ent[i][j].push_back({-t.coef, t.sup, t.qshift, t.phi});
  return r;
}

bool dc_is_zero(const DeltaCurrent& d) { return !dc_diff_witness(d, DeltaCurrent(d.dim, d.zvar)); }

std::optional<std::string> dc_diff_witness(const DeltaCurrent& a, const DeltaCurrent& b) {
  if (a.dim != b.dim || a.zvar != b.zvar) return "shape mismatch";
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      std::vector<DTerm> all = a.ent[i][j];
      for (const auto& t : b.ent[i][j]) all.push_back({-t.coef, t.sup, t.qshift, t.phi});
      sort_terms(all);
      size_t t = 0;
      while (t < all.size()) {
        size_t u = t;
        Rat sum(0);
        while (u < all.size() && all[u].sup == all[t].sup && all[u].qshift == all[t].qshift) {
          if (all[u].phi == all[t].phi) {
            sum += all[u].coef;
          } else {
            auto [mult, ok] = phi_reduce(phi_mul(all[u].phi, phi_neg(all[t].phi)));
            if (!ok)
              return "entry (" + std::to_string(i) + "," + std::to_string(j) +
                     ") has incompatible phi factors";
            sum += all[u].coef * mult;
          }
          ++u;
        }
        if (!sum.is_zero())
          return "entry (" + std::to_string(i) + "," + std::to_string(j) +
                 ") support s^" + std::to_string(all[t].sup.s) + "*" + all[t].sup.m.str();
        t = u;
      }
    }
  return std::nullopt;
}

DeltaCurrent2 compose2(const DeltaCurrent& a, const DeltaCurrent& b) {
  if (a.dim != b.dim) throw std::invalid_argument("compose2: dimension mismatch");
  DeltaCurrent2 r(a.dim);
  r.zvar = a.zvar;
  r.wvar = b.zvar;
  for (int i = 0; i < a.dim; ++i)
    for (int k = 0; k < a.dim; ++k)
      for (const auto& at : a.ent[i][k])
        for (int j = 0; j < a.dim; ++j)
          for (const auto& bt : b.ent[k][j]) {
            Rat c = at.coef * bt.coef.shift_p(at.qshift);
            r.ent[i][j].push_back({c, at.sup, bt.sup, at.qshift + bt.qshift});
          }
  return r;
}

std::optional<std::string> dc2_diff_witness(const DeltaCurrent2& a, const DeltaCurrent2& b) {
  if (a.dim != b.dim) return "shape mismatch";
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      std::vector<DTerm2> all = a.ent[i][j];
      for (const auto& t : b.ent[i][j]) all.push_back({-t.coef, t.sup_z, t.sup_w, t.qshift});
      std::sort(all.begin(), all.end(), [](const DTerm2& x, const DTerm2& y) {
        if (x.sup_z != y.sup_z) return x.sup_z < y.sup_z;
        if (x.sup_w != y.sup_w) return x.sup_w < y.sup_w;
        return x.qshift < y.qshift;
      });
      size_t t = 0;
      while (t < all.size()) {
        size_t u = t;
        Rat sum(0);
        while (u < all.size() && all[u].sup_z == all[t].sup_z && all[u].sup_w == all[t].sup_w &&
               all[u].qshift == all[t].qshift) {
          sum += all[u].coef;
          ++u;
        }
        if (!sum.is_zero())
          return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") two-variable support";
        t = u;
      }
    }
  return std::nullopt;
}

}  // namespace qdyn::modules
