#include "qdyn/evalmodule.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdyn::modules {

PhiBag phi_mul(const PhiBag& a, const PhiBag& b) {
  PhiBag r = a;
  for (const auto& [k, e] : b) {
    int ne = (r.count(k) ? r[k] : 0) + e;
    if (ne == 0)
      r.erase(k);
    else
      r[k] = ne;
  }
  return r;
}

PhiBag phi_neg(const PhiBag& a) {
  PhiBag r;
  for (const auto& [k, e] : a) r[k] = -e;
  return r;
}

std::string phi_str(const PhiBag& b) {
  std::string s;
  for (const auto& [k, e] : b) {
    if (!s.empty()) s += " ";
    s += "phi";
    s += (k.sign > 0 ? "+" : "-");
    s += "[l=" + std::to_string(k.level) + "," + var_name(k.eval_var) + "," + var_name(k.spec_var) +
         ",off=" + std::to_string(k.offset) + "]^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::pair<Rat, bool> phi_reduce(const PhiBag& bag) {
  PhiBag b = bag;
  Rat mult(1);
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto it = b.begin(); it != b.end() && !progress; ++it) {
      PhiKey up = it->first;
      PhiKey down = up;
      down.offset -= 1;
      auto jt = b.find(down);
      if (jt == b.end()) continue;
      int eu = it->second, ed = jt->second;
      if ((eu > 0 && ed > 0) || (eu < 0 && ed < 0)) {
        // phi(x)phi(x-1) = [x - (l+1)/2][x + (l+1)/2] with x = u + off - evalpt
        Exponent x = Exponent::var(up.spec_var) - Exponent::var(up.eval_var) + up.offset;
        Rat pair = bracket(x - e_halves(up.level + 1)) * bracket(x + e_halves(up.level + 1));
        int step = eu > 0 ? 1 : -1;
        mult = step > 0 ? mult * pair : mult / pair;
        it->second -= step;
        jt->second -= step;
        if (it->second == 0) b.erase(up);
        if (b.count(down) && b[down] == 0) b.erase(down);
        progress = true;
      }
    }
  }
  return {mult, b.empty()};
}

ModuleOperator ModuleOperator::identity(int d) {
  ModuleOperator m(d);
  for (int i = 0; i < d; ++i) m.ent[i][i].push_back({Rat(1), {}, 0});
  return m;
}

void ModuleOperator::add_component(int dst, int src, Component comp) {
  if (comp.c.is_zero()) return;
  ent[dst][src].push_back(std::move(comp));
}

void ModuleOperator::canonicalize() {
  for (auto& row : ent)
    for (auto& e : row) {
      std::sort(e.begin(), e.end(), [](const Component& a, const Component& b) {
        if (a.qshift != b.qshift) return a.qshift < b.qshift;
        return a.phi < b.phi;
      });
      Entry out;
      for (auto& c : e) {
        if (!out.empty() && out.back().qshift == c.qshift && out.back().phi == c.phi)
          out.back().c += c.c;
        else
          out.push_back(std::move(c));
      }
      out.erase(std::remove_if(out.begin(), out.end(),
                               [](const Component& c) { return c.c.is_zero(); }),
                out.end());
      e = std::move(out);
    }
}

ModuleOperator ModuleOperator::operator+(const ModuleOperator& o) const {
  if (dim != o.dim) throw std::invalid_argument("ModuleOperator: dimension mismatch");
  ModuleOperator r = *this;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (const auto& c : o.ent[i][j]) r.ent[i][j].push_back(c);
  r.canonicalize();
  return r;
}

ModuleOperator ModuleOperator::operator-(const ModuleOperator& o) const {
  if (dim != o.dim) throw std::invalid_argument("ModuleOperator: dimension mismatch");
  ModuleOperator r = *this;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (const auto& c : o.ent[i][j]) r.ent[i][j].push_back({-c.c, c.phi, c.qshift});
  r.canonicalize();
  return r;
}

ModuleOperator ModuleOperator::scaled(const Rat& f) const {
  ModuleOperator r = *this;
  for (auto& row : r.ent)
    for (auto& e : row)
      for (auto& c : e) c.c = c.c * f;
  return r;
}

ModuleOperator ModuleOperator::operator*(const ModuleOperator& o) const {
  if (dim != o.dim) throw std::invalid_argument("ModuleOperator: dimension mismatch");
  ModuleOperator r(dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      if (ent[i][k].empty()) continue;
      for (int j = 0; j < dim; ++j) {
        if (o.ent[k][j].empty()) continue;
        for (const auto& a : ent[i][k])
          for (const auto& b : o.ent[k][j]) {
            // (A B) f(P) v = a.c(P) b.c(P+a.q) f(P+a.q+b.q) v'
            Component c;
            c.c = a.c * b.c.shift_p(a.qshift);
            c.phi = phi_mul(a.phi, b.phi);
            c.qshift = a.qshift + b.qshift;
            r.ent[i][j].push_back(std::move(c));
          }
      }
    }
  r.canonicalize();
  return r;
}

ModuleOperator ModuleOperator::inverse_diagonal() const {
  ModuleOperator r(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      if (!ent[i][j].empty()) throw std::invalid_argument("inverse_diagonal: not diagonal");
    }
    if (ent[i][i].size() != 1) throw std::invalid_argument("inverse_diagonal: not a single component");
    const Component& c = ent[i][i][0];
    // (c(P) e^{kQ})^{-1} = c(P-k)^{-1} e^{-kQ}
    Component inv;
    inv.qshift = -c.qshift;
    inv.c = c.c.shift_p(-c.qshift).inverse();
    inv.phi = phi_neg(c.phi);
    r.ent[i][i].push_back(std::move(inv));
  }
  return r;
}

bool ModuleOperator::is_zero() const {
  for (const auto& row : ent)
    for (const auto& e : row)
      if (!e.empty()) return false;
  return true;
}

ModuleVec basis_vec(int dim, int i) {
  ModuleVec v(dim);
  v[i].c = Rat(1);
  return v;
}

ModuleVec apply(const ModuleOperator& op, const ModuleVec& v) {
  ModuleVec r(op.dim);
  std::vector<std::vector<Component>> acc(op.dim);
  for (int j = 0; j < op.dim; ++j) {
    if (v[j].c.is_zero()) continue;
    for (int i = 0; i < op.dim; ++i) {
      for (const auto& a : op.ent[i][j]) {
        Component c;
        c.c = a.c * v[j].c.shift_p(a.qshift);
        c.phi = phi_mul(a.phi, v[j].phi);
        c.qshift = 0;
        acc[i].push_back(std::move(c));
      }
    }
  }
  for (int i = 0; i < op.dim; ++i) {
    if (acc[i].empty()) continue;
    std::sort(acc[i].begin(), acc[i].end(),
              [](const Component& a, const Component& b) { return a.phi < b.phi; });
    VecEntry out{acc[i][0].c, acc[i][0].phi};
    for (size_t t = 1; t < acc[i].size(); ++t) {
      if (acc[i][t].phi == out.phi) {
        out.c += acc[i][t].c;
      } else {
        auto [mult, ok] = phi_reduce(phi_mul(acc[i][t].phi, phi_neg(out.phi)));
        if (!ok)
          throw std::domain_error("apply: incompatible phi monomials in one vector entry: " +
                                  phi_str(acc[i][t].phi) + " vs " + phi_str(out.phi));
        out.c += acc[i][t].c * mult;
      }
    }
    if (!out.c.is_zero()) r[i] = out;
  }
  return r;
}

bool vec_is_zero(const ModuleVec& v) {
  for (const auto& e : v)
    if (!e.c.is_zero()) return false;
  return true;
}

std::optional<std::string> op_diff_witness(const ModuleOperator& a, const ModuleOperator& b) {
  if (a.dim != b.dim) return "dimension mismatch";
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      auto residual_vanishes = [&](const Entry& x, const Entry& y) -> bool {
        std::vector<Component> all = x;
        for (const auto& c : y) all.push_back({-c.c, c.phi, c.qshift});
        std::sort(all.begin(), all.end(), [](const Component& p, const Component& q) {
          if (p.qshift != q.qshift) return p.qshift < q.qshift;
          return p.phi < q.phi;
        });
        size_t t = 0;
        while (t < all.size()) {
          size_t u = t;
          while (u < all.size() && all[u].qshift == all[t].qshift) ++u;
          Rat sum(0);
          for (size_t w = t; w < u; ++w) {
            if (all[w].phi == all[t].phi) {
              sum += all[w].c;
            } else {
              auto [mult, ok] = phi_reduce(phi_mul(all[w].phi, phi_neg(all[t].phi)));
              if (!ok) return false;
              sum += all[w].c * mult;
            }
          }
          if (!sum.is_zero()) return false;
          t = u;
        }
        return true;
      };
      if (!residual_vanishes(a.ent[i][j], b.ent[i][j]))
        return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs";
    }
  return std::nullopt;
}

ModuleOperator mult_op(int dim, const Rat& f) {
  ModuleOperator r(dim);
  for (int i = 0; i < dim; ++i) r.ent[i][i].push_back({f, {}, 0});
  return r;
}

ModuleOperator mult_op_ph(int l, const Rat& f) {
  ModuleOperator r(l + 1);
  for (int i = 0; i <= l; ++i) {
    int h = hwt(l, i);
    r.ent[i][i].push_back({f.subst(VAR_PI, Monomial::gen(VAR_PI), 2 * h), {}, 0});
  }
  return r;
}

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

namespace {
PhiBag phi_pow(const EvalModuleSpec& spec, int zvar, int off, int e) {
  PhiBag b;
  if (e != 0) b[PhiKey{spec.sign, spec.l, spec.eval_var, zvar, off}] = e;
  return b;
}
}  // namespace

ModuleOperator L_op(const EvalModuleSpec& spec, int row, int col, int zvar, int off) {
  const int l = spec.l;
  ModuleOperator r(l + 1);
  Exponent x = Exponent::var(zvar) + off - Exponent::var(spec.eval_var);
  Exponent P = e_P();
  PhiBag phin = spec.phi_free ? PhiBag{} : phi_pow(spec, zvar, off, -1);
  const bool plus = spec.sign > 0;
  for (int i = 0; i <= l; ++i) {
    int h = hwt(l, i);
    if (row == 1 && col == 1) {
      Exponent arg = plus ? x + e_halves(h + 1) : -x - e_halves(h + 1);
      Rat c = bracket(arg) * bracket(P - e_halves(l - h)) * bracket(P + e_halves(l + h + 2)) *
              bracket_inv(P) * bracket_inv(P + h + 1);
      r.add_component(i, i, {plus ? -c : c, phin, +1});
    } else if (row == 1 && col == 2) {
      if (i + 1 <= l) {
        Exponent arg = plus ? x + e_halves(h - 1) + P : -x - e_halves(h - 1) - P;
        Rat c = bracket(arg) * bracket(e_halves(l - h + 2)) * bracket_inv(P + h - 1);
        r.add_component(i + 1, i, {plus ? -c : c, phin, -1});
      }
    } else if (row == 2 && col == 1) {
      if (i - 1 >= 0) {
        Exponent arg = plus ? x - e_halves(h + 1) - P : -x + e_halves(h + 1) + P;
        Rat c = bracket(arg) * bracket(e_halves(l + h + 2)) * bracket_inv(P);
        r.add_component(i - 1, i, {plus ? c : -c, phin, +1});
      }
    } else if (row == 2 && col == 2) {
      Exponent arg = plus ? x - e_halves(h - 1) : -x + e_halves(h - 1);
      r.add_component(i, i, {plus ? -bracket(arg) : bracket(arg), phin, -1});
    } else {
      throw std::invalid_argument("L_op: row/col must be 1 or 2");
    }
  }
  return r;
}

ModuleOperator K1_op(const EvalModuleSpec& spec, int zvar, int off) {
  // K1 = -phi(x-1) / [x-(h+1)/2] e^{Q}  (the rho prefactor absorbed into phi)
  const int l = spec.l;
  ModuleOperator r(l + 1);
  Exponent x = Exponent::var(zvar) + off - Exponent::var(spec.eval_var);
  for (int i = 0; i <= l; ++i) {
    int h = hwt(l, i);
    Rat c = -bracket_inv(x - e_halves(h + 1));
    r.add_component(i, i, {c, phi_pow(spec, zvar, off - 1, +1), +1});
  }
  return r;
}

ModuleOperator K2_op(const EvalModuleSpec& spec, int zvar, int off) {
  // K2 = -[x-(h-1)/2] / phi(x) e^{-Q}
  const int l = spec.l;
  ModuleOperator r(l + 1);
  Exponent x = Exponent::var(zvar) + off - Exponent::var(spec.eval_var);
  for (int i = 0; i <= l; ++i) {
    int h = hwt(l, i);
    r.add_component(i, i, {-bracket(x - e_halves(h - 1)), phi_pow(spec, zvar, off, -1), -1});
  }
  return r;
}

ModuleOperator E_half_op(const EvalModuleSpec& spec, int zvar, int off) {
  // E^+ = -e^Q S^+ [x-(h+1)/2-P][(l+h+2)/2] / ([x-(h+1)/2][P]) e^Q, normal
  // ordered to coefficient(P+1) e^{2Q}.  E^- carries identical rational data;
  // the +- distinction is the expansion side and lives in the delta calculus.
  const int l = spec.l;
  ModuleOperator r(l + 1);
  Exponent x = Exponent::var(zvar) + off - Exponent::var(spec.eval_var);
  Exponent P = e_P();
  for (int i = 1; i <= l; ++i) {
    int h = hwt(l, i);
    Rat c = -(bracket(x - e_halves(h + 1) - (P + 1)) * bracket(e_halves(l + h + 2)) *
              bracket_inv(x - e_halves(h + 1)) * bracket_inv(P + 1));
    r.add_component(i - 1, i, {c, {}, +2});
  }
  return r;
}

ModuleOperator F_half_op(const EvalModuleSpec& spec, int zvar, int off) {
  // F^+ = S^- [x+(h-1)/2+P][(l-h+2)/2] / ([x-(h-1)/2][P+h-1])
  const int l = spec.l;
  ModuleOperator r(l + 1);
  Exponent x = Exponent::var(zvar) + off - Exponent::var(spec.eval_var);
  Exponent P = e_P();
  for (int i = 0; i < l; ++i) {
    int h = hwt(l, i);
    Rat c = bracket(x + e_halves(h - 1) + P) * bracket(e_halves(l - h + 2)) *
            bracket_inv(x - e_halves(h - 1)) * bracket_inv(P + h - 1);
    r.add_component(i + 1, i, {c, {}, 0});
  }
  return r;
}

ModuleOperator H_op(const EvalModuleSpec& spec, int zvar, int off) {
  return K1_op(spec, zvar, off) * K2_op(spec, zvar, off).inverse_diagonal();
}

// ---------------------------------------------------------------------------
// non-dynamical loop action (evaluation-module definition; oracle data)
// ---------------------------------------------------------------------------

Rat LoopAction::qh(int i) const { return Rat(Poly::s_pow(2 * hwt(l, i))); }

Rat LoopAction::a_n(int n, int i) const {
  if (n == 0) throw std::invalid_argument("a_n: n != 0");
  // (w^n/n) * ((q^n+q^{-n}) q^{nh} - (q^{(l+1)n}+q^{-(l+1)n})) / (q-q^{-1})
  int h = hwt(l, i);
  SPoly core = SPoly::s_power(2 * (n + n * h)) + SPoly::s_power(2 * (-n + n * h)) -
               SPoly::s_power(2 * (l + 1) * n) - SPoly::s_power(-2 * (l + 1) * n);
  Poly wn = Poly::monomial(Monomial::gen(eval_var, 2 * n));
  Rat denom = Rat(Poly::constant(n)) * Rat(Poly::s_pow(2) - Poly::s_pow(-2));
  return Rat(wn) * Rat(Poly::coeff(core)) / denom;
}

Rat LoopAction::xplus_n(int n, int i) const {
  // x^+_n v_i = w^n q^{n(h+1)} [l-i+1]_q v_{i-1}
  if (i == 0) return Rat(0);
  int h = hwt(l, i);
  Rat qq = Rat(Poly::monomial(Monomial::gen(eval_var, 2 * n), SPoly::s_power(2 * n * (h + 1))));
  return qq * bracket(e_const(l - i + 1)) / bracket(e_const(1));
}

Rat LoopAction::xminus_n(int n, int i) const {
  if (i == l) return Rat(0);
  int h = hwt(l, i);
  Rat qq = Rat(Poly::monomial(Monomial::gen(eval_var, 2 * n), SPoly::s_power(2 * n * (h - 1))));
  return qq * bracket(e_const(i + 1)) / bracket(e_const(1));
}

}  // namespace qdyn::modules
