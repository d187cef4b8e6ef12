#include "rcvf/sos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace rcvf {

namespace {

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Integer& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

bool prime_1_mod_4(const Integer& n) {
  return n == 2 || (mpz_fdiv_ui(n.get_mpz_t(), 4) == 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0);
}

// p = a^2 + b^2 for a prime p = 2 or p = 1 mod 4 (Hermite-Serret).
std::vector<Integer> prime_two_squares(const Integer& p) {
  if (p == 2) return {Integer(1), Integer(1)};
  Integer z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Integer e = (p - 1) / 4, x;
  mpz_powm(x.get_mpz_t(), z.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  Integer a = p, b = x;
  while (b * b > p) {
    Integer r = a % b;
    a = b;
    b = r;
  }
  return {b, isqrt(p - b * b)};
}

// Up to four squares summing to n: peel one or two large squares until the
// rest is zero, a square, or a prime that splits.
std::optional<std::vector<Integer>> few_squares(const Integer& n, int budget, long tries) {
  if (sgn(n) == 0) return std::vector<Integer>{};
  if (is_square(n)) return std::vector<Integer>{isqrt(n)};
  if (budget >= 2 && prime_1_mod_4(n)) return prime_two_squares(n);
  if (budget <= 1) return std::nullopt;
  Integer a = isqrt(n);
  for (long t = 0; t < tries && sgn(a) > 0; ++t, --a) {
    auto rest = few_squares(n - a * a, budget - 1, budget > 3 ? 200 : 0);
    if (rest) {
      rest->insert(rest->begin(), a);
      return rest;
    }
  }
  return std::nullopt;
}

// Sparse matrix direction in Gram parameter space.
struct Entry {
  std::size_t i, j;
  Rational w;
};

struct GramProblem {
  std::vector<Monomial> basis;
  RationalMatrix base;                         // Q0
  std::vector<std::vector<Entry>> directions;  // E_k (symmetric, listed once with i <= j)
};

bool monomial_less(const Monomial& a, const Monomial& b) { return MonomialOrder{}(a, b); }

Monomial add(const Monomial& a, const Monomial& b) {
  Monomial m{a.exps};
  for (std::size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += b.exps[i];
  return m;
}

std::optional<GramProblem> build_gram(const ResiduePolynomial& q, std::size_t max_basis, std::size_t max_params) {
  const std::size_t n = q.variables().size();
  if (q.is_zero()) return std::nullopt;
  unsigned max_total = 0, min_total = ~0U;
  std::vector<unsigned> max_deg(n, 0), min_deg(n, ~0U);
  for (const auto& [m, c] : q.terms()) {
    max_total = std::max(max_total, m.degree());
    min_total = std::min(min_total, m.degree());
    for (std::size_t i = 0; i < n; ++i) {
      max_deg[i] = std::max(max_deg[i], m.exps[i]);
      min_deg[i] = std::min(min_deg[i], m.exps[i]);
    }
  }
  if (max_total % 2 != 0 || min_total % 2 != 0) return std::nullopt;
  // Candidate half-degree monomials inside the Newton bounding box.
  std::vector<Monomial> basis;
  Monomial cur{std::vector<unsigned>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) cur.exps[i] = (min_deg[i] + 1) / 2;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (basis.size() > 4 * max_basis) return;
    if (i == n) {
      unsigned d = cur.degree();
      if (2 * d <= max_total && 2 * d >= min_total) basis.push_back(cur);
      return;
    }
    for (unsigned e = (min_deg[i] + 1) / 2; 2 * e <= max_deg[i]; ++e) {
      cur.exps[i] = e;
      rec(i + 1);
    }
    cur.exps[i] = (min_deg[i] + 1) / 2;
  };
  rec(0);
  // Drop a where 2a is outside the support and no other pair reaches 2a.
  std::set<std::vector<unsigned>> support;
  for (const auto& [m, c] : q.terms()) support.insert(m.exps);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      Monomial twice = add(basis[a], basis[a]);
      if (support.count(twice.exps)) continue;
      bool reached = false;
      for (std::size_t b = 0; b < basis.size() && !reached; ++b)
        for (std::size_t c = b + 1; c < basis.size() && !reached; ++c)
          if (b != a && c != a && add(basis[b], basis[c]) == twice) reached = true;
      if (!reached) {
        basis.erase(basis.begin() + a);
        changed = true;
        break;
      }
    }
  }
  if (basis.empty() || basis.size() > max_basis) return std::nullopt;
  std::sort(basis.begin(), basis.end(), monomial_less);

  // Group index pairs by the product monomial.
  std::map<std::vector<unsigned>, std::vector<std::pair<std::size_t, std::size_t>>> groups;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j) groups[add(basis[i], basis[j]).exps].push_back({i, j});
  for (const auto& [m, c] : q.terms())
    if (!groups.count(m.exps)) return std::nullopt;

  GramProblem g;
  g.basis = basis;
  const std::size_t N = basis.size();
  g.base.assign(N, std::vector<Rational>(N, Rational(0)));
  std::map<std::vector<unsigned>, Rational> coef;
  for (const auto& [m, c] : q.terms()) coef[m.exps] = c;
  for (auto& [mono, pairs] : groups) {
    // Prefer a diagonal entry as the base of each group.
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
      return (a.first == a.second) > (b.first == b.second);
    });
    auto weight = [](const std::pair<std::size_t, std::size_t>& p) { return Rational(p.first == p.second ? 1 : 2); };
    Rational value = coef.count(mono) ? coef[mono] : Rational(0);
    auto [i0, j0] = pairs.front();
    Rational b = value / weight(pairs.front());
    g.base[i0][j0] = b;
    g.base[j0][i0] = b;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      auto [i, j] = pairs[k];
      g.directions.push_back({{i, j, Rational(1)}, {i0, j0, -weight(pairs[k]) / weight(pairs.front())}});
    }
  }
  if (g.directions.size() > max_params) return std::nullopt;
  return g;
}

RationalMatrix gram_at(const GramProblem& g, const std::vector<Rational>& t) {
  RationalMatrix q = g.base;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (sgn(t[k]) == 0) continue;
    for (const auto& e : g.directions[k]) {
      q[e.i][e.j] += e.w * t[k];
      if (e.i != e.j) q[e.j][e.i] += e.w * t[k];
    }
  }
  return q;
}

Eigen::MatrixXd to_double(const RationalMatrix& q) {
  const std::size_t n = q.size();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = q[i][j].get_d();
  return m;
}

Eigen::MatrixXd direction_matrix(const std::vector<Entry>& dir, std::size_t n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : dir) {
    m(e.i, e.j) += e.w.get_d();
    if (e.i != e.j) m(e.j, e.i) += e.w.get_d();
  }
  return m;
}

// Minimizes tau*s - logdet(Q(t) + s*I) (phase 1) or -logdet(Q(t)) (phase 2)
// with damped Newton steps. Returns false if no PD iterate could be kept.
struct BarrierState {
  Eigen::VectorXd t;
  double s = 0;
};

bool barrier_newton(const Eigen::MatrixXd& q0, const std::vector<Eigen::MatrixXd>& dirs, BarrierState& st,
                    bool phase1, double tau, int max_iter) {
  const long P = static_cast<long>(dirs.size());
  const long N = q0.rows();
  const long V = P + (phase1 ? 1 : 0);
  auto assemble = [&](const Eigen::VectorXd& t, double s) {
    Eigen::MatrixXd m = q0;
    for (long k = 0; k < P; ++k) m += t(k) * dirs[k];
    if (phase1) m += s * Eigen::MatrixXd::Identity(N, N);
    return m;
  };
  auto objective = [&](const Eigen::VectorXd& t, double s, bool& ok) {
    Eigen::LLT<Eigen::MatrixXd> llt(assemble(t, s));
    ok = llt.info() == Eigen::Success;
    if (!ok) return 0.0;
    double logdet = 0;
    for (long i = 0; i < N; ++i) logdet += 2 * std::log(llt.matrixL()(i, i));
    return (phase1 ? tau * s : 0.0) - logdet;
  };
  bool ok = false;
  double f = objective(st.t, st.s, ok);
  if (!ok) return false;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::MatrixXd minv = assemble(st.t, st.s).llt().solve(Eigen::MatrixXd::Identity(N, N));
    std::vector<Eigen::MatrixXd> a(V);
    for (long k = 0; k < P; ++k) a[k] = minv * dirs[k];
    if (phase1) a[P] = minv;
    Eigen::VectorXd grad(V);
    Eigen::MatrixXd hess(V, V);
    for (long k = 0; k < V; ++k) {
      grad(k) = -a[k].trace();
      for (long l = k; l < V; ++l) {
        double h = (a[k].cwiseProduct(a[l].transpose())).sum();
        hess(k, l) = h;
        hess(l, k) = h;
      }
    }
    if (phase1) grad(P) += tau;
    hess += 1e-12 * Eigen::MatrixXd::Identity(V, V);
    Eigen::VectorXd step = -hess.ldlt().solve(grad);
    double decrement = -grad.dot(step);
    if (!std::isfinite(decrement) || decrement < 1e-10) break;
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls, alpha *= 0.5) {
      Eigen::VectorXd t = st.t + alpha * step.head(P);
      double s = phase1 ? st.s + alpha * step(P) : st.s;
      bool ok2 = false;
      double f2 = objective(t, s, ok2);
      if (ok2 && f2 <= f - 0.25 * alpha * decrement) {
        st.t = t;
        st.s = s;
        f = f2;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    if (phase1 && st.s < -1e-3) break;
  }
  return true;
}

// Candidate parameter vectors from the numerical phase.
std::vector<Eigen::VectorXd> numeric_candidates(const GramProblem& g) {
  const std::size_t N = g.basis.size();
  Eigen::MatrixXd q0 = to_double(g.base);
  std::vector<Eigen::MatrixXd> dirs;
  for (const auto& d : g.directions) dirs.push_back(direction_matrix(d, N));
  BarrierState st;
  st.t = Eigen::VectorXd::Zero(static_cast<long>(dirs.size()));
  double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(q0).eigenvalues().minCoeff();
  st.s = std::max(0.0, -lmin) + 1.0;
  std::vector<Eigen::VectorXd> out;
  for (double tau = 1.0; tau < 1e9; tau *= 8) {
    if (!barrier_newton(q0, dirs, st, true, tau, 60)) return out;
    if (st.s < -1e-3) break;
  }
  out.push_back(st.t);
  if (st.s < 0) {
    BarrierState center = st;
    center.s = 0;
    if (barrier_newton(q0, dirs, center, false, 0, 100)) out.insert(out.begin(), center.t);
  }
  return out;
}

std::vector<ResidueQuotient> squares_from_ldl(const LdlOutcome& ldl, const GramProblem& g,
                                              const std::vector<std::string>& vars) {
  std::vector<ResidueQuotient> out;
  for (std::size_t k = 0; k < ldl.pivots.size(); ++k) {
    std::vector<std::pair<Monomial, Rational>> terms;
    for (std::size_t i = 0; i < g.basis.size(); ++i)
      if (sgn(ldl.columns[k][i]) != 0) terms.emplace_back(g.basis[i], ldl.columns[k][i]);
    ResiduePolynomial l = ResiduePolynomial::from_terms(vars, terms);
    for (const Rational& a : rational_sum_of_squares(ldl.pivots[k])) out.emplace_back(l.scaled(a));
  }
  return out;
}

std::optional<std::vector<ResidueQuotient>> gram_search(const ResiduePolynomial& q, const SOSBudget& budget) {
  auto g = build_gram(q, budget.max_basis, budget.max_parameters);
  if (!g) return std::nullopt;
  const std::vector<std::string>& vars = q.variables();
  // Exact attempt with all free parameters at zero.
  std::vector<Rational> zero(g->directions.size(), Rational(0));
  LdlOutcome exact = ldl_psd(gram_at(*g, zero));
  if (exact.psd) return squares_from_ldl(exact, *g, vars);
  if (g->directions.empty()) return std::nullopt;
  for (const auto& t : numeric_candidates(*g)) {
    for (long den : {1L, 4L, 16L, 64L, 256L, 1024L, 1L << 14, 1L << 18, 1L << 22}) {
      std::vector<Rational> rt;
      rt.reserve(t.size());
      for (long k = 0; k < t.size(); ++k) rt.push_back(rationalize(t(k), den));
      LdlOutcome ldl = ldl_psd(gram_at(*g, rt));
      if (ldl.psd) return squares_from_ldl(ldl, *g, vars);
    }
  }
  return std::nullopt;
}

// Univariate polynomials over Q as coefficient vectors (index = degree).
using Uni = std::vector<Rational>;

void trim(Uni& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

Uni monic(Uni a) {
  trim(a);
  if (a.empty()) return a;
  const Rational lc = a.back();
  for (auto& c : a) c /= lc;
  return a;
}

Uni derivative(const Uni& a) {
  Uni d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * Rational(static_cast<long>(i)));
  trim(d);
  return d;
}

Uni sub(Uni a, const Uni& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

Uni mul(const Uni& a, const Uni& b) {
  if (a.empty() || b.empty()) return {};
  Uni c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::pair<Uni, Uni> divmod(Uni a, const Uni& b) {
  trim(a);
  Uni q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return {q, a};
}

Uni gcd(Uni a, Uni b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Uni r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// Yun: monic f = prod_i out[i]^(i+1) with squarefree, pairwise coprime factors.
std::vector<Uni> squarefree_factors(const Uni& f) {
  std::vector<Uni> out;
  Uni d = derivative(f);
  Uni a0 = gcd(f, d);
  Uni b = divmod(f, a0).first;
  Uni c = divmod(d, a0).first;
  Uni e = sub(c, derivative(b));
  while (b.size() > 1) {
    Uni a = gcd(b, e);
    out.push_back(a);
    b = divmod(b, a).first;
    c = divmod(e, a).first;
    e = sub(c, derivative(b));
  }
  return out;
}

// q = lc * g^2 * h with h the product of the odd-multiplicity factors. For
// q >= 0, lc * h is strictly positive, so its Gram set has interior and the
// rounded search only has to find a point inside it.
std::optional<std::vector<ResidueQuotient>> univariate_sos(const ResiduePolynomial& q, const SOSBudget& budget) {
  const auto used = q.used_variables();
  if (used.size() != 1) return std::nullopt;
  const auto& vars = q.variables();
  const std::size_t idx = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), used[0]) - vars.begin());
  Uni f;
  for (const auto& [m, c] : q.terms()) {
    const unsigned e = m.exps[idx];
    if (f.size() <= e) f.resize(e + 1, Rational(0));
    f[e] += c;
  }
  trim(f);
  if (f.size() % 2 == 0 || sgn(f.back()) <= 0) return std::nullopt;
  const Rational lc = f.back();
  Uni g{Rational(1)}, h{Rational(1)};
  auto factors = squarefree_factors(monic(f));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::size_t mult = i + 1;
    for (std::size_t k = 0; k < mult / 2; ++k) g = mul(g, factors[i]);
    if (mult % 2 == 1) h = mul(h, factors[i]);
  }
  auto to_poly = [&](const Uni& u) {
    ResiduePolynomial out;
    const auto x = ResiduePolynomial::variable(used[0]);
    for (std::size_t i = u.size(); i-- > 0;) out = out * x + ResiduePolynomial(u[i]);
    return out.with_variables(vars);
  };
  const ResiduePolynomial gp = to_poly(g);
  std::vector<ResidueQuotient> squares;
  if (h.size() == 1) {
    for (const Rational& a : rational_sum_of_squares(lc * h[0])) squares.emplace_back(gp.scaled(a));
    return squares;
  }
  const ResiduePolynomial target = (to_poly(h).scaled(lc)).with_variables(vars);
  auto found = gram_search(target, budget);
  if (!found) return std::nullopt;
  for (const auto& s : *found) squares.emplace_back((s.num * gp).with_variables(vars), s.den);
  return squares;
}

double eval_double(const ResiduePolynomial& q, const std::vector<double>& x) {
  double acc = 0;
  for (const auto& [m, c] : q.terms()) {
    double t = c.get_d();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (m.exps[i]) t *= std::pow(x[i], static_cast<double>(m.exps[i]));
    acc += t;
  }
  return acc;
}

bool negative_at(const ResiduePolynomial& q, const std::vector<Rational>& x) {
  return sgn(q.evaluate<Rational>(std::span<const Rational>(x))) < 0;
}

// Exact negative point of a polynomial of total degree <= 2 via its Gram
// matrix over (1, x_1..x_n).
std::optional<std::vector<Rational>> quadratic_direction(const ResiduePolynomial& q) {
  const std::size_t n = q.variables().size();
  RationalMatrix g(n + 1, std::vector<Rational>(n + 1, Rational(0)));
  for (const auto& [m, c] : q.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned e = 0; e < m.exps[i]; ++e) idx.push_back(i + 1);
    while (idx.size() < 2) idx.insert(idx.begin(), 0);
    if (idx[0] == idx[1]) {
      g[idx[0]][idx[0]] += c;
    } else {
      g[idx[0]][idx[1]] += c / 2;
      g[idx[1]][idx[0]] += c / 2;
    }
  }
  LdlOutcome ldl = ldl_psd(g);
  if (ldl.psd) return std::nullopt;
  const auto& v = ldl.negative_direction;
  if (sgn(v[0]) != 0) {
    std::vector<Rational> x;
    for (std::size_t i = 1; i <= n; ++i) x.push_back(v[i] / v[0]);
    if (negative_at(q, x)) return x;
  }
  // Leading form negative along v: walk out along the ray.
  for (long t = 1; t <= (1L << 20); t *= 4) {
    std::vector<Rational> x;
    for (std::size_t i = 1; i <= n; ++i) x.push_back(v[i] * t);
    if (negative_at(q, x)) return x;
  }
  return std::nullopt;
}

}  // namespace

LdlOutcome ldl_psd(const RationalMatrix& q) {
  const std::size_t n = q.size();
  RationalMatrix s = q;
  std::vector<std::vector<Rational>> basis(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
  std::vector<bool> done(n, false);
  LdlOutcome out;
  for (std::size_t step = 0; step < n; ++step) {
    // First positive diagonal in basis order; any negative one is a witness.
    std::size_t p = n, zero = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (sgn(s[i][i]) < 0) {
        out.negative_direction = basis[i];
        return out;
      }
      if (sgn(s[i][i]) > 0 && p == n) p = i;
      if (sgn(s[i][i]) == 0 && zero == n) zero = i;
    }
    if (p == n && zero == n) break;
    if (p == n) {
      // Remaining diagonal is zero; PSD iff the remaining block vanishes.
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (done[j] || i == j || sgn(s[i][j]) == 0) continue;
          // (b_i + t b_j)^T Q (b_i + t b_j) = 2 t s_ij with t = -sign(s_ij)
          std::vector<Rational> v = basis[i];
          int sign = sgn(s[i][j]);
          for (std::size_t k = 0; k < n; ++k) v[k] -= sign * basis[j][k];
          out.negative_direction = v;
          return out;
        }
      }
      break;
    }
    const Rational d = s[p][p];
    std::vector<Rational> l(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i]) l[i] = s[i][p] / d;
    done[p] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || sgn(l[i]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) s[i][j] -= d * l[i] * l[j];
      for (std::size_t k = 0; k < n; ++k) basis[i][k] -= l[i] * basis[p][k];
    }
    // Keep the Schur complement symmetric after the row updates above.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!done[i] && !done[j]) s[j][i] = s[i][j];
    out.pivots.push_back(d);
    out.columns.push_back(l);
  }
  out.psd = true;
  return out;
}

std::vector<Rational> rational_sum_of_squares(const Rational& d) {
  if (sgn(d) < 0) throw Error(ErrorCode::NegativeElement, "negative rational is not a sum of squares");
  if (sgn(d) == 0) return {};
  if (auto r = rational_sqrt(d)) return {*r};
  // d = a/b = (a*b) / b^2
  Integer a = d.get_num(), b = d.get_den();
  Integer n = a * b;
  // Pull out small square factors.
  Integer scale = 1;
  for (long p = 2; p < 1000; ++p) {
    Integer pp = p * p;
    while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
      n /= pp;
      scale *= p;
    }
  }
  std::optional<std::vector<Integer>> parts = few_squares(n, 4, 2000);
  if (!parts) {
    // Lagrange guarantees a decomposition; exhaustive fallback.
    for (Integer x = isqrt(n); !parts && sgn(x) >= 0; --x) {
      auto rest = few_squares(n - x * x, 3, 1L << 16);
      if (rest) {
        rest->insert(rest->begin(), x);
        parts = rest;
      }
    }
  }
  std::vector<Rational> out;
  for (const Integer& v : *parts) {
    if (sgn(v) == 0) continue;
    Rational r(v * scale, b);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

const char* sos_kind_name(SOSResult::Kind k) {
  switch (k) {
    case SOSResult::Kind::SOS: return "SOS";
    case SOSResult::Kind::NotSOSInBudget: return "NotSOSInBudget";
    case SOSResult::Kind::NegativityWitness: return "NegativityWitness";
  }
  return "?";
}

bool verify_residue_sos(const ResiduePolynomial& q, const std::vector<ResidueQuotient>& decomposition) {
  ResidueQuotient acc;
  for (const auto& t : decomposition) {
    if (t.den.is_zero()) return false;
    acc = acc + t * t;
  }
  return acc.equals(ResidueQuotient(q));
}

bool verify_residue_sos(const ResiduePolynomial& q, const std::vector<ResiduePolynomial>& decomposition) {
  ResiduePolynomial acc;
  for (const auto& t : decomposition) acc += t * t;
  return acc.equals(q);
}

std::optional<std::vector<Rational>> psd_falsify(const ResiduePolynomial& q, const SampleConfig& config) {
  const std::size_t n = q.variables().size();
  if (n == 0) {
    if (sgn(q.constant_term()) < 0) return std::vector<Rational>{};
    return std::nullopt;
  }
  // 1. Rational grid.
  static const std::vector<Rational> grid = {Rational(0),  Rational(1),     Rational(-1),   Rational(1, 2),
                                             Rational(-1, 2), Rational(2), Rational(-2),   Rational(3),
                                             Rational(-3),    Rational(1, 3), Rational(-1, 3), Rational(10),
                                             Rational(-10)};
  std::size_t total = 1;
  for (std::size_t i = 0; i < n && total <= 4096; ++i) total *= grid.size();
  total = std::min<std::size_t>(total, 4096);
  // Values above this (in double) are certainly positive on the grid.
  double scale = 1;
  for (const auto& [m, c] : q.terms()) scale += std::abs(c.get_d()) * std::pow(10.0, m.degree());
  std::vector<Rational> x(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t k = idx;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = grid[k % grid.size()];
      k /= grid.size();
    }
    std::vector<double> xd(n);
    for (std::size_t i = 0; i < n; ++i) xd[i] = x[i].get_d();
    if (eval_double(q, xd) > 1e-6 * scale) continue;
    if (negative_at(q, x)) return x;
  }
  // 2. Exact quadratic directions.
  if (q.total_degree() <= 2)
    if (auto v = quadratic_direction(q)) return v;
  // 3. Coordinate descent from random starts.
  const std::size_t starts = std::max<std::size_t>(8, std::min<std::size_t>(config.samples / 16, 128));
  for (std::size_t s = 0; s < starts; ++s) {
    Rng rng(config.seed, static_cast<std::uint64_t>(Stream::Falsify), s);
    std::vector<double> y(n);
    for (auto& v : y) v = (rng.unit() * 2 - 1) * 3;
    double fy = eval_double(q, y);
    double h = 1.0;
    for (int it = 0; it < 400 && h > 1e-7; ++it) {
      bool improved = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (double dir : {1.0, -1.0}) {
          std::vector<double> z = y;
          z[i] += dir * h;
          double fz = eval_double(q, z);
          if (fz < fy) {
            y = z;
            fy = fz;
            improved = true;
          }
        }
      }
      if (!improved) h *= 0.5;
      if (fy < 0) break;
    }
    if (fy < 0) {
      for (long den : {1L, 2L, 10L, 100L, 1000L, 100000L}) {
        std::vector<Rational> r;
        for (double v : y) r.push_back(rationalize(v, den));
        if (negative_at(q, r)) return r;
      }
    }
  }
  // 4. Rays to infinity.
  for (std::size_t s = 0; s < 64; ++s) {
    Rng rng(config.seed, static_cast<std::uint64_t>(Stream::Falsify), 100000 + s);
    std::vector<Rational> dir(n);
    for (auto& v : dir) v = Rational(rng.between(-3, 3));
    for (long t : {10L, 100L, 1000L, 10000L}) {
      std::vector<Rational> r;
      for (const auto& v : dir) r.push_back(v * t);
      if (negative_at(q, r)) return r;
    }
  }
  return std::nullopt;
}

SOSResult residue_sos_search(const ResiduePolynomial& q, const SOSBudget& budget, const SampleConfig& falsify) {
  SOSResult result;
  if (q.vanishes()) {
    result.kind = SOSResult::Kind::SOS;
    return result;
  }
  if (q.is_constant() && sgn(q.constant_term()) >= 0) {
    result.kind = SOSResult::Kind::SOS;
    for (const Rational& a : rational_sum_of_squares(q.constant_term())) result.squares.emplace_back(ResiduePolynomial(a));
    return result;
  }
  const auto& vars = q.variables();
  ResiduePolynomial norm;
  for (const auto& v : vars) {
    auto x = ResiduePolynomial::variable(v);
    norm += x * x;
  }
  if (auto uni = univariate_sos(q, budget); uni && verify_residue_sos(q, *uni)) {
    result.kind = SOSResult::Kind::SOS;
    result.squares = std::move(*uni);
    return result;
  }
  ResiduePolynomial multiplier(Rational(1));
  for (unsigned k = 0; k <= budget.denominator_degree_cap; ++k) {
    if (k == 1) {
      // A polynomial SOS was not found; look for a negative point before
      // trying denominators.
      if (auto p = psd_falsify(q, falsify)) {
        result.kind = SOSResult::Kind::NegativityWitness;
        result.point = *p;
        return result;
      }
    }
    if (k > 0) multiplier *= norm;
    ResiduePolynomial target = (q * multiplier).with_variables(vars);
    auto found = gram_search(target, budget);
    if (!found) continue;
    std::vector<ResidueQuotient> squares;
    if (k == 0) {
      squares = std::move(*found);
    } else if (k % 2 == 0) {
      ResiduePolynomial den = norm.pow(k / 2);
      for (const auto& s : *found) squares.emplace_back(s.num, den);
    } else {
      ResiduePolynomial den = norm.pow((k + 1) / 2);
      for (const auto& s : *found)
        for (const auto& v : vars) squares.emplace_back(s.num * ResiduePolynomial::variable(v), den);
    }
    if (verify_residue_sos(q, squares)) {
      result.kind = SOSResult::Kind::SOS;
      result.squares = std::move(squares);
      return result;
    }
  }
  if (budget.denominator_degree_cap == 0) {
    if (auto p = psd_falsify(q, falsify)) {
      result.kind = SOSResult::Kind::NegativityWitness;
      result.point = *p;
      return result;
    }
  }
  result.kind = SOSResult::Kind::NotSOSInBudget;
  return result;
}

}  // namespace rcvf
