#include "overdet/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "overdet/errors.hpp"

namespace overdet {

namespace {

struct MTerm {
  Monomial m;
  std::size_t comp;
  Rational c;
};
using Vec = std::vector<MTerm>;

int compare_terms(const TermOrder& ord, const MTerm& a, const MTerm& b) {
  return ord.compare(a.m, a.comp, b.m, b.comp);
}

Vec to_vec(const ModuleElement& v, const TermOrder& ord) {
  Vec out;
  for (std::size_t k = 0; k < v.rank(); ++k) {
    for (const auto& [m, c] : v[k].terms()) out.push_back({m, k, c});
  }
  std::sort(out.begin(), out.end(),
            [&](const MTerm& a, const MTerm& b) { return compare_terms(ord, a, b) > 0; });
  return out;
}

ModuleElement to_element(const Vec& v, std::size_t rank, std::size_t nvars) {
  std::vector<std::vector<Polynomial::Term>> parts(rank);
  for (const auto& t : v) parts[t.comp].emplace_back(t.m, t.c);
  std::vector<Polynomial> comps;
  comps.reserve(rank);
  for (auto& p : parts) comps.emplace_back(nvars, std::move(p));
  return ModuleElement(std::move(comps));
}

Polynomial to_polynomial(const Vec& v, std::size_t nvars) {
  std::vector<Polynomial::Term> terms;
  for (const auto& t : v) terms.emplace_back(t.m, t.c);
  return Polynomial(nvars, std::move(terms));
}

// a[from:] + c * mono * b, all sorted descending.
Vec axpy(const Vec& a, std::size_t from, const Rational& c, const Monomial& mono, const Vec& b,
         const TermOrder& ord) {
  Vec out;
  out.reserve(a.size() - from + b.size());
  std::size_t i = from;
  std::size_t j = 0;
  auto scaled = [&](std::size_t k) { return MTerm{b[k].m * mono, b[k].comp, c * b[k].c}; };
  while (i < a.size() && j < b.size()) {
    MTerm sb = scaled(j);
    const int cmp = compare_terms(ord, a[i], sb);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(std::move(sb));
      ++j;
    } else {
      Rational s = a[i].c + sb.c;
      if (sgn(s) != 0) out.push_back({a[i].m, a[i].comp, std::move(s)});
      ++i;
      ++j;
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(scaled(j++));
  return out;
}

Vec scale(const Vec& v, const Rational& c, const Monomial& mono) {
  Vec out;
  out.reserve(v.size());
  for (const auto& t : v) out.push_back({t.m * mono, t.comp, t.c * c});
  return out;
}

Vec make_monic(Vec v) {
  const Rational inv = 1 / v.front().c;
  for (auto& t : v) t.c *= inv;
  return v;
}

using QuotientTerms = std::vector<std::vector<Polynomial::Term>>;

Vec reduce_vec(Vec p, const std::vector<Vec>& basis, const TermOrder& ord, QuotientTerms* quot) {
  Vec rem;
  std::size_t pos = 0;
  while (pos < p.size()) {
    const MTerm& t = p[pos];
    std::size_t hit = basis.size();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const MTerm& lt = basis[k].front();
      if (lt.comp == t.comp && lt.m.divides(t.m)) {
        hit = k;
        break;
      }
    }
    if (hit == basis.size()) {
      rem.push_back(t);
      ++pos;
      continue;
    }
    const MTerm& lt = basis[hit].front();
    const Rational q = t.c / lt.c;
    const Monomial mq = t.m / lt.m;
    if (quot) (*quot)[hit].emplace_back(mq, q);
    p = axpy(p, pos, -q, mq, basis[hit], ord);
    pos = 0;
  }
  return rem;
}

struct Syz {
  std::map<std::size_t, Polynomial> coeffs;  // basis index -> coefficient
};

class Engine {
 public:
  Engine(const TermOrder& ord, const GroebnerLimits& lim, std::size_t rank, std::size_t nvars,
         bool track, std::size_t ninputs)
      : ord_(ord), lim_(lim), rank_(rank), nvars_(nvars), track_(track), ninputs_(ninputs) {}

  void add(Vec g, ModuleElement rep) {
    const std::size_t idx = basis_.size();
    stats_.max_degree_seen = std::max(stats_.max_degree_seen, g.front().m.degree());
    for (std::size_t k = 0; k < idx; ++k) {
      if (basis_[k].front().comp != g.front().comp) continue;
      Monomial l = Monomial::lcm(basis_[k].front().m, g.front().m);
      pending_.push_back({k, idx, std::move(l)});
      pending_set_.insert({k, idx});
    }
    basis_.push_back(std::move(g));
    if (track_) reps_.push_back(std::move(rep));
  }

  void run() {
    while (!pending_.empty()) {
      auto best = pending_.begin();
      for (auto it = pending_.begin(); it != pending_.end(); ++it) {
        if (pair_less(*it, *best)) best = it;
      }
      Pair p = *best;
      pending_.erase(best);
      pending_set_.erase({p.i, p.j});
      if (++stats_.pairs_considered > lim_.max_pairs) {
        std::ostringstream msg;
        msg << "S-pair cap of " << lim_.max_pairs << " exceeded (basis size " << basis_.size()
            << ", pending " << pending_.size() << ", max degree " << stats_.max_degree_seen
            << ")";
        throw ResourceError(msg.str());
      }
      if (p.lcm.degree() > lim_.max_degree) {
        std::ostringstream msg;
        msg << "intermediate degree " << p.lcm.degree() << " exceeds cap " << lim_.max_degree
            << " (basis size " << basis_.size() << ", pairs considered "
            << stats_.pairs_considered << ")";
        throw ResourceError(msg.str());
      }
      process(p);
    }
  }

  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<ModuleElement>& reps() const { return reps_; }
  const std::vector<Syz>& syzygies() const { return syz_; }
  const GroebnerStats& stats() const { return stats_; }

 private:
  struct Pair {
    std::size_t i;
    std::size_t j;
    Monomial lcm;
  };

  bool pair_less(const Pair& a, const Pair& b) const {
    if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
    const int c = ord_.compare(a.lcm, basis_[a.i].front().comp, b.lcm, basis_[b.i].front().comp);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  bool chain_criterion(const Pair& p) const {
    const std::size_t comp = basis_[p.i].front().comp;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == p.i || k == p.j) continue;
      const MTerm& lt = basis_[k].front();
      if (lt.comp != comp || !lt.m.divides(p.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) {
        return std::pair{std::min(a, b), std::max(a, b)};
      };
      if (pending_set_.count(key(p.i, k)) == 0 && pending_set_.count(key(p.j, k)) == 0) {
        return true;
      }
    }
    return false;
  }

  void process(const Pair& p) {
    const MTerm& lti = basis_[p.i].front();
    const MTerm& ltj = basis_[p.j].front();
    if (rank_ == 1 && Monomial::coprime(lti.m, ltj.m)) {
      ++stats_.skipped_product;
      if (track_) {
        Syz s;
        s.coeffs[p.i] = to_polynomial(basis_[p.j], nvars_);
        s.coeffs[p.j] = -to_polynomial(basis_[p.i], nvars_);
        syz_.push_back(std::move(s));
      }
      return;
    }
    if (!track_ && chain_criterion(p)) {
      ++stats_.skipped_chain;
      return;
    }
    ++stats_.pairs_reduced;
    const Monomial mi = p.lcm / lti.m;
    const Monomial mj = p.lcm / ltj.m;
    Vec s = axpy(scale(basis_[p.i], Rational(1), mi), 0, Rational(-1), mj, basis_[p.j], ord_);
    QuotientTerms quot(basis_.size());
    Vec h = reduce_vec(std::move(s), basis_, ord_, track_ ? &quot : nullptr);

    Syz syz;
    if (track_) {
      syz.coeffs.try_emplace(p.i, nvars_).first->second += Polynomial::term(mi, Rational(1));
      syz.coeffs.try_emplace(p.j, nvars_).first->second += Polynomial::term(mj, Rational(-1));
      for (std::size_t t = 0; t < quot.size(); ++t) {
        if (quot[t].empty()) continue;
        auto [it, inserted] = syz.coeffs.try_emplace(t, Polynomial(nvars_));
        it->second -= Polynomial(nvars_, std::move(quot[t]));
      }
      std::erase_if(syz.coeffs, [](const auto& kv) { return kv.second.is_zero(); });
    }
    if (h.empty()) {
      ++stats_.zero_reductions;
      if (track_ && !syz.coeffs.empty()) syz_.push_back(std::move(syz));
      return;
    }
    const Rational lc = h.front().c;
    ModuleElement rep;
    if (track_) {
      rep = ModuleElement(ninputs_, nvars_);
      for (const auto& [t, c] : syz.coeffs) rep += c * reps_[t];
      for (std::size_t k = 0; k < rep.rank(); ++k) rep[k] *= Rational(1 / lc);
      syz.coeffs[basis_.size()] = Polynomial::constant(nvars_, -lc);
      syz_.push_back(std::move(syz));
    }
    add(make_monic(std::move(h)), std::move(rep));
  }

  const TermOrder& ord_;
  GroebnerLimits lim_;
  std::size_t rank_;
  std::size_t nvars_;
  bool track_;
  std::size_t ninputs_;
  std::vector<Vec> basis_;
  std::vector<ModuleElement> reps_;
  std::vector<Syz> syz_;
  std::vector<Pair> pending_;
  std::set<std::pair<std::size_t, std::size_t>> pending_set_;
  GroebnerStats stats_;
};

void check_generators(std::span<const ModuleElement> gens) {
  if (gens.empty()) throw InputError("generator list is empty");
  for (const auto& g : gens) {
    if (g.rank() != gens.front().rank()) throw InputError("generators have different ranks");
    if (g.nvars() != gens.front().nvars()) {
      throw InputError("generators have different variable counts");
    }
  }
}

std::vector<Vec> interreduce(std::vector<Vec> basis, const TermOrder& ord) {
  std::sort(basis.begin(), basis.end(), [&](const Vec& a, const Vec& b) {
    return compare_terms(ord, a.front(), b.front()) < 0;
  });
  std::vector<Vec> kept;
  for (auto& g : basis) {
    const bool redundant = std::any_of(kept.begin(), kept.end(), [&](const Vec& k) {
      return k.front().comp == g.front().comp && k.front().m.divides(g.front().m);
    });
    if (!redundant) kept.push_back(std::move(g));
  }
  std::vector<Vec> out;
  out.reserve(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::vector<Vec> others;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      if (k != i) others.push_back(kept[k]);
    }
    // Leading term is irreducible by the others, so reduction keeps it.
    out.push_back(make_monic(reduce_vec(kept[i], others, ord, nullptr)));
  }
  std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
    return compare_terms(ord, a.front(), b.front()) > 0;
  });
  return out;
}

std::string serialize(const ModuleElement& v) {
  std::string s;
  for (std::size_t k = 0; k < v.rank(); ++k) {
    if (k) s += ';';
    s += format_polynomial(v[k]);
  }
  return s;
}

}  // namespace

LeadingTerm leading_term(const ModuleElement& v, const TermOrder& order) {
  Vec vec = to_vec(v, order);
  if (vec.empty()) throw InputError("leading term of the zero element");
  return {vec.front().m, vec.front().comp, vec.front().c};
}

Reduction reduce(const ModuleElement& f, std::span<const ModuleElement> basis,
                 const TermOrder& order) {
  std::vector<Vec> vecs;
  vecs.reserve(basis.size());
  for (const auto& b : basis) {
    if (b.rank() != f.rank()) throw InputError("rank mismatch between element and basis");
    Vec v = to_vec(b, order);
    if (v.empty()) throw InputError("zero element in reduction basis");
    vecs.push_back(std::move(v));
  }
  QuotientTerms quot(basis.size());
  Vec rem = reduce_vec(to_vec(f, order), vecs, order, &quot);
  Reduction r{to_element(rem, f.rank(), f.nvars()), {}};
  for (auto& q : quot) r.quotients.emplace_back(f.nvars(), std::move(q));
  return r;
}

GroebnerBasis buchberger(std::span<const ModuleElement> gens, const TermOrder& order,
                         const GroebnerLimits& limits) {
  check_generators(gens);
  const std::size_t rank = gens.front().rank();
  const std::size_t nvars = gens.front().nvars();
  Engine engine(order, limits, rank, nvars, false, gens.size());
  for (const auto& g : gens) {
    Vec v = to_vec(g, order);
    if (!v.empty()) engine.add(make_monic(std::move(v)), ModuleElement());
  }
  engine.run();
  GroebnerBasis gb;
  gb.order = order;
  gb.rank = rank;
  gb.nvars = nvars;
  gb.reduced = true;
  gb.stats = engine.stats();
  for (const auto& v : interreduce(engine.basis(), order)) {
    gb.generators.push_back(to_element(v, rank, nvars));
  }
  return gb;
}

bool membership(const ModuleElement& f, const GroebnerBasis& basis) {
  if (basis.generators.empty()) return f.is_zero();
  return reduce(f, basis.generators, basis.order).remainder.is_zero();
}

std::optional<ModuleElement> s_vector(const ModuleElement& a, const ModuleElement& b,
                                      const TermOrder& order) {
  const LeadingTerm la = leading_term(a, order);
  const LeadingTerm lb = leading_term(b, order);
  if (la.component != lb.component) return std::nullopt;
  const Monomial l = Monomial::lcm(la.monomial, lb.monomial);
  ModuleElement r(a.rank(), a.nvars());
  r += Polynomial::term(l / la.monomial, 1 / la.coefficient) * a;
  r -= Polynomial::term(l / lb.monomial, 1 / lb.coefficient) * b;
  return r;
}

bool s_vectors_reduce_to_zero(const GroebnerBasis& basis) {
  const auto& g = basis.generators;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      auto s = s_vector(g[i], g[j], basis.order);
      if (s && !membership(*s, basis)) return false;
    }
  }
  return true;
}

ModuleElement normalize_row(const ModuleElement& v) {
  Integer den = 1;
  Integer g = 0;
  for (const auto& p : v.components()) {
    for (const auto& [m, c] : p.terms()) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
  }
  for (const auto& p : v.components()) {
    for (const auto& [m, c] : p.terms()) {
      Integer num = c.get_num() * (den / c.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    }
  }
  if (g == 0) return v;
  Rational s(den, g);
  s.canonicalize();
  for (const auto& p : v.components()) {
    if (!p.is_zero()) {
      if (sgn(p.terms().front().second) < 0) s = -s;
      break;
    }
  }
  ModuleElement out = v;
  for (std::size_t k = 0; k < out.rank(); ++k) out[k] *= s;
  return out;
}

SyzygyBasis syzygies(std::span<const ModuleElement> gens, const TermOrder& order,
                     const GroebnerLimits& limits) {
  check_generators(gens);
  const std::size_t r = gens.size();
  const std::size_t rank = gens.front().rank();
  const std::size_t nvars = gens.front().nvars();

  SyzygyBasis out;
  out.source.assign(gens.begin(), gens.end());

  Engine engine(order, limits, rank, nvars, true, r);
  std::vector<ModuleElement> rows;
  for (std::size_t i = 0; i < r; ++i) {
    Vec v = to_vec(gens[i], order);
    if (v.empty()) {
      rows.push_back(ModuleElement::unit(r, nvars, i));
      continue;
    }
    ModuleElement rep = ModuleElement::unit(r, nvars, i);
    rep[i] *= Rational(1 / v.front().c);
    engine.add(make_monic(std::move(v)), std::move(rep));
  }
  engine.run();

  for (const auto& s : engine.syzygies()) {
    ModuleElement row(r, nvars);
    for (const auto& [t, c] : s.coeffs) row += c * engine.reps()[t];
    if (!row.is_zero()) rows.push_back(std::move(row));
  }
  if (rows.empty()) return out;

  std::vector<TermOrder::Shift> shifts;
  shifts.reserve(r);
  for (const auto& g : gens) {
    if (g.is_zero()) {
      shifts.push_back({Monomial(nvars), -1});
    } else {
      const LeadingTerm lt = leading_term(g, order);
      shifts.push_back({lt.monomial, static_cast<int>(lt.component)});
    }
  }
  const TermOrder schreyer = TermOrder::schreyer(order, std::move(shifts));
  std::vector<ModuleElement> candidates = buchberger(rows, schreyer, limits).generators;

  // Drop generators lying in the span of the remaining ones.
  for (std::size_t idx = candidates.size(); idx-- > 0;) {
    if (candidates.size() == 1) break;
    std::vector<ModuleElement> others;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (k != idx) others.push_back(candidates[k]);
    }
    if (membership(candidates[idx], buchberger(others, schreyer, limits))) {
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(idx));
    }
  }

  for (auto& c : candidates) c = normalize_row(c);
  std::vector<std::pair<LeadingTerm, std::string>> keys;
  std::vector<std::size_t> perm(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    keys.emplace_back(leading_term(candidates[k], schreyer), serialize(candidates[k]));
    perm[k] = k;
  }
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    const int c = schreyer.compare(keys[a].first.monomial, keys[a].first.component,
                                   keys[b].first.monomial, keys[b].first.component);
    if (c != 0) return c > 0;
    return keys[a].second < keys[b].second;
  });
  for (std::size_t k : perm) out.rows.push_back(candidates[k]);
  return out;
}

std::vector<ModuleElement> as_ideal_generators(std::span<const Polynomial> polys) {
  std::vector<ModuleElement> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.emplace_back(std::vector<Polynomial>{p});
  return out;
}

GroebnerBasis ideal_basis(std::span<const Polynomial> polys, const TermOrder& order,
                          const GroebnerLimits& limits) {
  const auto gens = as_ideal_generators(polys);
  return buchberger(gens, order, limits);
}

bool ideal_membership(const Polynomial& f, const GroebnerBasis& basis) {
  return membership(ModuleElement(std::vector<Polynomial>{f}), basis);
}

}  // namespace overdet
