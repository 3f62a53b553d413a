#include "qnls/exppoly.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <string>

namespace qnls {

namespace {

std::atomic<int> g_degree_cap{8};

void check_nvars(int n) {
  if (n < 0 || n > kMaxVars) throw std::invalid_argument("ExpPolySum: variable count out of range");
}

void check_same(const ExpPolySum& f, const ExpPolySum& g) {
  if (f.nvars() != g.nvars()) throw std::invalid_argument("ExpPolySum: dimension mismatch");
}

void check_index(const ExpPolySum& f, int j) {
  if (j < 1 || j > f.nvars()) throw std::out_of_range("ExpPolySum: variable index out of range");
}

MonoKey with_degree(MonoKey k, int v, int d) {
  const int shift = 4 * (v - 1);
  return (k & ~(MonoKey{0xF} << shift)) | (static_cast<MonoKey>(d) << shift);
}

void enforce_cap(int total) {
  if (total > degree_cap())
    throw DegreeCapError("ExpPolySum: polynomial degree " + std::to_string(total) + " exceeds cap " +
                         std::to_string(degree_cap()));
}

MonoKey mono_mul(MonoKey a, MonoKey b) {
  enforce_cap(mono_total_degree(a) + mono_total_degree(b));
  return a + b;  // nibbles cannot carry while the total degree stays below 16
}

// Sorted-by-key polynomial with duplicate keys combined.
void normalize_poly(std::vector<Monomial>& p) {
  std::sort(p.begin(), p.end(), [](const Monomial& a, const Monomial& b) { return a.key < b.key; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (out > 0 && p[out - 1].key == p[i].key)
      p[out - 1].coeff += p[i].coeff;
    else
      p[out++] = p[i];
  }
  p.resize(out);
}

std::vector<Monomial> poly_mul(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
  std::vector<Monomial> out;
  out.reserve(a.size() * b.size());
  for (const auto& ma : a)
    for (const auto& mb : b) out.push_back({mono_mul(ma.key, mb.key), ma.coeff * mb.coeff});
  normalize_poly(out);
  return out;
}

// (sum_c form.coeffs[c] x_c + offset)^d as a polynomial.
std::vector<Monomial> affine_power(const AffineForm& form, int d) {
  std::vector<Monomial> lin;
  if (form.offset != 0.0) lin.push_back({0, form.offset});
  for (std::size_t c = 0; c < form.coeffs.size(); ++c)
    if (form.coeffs[c] != 0.0) lin.push_back({MonoKey{1} << (4 * c), form.coeffs[c]});
  normalize_poly(lin);
  std::vector<Monomial> acc{{0, 1.0}};
  for (int r = 0; r < d; ++r) acc = poly_mul(acc, lin);
  return acc;
}

double wavevector_scale(const std::vector<cplx>& mu) {
  double s = 1.0;
  for (const auto& m : mu) s = std::max(s, std::abs(m));
  return s;
}

}  // namespace

int degree_cap() { return g_degree_cap.load(); }
void set_degree_cap(int cap) {
  if (cap < 0 || cap > 15) throw std::invalid_argument("set_degree_cap: cap must lie in [0, 15]");
  g_degree_cap.store(cap);
}

MonoKey mono_key(const std::vector<int>& degrees) {
  if (static_cast<int>(degrees.size()) > kMaxVars) throw std::invalid_argument("mono_key: too many variables");
  MonoKey k = 0;
  int total = 0;
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    if (degrees[v] < 0) throw std::invalid_argument("mono_key: negative degree");
    total += degrees[v];
    enforce_cap(total);
    k |= static_cast<MonoKey>(degrees[v]) << (4 * v);
  }
  return k;
}

int mono_total_degree(MonoKey k) {
  int t = 0;
  for (; k; k >>= 4) t += static_cast<int>(k & 0xF);
  return t;
}

ExpPolySum ExpPolySum::constant(int nvars, cplx c) {
  check_nvars(nvars);
  ExpPolySum f(nvars);
  if (c != 0.0) f.terms_.push_back({std::vector<cplx>(nvars, 0.0), {{0, c}}});
  return f;
}

ExpPolySum ExpPolySum::plane_wave(const std::vector<cplx>& wavevector, cplx coeff) {
  return monomial(wavevector, {}, coeff);
}

ExpPolySum ExpPolySum::monomial(const std::vector<cplx>& wavevector, const std::vector<int>& deg, cplx coeff) {
  const int n = static_cast<int>(wavevector.size());
  check_nvars(n);
  if (static_cast<int>(deg.size()) > n) throw std::invalid_argument("ExpPolySum::monomial: degree vector too long");
  ExpPolySum f(n);
  if (coeff != 0.0) f.terms_.push_back({wavevector, {{mono_key(deg), coeff}}});
  return f;
}

void ExpPolySum::push_term(ExpPolyTerm t) {
  if (static_cast<int>(t.wavevector.size()) != nvars_) throw std::invalid_argument("push_term: dimension mismatch");
  terms_.push_back(std::move(t));
}

int ExpPolySum::max_total_degree() const {
  int d = 0;
  for (const auto& t : terms_)
    for (const auto& m : t.monomials) d = std::max(d, mono_total_degree(m.key));
  return d;
}

double ExpPolySum::max_coeff() const {
  double s = 0.0;
  for (const auto& t : terms_)
    for (const auto& m : t.monomials) s = std::max(s, std::abs(m.coeff));
  return s;
}

bool ExpPolySum::depends_on(int j) const {
  for (const auto& t : terms_) {
    if (t.wavevector[j - 1] != 0.0) return true;
    for (const auto& m : t.monomials)
      if (mono_degree(m.key, j) != 0) return true;
  }
  return false;
}

template <class X>
static cplx eval_impl(const ExpPolySum& f, const std::vector<X>& x) {
  const int n = f.nvars();
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("eval: dimension mismatch");
  // powers[v][d] = x_v^d
  std::vector<std::vector<cplx>> powers(n);
  const int maxd = f.max_total_degree();
  for (int v = 0; v < n; ++v) {
    powers[v].resize(maxd + 1);
    powers[v][0] = 1.0;
    for (int d = 1; d <= maxd; ++d) powers[v][d] = powers[v][d - 1] * cplx(x[v]);
  }
  cplx total = 0.0;
  for (const auto& t : f.terms()) {
    cplx phase = 0.0;
    for (int v = 0; v < n; ++v) phase += t.wavevector[v] * cplx(x[v]);
    cplx p = 0.0;
    for (const auto& m : t.monomials) {
      cplx term = m.coeff;
      for (MonoKey k = m.key, v = 0; k; k >>= 4, ++v)
        if (k & 0xF) term *= powers[v][k & 0xF];
      p += term;
    }
    total += p * std::exp(cplx(0.0, 1.0) * phase);
  }
  return total;
}

cplx eval(const ExpPolySum& f, const std::vector<double>& x) { return eval_impl(f, x); }
cplx eval(const ExpPolySum& f, const std::vector<cplx>& x) { return eval_impl(f, x); }

ExpPolySum canonicalize(const ExpPolySum& f) {
  const int n = f.nvars();
  // Sort terms by a fixed generic projection of the wavevector, then merge
  // neighbours whose wavevectors agree within tolerance.
  static const double kWeights[2 * kMaxVars] = {
      1.0,        0.7548777, 0.5698403, 0.4301597, 0.3247179, 0.2451223, 0.1850362, 0.1396788,
      0.1054396,  0.0795932, 0.0600826, 0.0453546, 0.0342367, 0.0258441, 0.0195088, 0.0147266,
      0.8191725,  0.6710436, 0.5497004, 0.4502996, 0.3688728, 0.3021708, 0.2475302, 0.2027695,
      0.1661029,  0.1360667, 0.1114620, 0.0913067, 0.0747961, 0.0612711, 0.0501917, 0.0411158};
  struct Item {
    double key;
    const ExpPolyTerm* term;
  };
  std::vector<Item> items;
  items.reserve(f.size());
  for (const auto& t : f.terms()) {
    double k = 0.0;
    for (int v = 0; v < n; ++v) k += kWeights[v] * t.wavevector[v].real() + kWeights[kMaxVars + v] * t.wavevector[v].imag();
    items.push_back({k, &t});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.key < b.key; });

  struct Merged {
    double key;
    ExpPolyTerm term;
    std::vector<double> magnitude;  // largest contributing |coeff| per monomial
  };
  std::vector<Merged> merged;
  double weight_sum = 0.0;
  for (int v = 0; v < n; ++v) weight_sum += kWeights[v] + kWeights[kMaxVars + v];

  for (const auto& it : items) {
    const auto& mu = it.term->wavevector;
    const double tol = kMergeTol * wavevector_scale(mu);
    Merged* target = nullptr;
    for (std::size_t r = merged.size(); r-- > 0;) {
      if (merged[r].key < it.key - 2.0 * tol * weight_sum - 1e-300) break;
      bool same = true;
      for (int v = 0; v < n && same; ++v)
        if (std::abs(merged[r].term.wavevector[v] - mu[v]) > tol) same = false;
      if (same) {
        target = &merged[r];
        break;
      }
    }
    if (!target) {
      merged.push_back({it.key, ExpPolyTerm{mu, {}}, {}});
      target = &merged.back();
    }
    // merge monomials keeping a contribution magnitude per key
    auto& mons = target->term.monomials;
    auto& mags = target->magnitude;
    for (const auto& m : it.term->monomials) {
      auto pos = std::lower_bound(mons.begin(), mons.end(), m.key,
                                  [](const Monomial& a, MonoKey k) { return a.key < k; });
      const std::size_t idx = static_cast<std::size_t>(pos - mons.begin());
      if (pos != mons.end() && pos->key == m.key) {
        pos->coeff += m.coeff;
        mags[idx] = std::max(mags[idx], std::abs(m.coeff));
      } else {
        mons.insert(pos, m);
        mags.insert(mags.begin() + static_cast<std::ptrdiff_t>(idx), std::abs(m.coeff));
      }
    }
  }

  ExpPolySum out(n);
  for (auto& m : merged) {
    auto& mons = m.term.monomials;
    double term_max = 0.0;
    for (std::size_t i = 0; i < mons.size(); ++i)
      if (std::abs(mons[i].coeff) > kPruneTol * m.magnitude[i]) term_max = std::max(term_max, std::abs(mons[i].coeff));
    std::vector<Monomial> kept;
    for (std::size_t i = 0; i < mons.size(); ++i) {
      const double a = std::abs(mons[i].coeff);
      if (a == 0.0 || a <= kPruneTol * m.magnitude[i] || a < kPruneTol * term_max) continue;
      kept.push_back(mons[i]);
    }
    if (kept.empty()) continue;
    m.term.monomials = std::move(kept);
    out.mutable_terms().push_back(std::move(m.term));
  }
  return out;
}

ExpPolySum add(const ExpPolySum& f, const ExpPolySum& g) {
  check_same(f, g);
  ExpPolySum out = f;
  for (const auto& t : g.terms()) out.mutable_terms().push_back(t);
  return canonicalize(out);
}

ExpPolySum scale(cplx c, const ExpPolySum& f) {
  ExpPolySum out(f.nvars());
  if (c == 0.0) return out;
  for (auto t : f.terms()) {
    for (auto& m : t.monomials) m.coeff *= c;
    out.mutable_terms().push_back(std::move(t));
  }
  return out;
}

ExpPolySum mul(const ExpPolySum& f, const ExpPolySum& g) {
  check_same(f, g);
  ExpPolySum out(f.nvars());
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) {
      ExpPolyTerm t;
      t.wavevector.resize(f.nvars());
      for (int v = 0; v < f.nvars(); ++v) t.wavevector[v] = a.wavevector[v] + b.wavevector[v];
      t.monomials = poly_mul(a.monomials, b.monomials);
      out.mutable_terms().push_back(std::move(t));
    }
  return canonicalize(out);
}

ExpPolySum mul_plane_wave(const ExpPolySum& f, const std::vector<cplx>& wavevector, cplx c) {
  if (static_cast<int>(wavevector.size()) != f.nvars()) throw std::invalid_argument("mul_plane_wave: dimension mismatch");
  ExpPolySum out(f.nvars());
  if (c == 0.0) return out;
  for (auto t : f.terms()) {
    for (int v = 0; v < f.nvars(); ++v) t.wavevector[v] += wavevector[v];
    for (auto& m : t.monomials) m.coeff *= c;
    out.mutable_terms().push_back(std::move(t));
  }
  return out;
}

ExpPolySum operator+(const ExpPolySum& f, const ExpPolySum& g) { return add(f, g); }
ExpPolySum operator-(const ExpPolySum& f, const ExpPolySum& g) { return add(f, scale(-1.0, g)); }
ExpPolySum operator*(cplx c, const ExpPolySum& f) { return scale(c, f); }
ExpPolySum operator*(const ExpPolySum& f, const ExpPolySum& g) { return mul(f, g); }
ExpPolySum& operator+=(ExpPolySum& f, const ExpPolySum& g) {
  f = add(f, g);
  return f;
}

ExpPolySum derivative(const ExpPolySum& f, int j) {
  check_index(f, j);
  const cplx I(0.0, 1.0);
  ExpPolySum out(f.nvars());
  for (const auto& t : f.terms()) {
    ExpPolyTerm d{t.wavevector, {}};
    const cplx k = I * t.wavevector[j - 1];
    for (const auto& m : t.monomials) {
      if (k != 0.0) d.monomials.push_back({m.key, k * m.coeff});
      const int deg = mono_degree(m.key, j);
      if (deg > 0) d.monomials.push_back({with_degree(m.key, j, deg - 1), static_cast<double>(deg) * m.coeff});
    }
    normalize_poly(d.monomials);
    out.mutable_terms().push_back(std::move(d));
  }
  return canonicalize(out);
}

ExpPolySum antiderivative(const ExpPolySum& f, int j) {
  check_index(f, j);
  const cplx I(0.0, 1.0);
  ExpPolySum out(f.nvars());
  for (const auto& t : f.terms()) {
    const cplx kappa = t.wavevector[j - 1];
    const double ak = std::abs(kappa);
    ExpPolyTerm a{t.wavevector, {}};
    if (ak < kSeriesWavenumber) {
      // x^d e^{i kappa x} = sum_r (i kappa)^r / r! x^{d+r}; the series is exact
      // for kappa below the zero threshold and loses < 1e-17 relative otherwise.
      a.wavevector[j - 1] = 0.0;
      const int terms = ak < kZeroWavenumber ? 1 : 4;
      for (const auto& m : t.monomials) {
        const int d = mono_degree(m.key, j);
        cplx c = m.coeff;
        for (int r = 0; r < terms; ++r) {
          if (r > 0) c *= I * kappa / static_cast<double>(r);
          const int e = d + r + 1;
          MonoKey key = with_degree(m.key, j, e);
          enforce_cap(mono_total_degree(key));
          a.monomials.push_back({key, c / static_cast<double>(e)});
        }
      }
    } else {
      // x^d e^{ikx} -> e^{ikx} sum_r (-1)^r d!/(d-r)! x^{d-r} / (ik)^{r+1}
      const cplx ik = I * kappa;
      for (const auto& m : t.monomials) {
        const int d = mono_degree(m.key, j);
        cplx falling = 1.0;
        cplx ikpow = ik;
        for (int r = 0; r <= d; ++r) {
          if (r > 0) {
            falling *= -static_cast<double>(d - r + 1);
            ikpow *= ik;
          }
          a.monomials.push_back({with_degree(m.key, j, d - r), m.coeff * falling / ikpow});
        }
      }
    }
    normalize_poly(a.monomials);
    out.mutable_terms().push_back(std::move(a));
  }
  return out;
}

ExpPolySum substitute(const ExpPolySum& f, int j, const Bound& b) {
  check_index(f, j);
  if (b.is_constant()) {
    const cplx I(0.0, 1.0);
    ExpPolySum out(f.nvars());
    for (const auto& t : f.terms()) {
      ExpPolyTerm s{t.wavevector, {}};
      const cplx phase = std::exp(I * t.wavevector[j - 1] * b.value);
      s.wavevector[j - 1] = 0.0;
      for (const auto& m : t.monomials) {
        const int d = mono_degree(m.key, j);
        s.monomials.push_back({with_degree(m.key, j, 0), m.coeff * phase * std::pow(b.value, d)});
      }
      normalize_poly(s.monomials);
      out.mutable_terms().push_back(std::move(s));
    }
    return canonicalize(out);
  }
  const int k = b.index;
  if (k == j) throw std::invalid_argument("substitute: variable substituted by itself");
  check_index(f, k);
  ExpPolySum out(f.nvars());
  for (const auto& t : f.terms()) {
    ExpPolyTerm s{t.wavevector, {}};
    s.wavevector[k - 1] += s.wavevector[j - 1];
    s.wavevector[j - 1] = 0.0;
    for (const auto& m : t.monomials) {
      const int d = mono_degree(m.key, j);
      const int dk = mono_degree(m.key, k);
      MonoKey key = with_degree(with_degree(m.key, j, 0), k, dk + d);
      s.monomials.push_back({key, m.coeff});
    }
    normalize_poly(s.monomials);
    out.mutable_terms().push_back(std::move(s));
  }
  return canonicalize(out);
}

ExpPolySum substitute_affine(const ExpPolySum& f, int j, const AffineForm& form) {
  check_index(f, j);
  if (static_cast<int>(form.coeffs.size()) != f.nvars()) throw std::invalid_argument("substitute_affine: dimension mismatch");
  const cplx I(0.0, 1.0);
  ExpPolySum out(f.nvars());
  std::map<int, std::vector<Monomial>> power_cache;
  for (const auto& t : f.terms()) {
    ExpPolyTerm s{t.wavevector, {}};
    const cplx mj = t.wavevector[j - 1];
    s.wavevector[j - 1] = 0.0;
    for (int v = 0; v < f.nvars(); ++v) s.wavevector[v] += mj * form.coeffs[v];
    const cplx phase = std::exp(I * mj * form.offset);
    for (const auto& m : t.monomials) {
      const int d = mono_degree(m.key, j);
      auto it = power_cache.find(d);
      if (it == power_cache.end()) it = power_cache.emplace(d, affine_power(form, d)).first;
      const MonoKey rest = with_degree(m.key, j, 0);
      for (const auto& pm : it->second) s.monomials.push_back({mono_mul(rest, pm.key), m.coeff * phase * pm.coeff});
    }
    normalize_poly(s.monomials);
    out.mutable_terms().push_back(std::move(s));
  }
  return canonicalize(out);
}

ExpPolySum integrate(const ExpPolySum& f, int j, const Bound& lower, const Bound& upper) {
  check_index(f, j);
  for (const Bound* b : {&lower, &upper})
    if (!b->is_constant() && b->index == j) throw std::invalid_argument("integrate: bound references the integration variable");
  const ExpPolySum a = antiderivative(f, j);
  ExpPolySum out = substitute(a, j, upper);
  const ExpPolySum low = substitute(a, j, lower);
  for (const auto& t : low.terms()) {
    ExpPolyTerm neg = t;
    for (auto& m : neg.monomials) m.coeff = -m.coeff;
    out.mutable_terms().push_back(std::move(neg));
  }
  return canonicalize(out);
}

ExpPolySum remap(const ExpPolySum& f, const std::vector<int>& map, int new_nvars) {
  check_nvars(new_nvars);
  if (static_cast<int>(map.size()) != f.nvars()) throw std::invalid_argument("remap: map size mismatch");
  std::vector<char> used(new_nvars + 1, 0);
  for (int v = 1; v <= f.nvars(); ++v) {
    const int t = map[v - 1];
    if (t == 0) {
      if (f.depends_on(v)) throw std::invalid_argument("remap: dropping a variable the function depends on");
      continue;
    }
    if (t < 1 || t > new_nvars || used[t]) throw std::invalid_argument("remap: index map not injective");
    used[t] = 1;
  }
  ExpPolySum out(new_nvars);
  for (const auto& t : f.terms()) {
    ExpPolyTerm r{std::vector<cplx>(new_nvars, 0.0), {}};
    for (int v = 1; v <= f.nvars(); ++v)
      if (map[v - 1]) r.wavevector[map[v - 1] - 1] = t.wavevector[v - 1];
    for (const auto& m : t.monomials) {
      MonoKey key = 0;
      for (int v = 1; v <= f.nvars(); ++v) {
        const int d = mono_degree(m.key, v);
        if (d) key = with_degree(key, map[v - 1], d);
      }
      r.monomials.push_back({key, m.coeff});
    }
    normalize_poly(r.monomials);
    out.mutable_terms().push_back(std::move(r));
  }
  return out;
}

}  // namespace qnls
