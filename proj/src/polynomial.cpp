#include "polycirc/polynomial.hpp"

#include <numeric>
#include <sstream>
#include <unordered_map>

#include "polycirc/error.hpp"

namespace polycirc {

std::uint64_t degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), std::uint64_t{0});
}

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = degree(a);
  const auto db = degree(b);
  if (da != db) return da > db;
  return a > b;
}

Polynomial Polynomial::constant(const Semiring& s, std::size_t arity, Element c) {
  Polynomial p(arity);
  p.add_term(s, Monomial(arity, 0), c);
  return p;
}

Polynomial Polynomial::variable(const Semiring& s, std::size_t arity, std::size_t index) {
  Polynomial p(arity);
  Monomial m(arity, 0);
  m.at(index) = 1;
  p.add_term(s, m, s.one());
  return p;
}

const Element* Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? nullptr : &it->second;
}

void Polynomial::add_term(const Semiring& s, const Monomial& m, Element c) {
  if (c == s.zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = s.add(it->second, c);
    if (it->second == s.zero()) terms_.erase(it);
  }
}

Polynomial add(const Semiring& s, const Polynomial& p, const Polynomial& q) {
  Polynomial r = p;
  for (const auto& [m, c] : q.terms()) r.add_term(s, m, c);
  return r;
}

Polynomial multiply(const Semiring& s, const Polynomial& p, const Polynomial& q) {
  Polynomial r(p.arity());
  Monomial prod(p.arity());
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = mp[i] + mq[i];
      r.add_term(s, prod, s.mul(cp, cq));
    }
  }
  return r;
}

namespace {

Element power(const Semiring& s, Element base, std::uint32_t e) {
  Element r = s.one();
  while (e > 0) {
    if (e & 1) r = s.mul(r, base);
    e >>= 1;
    if (e > 0) base = s.mul(base, base);
  }
  return r;
}

Polynomial power(const Semiring& s, const Polynomial& p, std::uint32_t e) {
  Polynomial r = Polynomial::constant(s, p.arity(), s.one());
  Polynomial base = p;
  while (e > 0) {
    if (e & 1) r = multiply(s, r, base);
    e >>= 1;
    if (e > 0) base = multiply(s, base, base);
  }
  return r;
}

}  // namespace

Element evaluate(const Semiring& s, const Polynomial& p, const Tuple& x) {
  if (x.size() != p.arity()) {
    throw Error(ErrorCode::ShapeMismatch, "polynomial in " + std::to_string(p.arity()) +
                                              " variables evaluated at " +
                                              std::to_string(x.size()) + " values");
  }
  Element acc = s.zero();
  for (const auto& [m, c] : p.terms()) {
    Element term = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] > 0) term = s.mul(term, power(s, x[i], m[i]));
    }
    acc = s.add(acc, term);
  }
  return acc;
}

Polynomial formal_partial(const Semiring& s, const Polynomial& p, std::size_t i) {
  if (i >= p.arity()) {
    throw Error(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(i) +
                                                " out of range for arity " +
                                                std::to_string(p.arity()));
  }
  Polynomial r(p.arity());
  for (const auto& [m, c] : p.terms()) {
    if (m[i] == 0) continue;
    Monomial lowered = m;
    lowered[i] -= 1;
    r.add_term(s, lowered, s.times(m[i], c));
  }
  return r;
}

namespace {

PolyMap generator_poly(const Semiring& s, const Generator& g) {
  auto var = [&](std::size_t arity, std::size_t i) { return Polynomial::variable(s, arity, i); };
  switch (g.tag()) {
    case GenTag::Add:
      return {2, {add(s, var(2, 0), var(2, 1))}};
    case GenTag::Mul:
      return {2, {multiply(s, var(2, 0), var(2, 1))}};
    case GenTag::Zero:
      return {0, {Polynomial(0)}};
    case GenTag::One:
      return {0, {Polynomial::constant(s, 0, s.one())}};
    case GenTag::Const:
      if (!s.contains(g.value())) {
        throw Error(ErrorCode::ConstOutOfRange,
                    "constant " + std::to_string(g.value().code) + " outside carrier of " + s.id());
      }
      return {0, {Polynomial::constant(s, 0, g.value())}};
    case GenTag::Copy:
      return {1, {var(1, 0), var(1, 0)}};
    case GenTag::Discard:
      return {1, {}};
    case GenTag::Identity:
      return {1, {var(1, 0)}};
    case GenTag::Twist:
      return {2, {var(2, 1), var(2, 0)}};
    case GenTag::Negate: {
      if (!s.has_neg()) {
        throw Error(ErrorCode::UnsupportedGenerator, "negate is not available over " + s.id());
      }
      Polynomial p(1);
      p.add_term(s, Monomial{1}, s.neg(s.one()));
      return {1, {p}};
    }
    case GenTag::Compare:
      throw Error(ErrorCode::NonPolynomialGenerator, "Compare has no polynomial normal form");
    case GenTag::Extension:
      throw Error(ErrorCode::NonPolynomialGenerator,
                  "extension '" + g.extension()->name + "' has no polynomial normal form");
  }
  throw Error(ErrorCode::UnsupportedGenerator, "unknown generator");
}

// p(q_0, ..., q_{k-1}) where p has arity k and every q_j has arity `arity`.
Polynomial substitute(const Semiring& s, const Polynomial& p, const std::vector<Polynomial>& q,
                      std::size_t arity) {
  Polynomial r(arity);
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial::constant(s, arity, c);
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] > 0) term = multiply(s, term, power(s, q[j], m[j]));
    }
    r = add(s, r, term);
  }
  return r;
}

// Re-indexes p into `arity` variables starting at `offset`.
Polynomial shift(const Polynomial& p, std::size_t arity, std::size_t offset, const Semiring& s) {
  Polynomial r(arity);
  for (const auto& [m, c] : p.terms()) {
    Monomial wide(arity, 0);
    std::copy(m.begin(), m.end(), wide.begin() + static_cast<std::ptrdiff_t>(offset));
    r.add_term(s, wide, c);
  }
  return r;
}

class Normaliser {
 public:
  explicit Normaliser(const Semiring& s) : s_(s) {}

  PolyMap operator()(const Circuit& c) {
    if (auto it = memo_.find(c.node_id()); it != memo_.end()) return it->second;
    PolyMap r;
    switch (c.kind()) {
      case Circuit::Kind::Gen:
        r = generator_poly(s_, c.generator());
        break;
      case Circuit::Kind::Seq: {
        const PolyMap f = (*this)(c.first());
        const PolyMap g = (*this)(c.second());
        r.arity = f.arity;
        for (const auto& p : g.polys) r.polys.push_back(substitute(s_, p, f.polys, f.arity));
        break;
      }
      case Circuit::Kind::Par: {
        const PolyMap f = (*this)(c.first());
        const PolyMap g = (*this)(c.second());
        r.arity = f.arity + g.arity;
        for (const auto& p : f.polys) r.polys.push_back(shift(p, r.arity, 0, s_));
        for (const auto& p : g.polys) r.polys.push_back(shift(p, r.arity, f.arity, s_));
        break;
      }
    }
    memo_.emplace(c.node_id(), r);
    return r;
  }

 private:
  const Semiring& s_;
  std::unordered_map<const void*, PolyMap> memo_;
};

}  // namespace

PolyMap to_poly(const Semiring& s, const Circuit& c) {
  Normaliser n(s);
  return n(c);
}

Tuple evaluate(const Semiring& s, const PolyMap& pm, const Tuple& x) {
  Tuple out;
  out.reserve(pm.polys.size());
  for (const auto& p : pm.polys) out.push_back(evaluate(s, p, x));
  return out;
}

Tuple jt_apply(const Semiring& s, const PolyMap& pm, const Tuple& x, const Tuple& d) {
  if (x.size() != pm.arity || d.size() != pm.polys.size()) {
    throw Error(ErrorCode::ShapeMismatch, "jt_apply on " + to_string(pm.shape()) + " with |x|=" +
                                              std::to_string(x.size()) +
                                              ", |d|=" + std::to_string(d.size()));
  }
  Tuple out(pm.arity, s.zero());
  for (std::size_t i = 0; i < pm.arity; ++i) {
    for (std::size_t j = 0; j < pm.polys.size(); ++j) {
      const Element dij = evaluate(s, formal_partial(s, pm.polys[j], i), x);
      out[i] = s.add(out[i], s.mul(d[j], dij));
    }
  }
  return out;
}

Tuple jacobian_apply(const Semiring& s, const PolyMap& pm, const Tuple& x, const Tuple& dx) {
  if (x.size() != pm.arity || dx.size() != pm.arity) {
    throw Error(ErrorCode::ShapeMismatch, "jacobian_apply on " + to_string(pm.shape()) +
                                              " with |x|=" + std::to_string(x.size()) +
                                              ", |dx|=" + std::to_string(dx.size()));
  }
  Tuple out(pm.polys.size(), s.zero());
  for (std::size_t j = 0; j < pm.polys.size(); ++j) {
    for (std::size_t i = 0; i < pm.arity; ++i) {
      const Element dij = evaluate(s, formal_partial(s, pm.polys[j], i), x);
      out[j] = s.add(out[j], s.mul(dij, dx[i]));
    }
  }
  return out;
}

bool poly_equal(const PolyMap& a, const PolyMap& b) {
  if (a.shape() != b.shape()) {
    throw Error(ErrorCode::ShapeMismatch, "cannot compare polynomial maps of shapes " +
                                              to_string(a.shape()) + " and " + to_string(b.shape()));
  }
  return a == b;
}

std::string render(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    const bool constant_term = degree(m) == 0;
    bool wrote = false;
    if (c.code != 1 || constant_term) {
      os << c.code;
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "·";
      os << 'x' << i;
      if (m[i] > 1) os << '^' << m[i];
      wrote = true;
    }
  }
  return os.str();
}

std::string render(const PolyMap& pm) {
  std::ostringstream os;
  for (std::size_t j = 0; j < pm.polys.size(); ++j) {
    os << 'y' << j << " = " << render(pm.polys[j]) << '\n';
  }
  return os.str();
}

}  // namespace polycirc
