#include "qlab/variation.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "qlab/error.hpp"

namespace qlab {

namespace {

bool equivalent_in(const FinitePreorder& o, Elem a, Elem b) { return o.equivalent(a, b); }

std::string arrow(const Quantaloid& q, ObjId x, ObjId y, Elem f) { return q.arrow_name(x, y, f); }

/// Checks table shapes shared by pseudofunctors and modules.
template <class FiberSize>
void check_actions_total(const Quantaloid& q, std::size_t fiber_count, FiberSize&& fiber_size,
                         const ArrowActions& actions) {
  const std::size_t n = q.size();
  if (fiber_count != n) throw Error(ErrorKind::PartialTable, {"fibers"}, "one fiber per base object");
  if (actions.size() != n * n) throw Error(ErrorKind::PartialTable, {"actions"});
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      const auto& tables = actions[x * n + y];
      if (tables.size() != q.hom(x, y).size())
        throw Error(ErrorKind::PartialTable, {"action " + q.object(x) + " " + q.object(y)});
      for (Elem f = 0; f < tables.size(); ++f) {
        if (tables[f].size() != fiber_size(y))
          throw Error(ErrorKind::PartialTable, {"action " + arrow(q, x, y, f)});
        for (Elem v : tables[f])
          if (v >= fiber_size(x))
            throw Error(ErrorKind::PartialTable, {"action " + arrow(q, x, y, f)}, "value out of range");
      }
    }
}

std::vector<std::size_t> fiber_positions(const QCategory& c) {
  std::vector<std::size_t> pos(c.size());
  for (ObjId x = 0; x < c.base().size(); ++x) {
    const auto members = c.objects_of_type(x);
    for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = i;
  }
  return pos;
}

/// Object index in C^F of element i of fiber X, for categories built fiber by fiber.
std::vector<std::size_t> fiber_offsets(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> off(sizes.size() + 1, 0);
  for (std::size_t x = 0; x < sizes.size(); ++x) off[x + 1] = off[x] + sizes[x];
  return off;
}

std::vector<std::vector<Elem>> identity_maps(const std::vector<FinitePreorder>& fibers) {
  std::vector<std::vector<Elem>> maps;
  for (const auto& f : fibers) {
    std::vector<Elem> id(f.size());
    for (Elem e = 0; e < f.size(); ++e) id[e] = e;
    maps.push_back(std::move(id));
  }
  return maps;
}

std::shared_ptr<const FinitePreorder> share(const FinitePreorder& o) {
  return std::make_shared<const FinitePreorder>(o);
}

}  // namespace

PseudofunctorReport validate_pseudofunctor(const Pseudofunctor2& p) {
  const auto& q = *p.base;
  const std::size_t n = q.size();
  check_actions_total(q, p.fibers.size(), [&](ObjId x) { return p.fibers[x].size(); }, p.actions);

  PseudofunctorReport r;
  r.valid = true;
  auto fail = [&](std::vector<std::string> w) {
    r.valid = false;
    r.witnesses = std::move(w);
  };
  for (ObjId x = 0; x < n && r.valid; ++x)
    for (ObjId y = 0; y < n && r.valid; ++y) {
      const auto& hom = q.hom(x, y);
      for (Elem f = 0; f < hom.size() && r.valid; ++f)
        if (!is_monotone(p.fibers[y], p.fibers[x], p.action(x, y, f)))
          fail({"monotone", arrow(q, x, y, f)});
      for (Elem f = 0; f < hom.size() && r.valid; ++f)
        for (Elem f2 = 0; f2 < hom.size() && r.valid; ++f2) {
          if (!hom.leq(f, f2)) continue;
          for (Elem e = 0; e < p.fibers[y].size() && r.valid; ++e)
            if (!p.fibers[x].leq(p.apply(x, y, f, e), p.apply(x, y, f2, e)))
              fail({"local-monotone", arrow(q, x, y, f), arrow(q, x, y, f2), p.fibers[y].name(e)});
        }
    }
  for (ObjId x = 0; x < n && r.valid; ++x)
    for (Elem e = 0; e < p.fibers[x].size() && r.valid; ++e)
      if (!equivalent_in(p.fibers[x], p.apply(x, x, q.identity(x), e), e))
        fail({"unit", q.object(x), p.fibers[x].name(e)});
  for (ObjId x = 0; x < n && r.valid; ++x)
    for (ObjId y = 0; y < n && r.valid; ++y)
      for (ObjId z = 0; z < n && r.valid; ++z)
        for (Elem g = 0; g < q.hom(y, z).size() && r.valid; ++g)
          for (Elem f = 0; f < q.hom(x, y).size() && r.valid; ++f) {
            const Elem gf = q.compose(x, y, z, g, f);
            for (Elem e = 0; e < p.fibers[z].size() && r.valid; ++e) {
              const Elem lhs = p.apply(x, z, gf, e);
              const Elem rhs = p.apply(x, y, f, p.apply(y, z, g, e));
              if (!equivalent_in(p.fibers[x], lhs, rhs))
                fail({"composition", arrow(q, y, z, g), arrow(q, x, y, f), p.fibers[z].name(e)});
            }
          }

  r.closed = true;
  std::vector<std::string> closed_witness;
  for (ObjId x = 0; x < n && r.closed; ++x)
    for (ObjId y = 0; y < n && r.closed; ++y) {
      const auto& hom = q.hom(x, y);
      const auto& fx = p.fibers[x];
      for (Elem e = 0; e < p.fibers[y].size() && r.closed; ++e) {
        if (!fx.is_supremum(p.apply(x, y, hom.bottom(), e), {})) {
          r.closed = false;
          closed_witness = {"empty-join", arrow(q, x, y, hom.bottom()), p.fibers[y].name(e)};
        }
        for (Elem f = 0; f < hom.size() && r.closed; ++f)
          for (Elem f2 = f + 1; f2 < hom.size() && r.closed; ++f2) {
            const Elem pair[] = {p.apply(x, y, f, e), p.apply(x, y, f2, e)};
            if (!fx.is_supremum(p.apply(x, y, hom.join(f, f2), e), pair)) {
              r.closed = false;
              closed_witness = {"binary-join", arrow(q, x, y, f), arrow(q, x, y, f2),
                                p.fibers[y].name(e)};
            }
          }
      }
    }
  if (r.valid && !r.closed) r.witnesses = std::move(closed_witness);
  return r;
}

void require_closed(const Pseudofunctor2& p) {
  const auto r = validate_pseudofunctor(p);
  if (!r.valid) throw Error(ErrorKind::InvalidPseudofunctor, r.witnesses);
  if (!r.closed) throw Error(ErrorKind::NotClosed, r.witnesses);
}

Pseudofunctor2 category_to_pseudofunctor(const QCategory& c) {
  const auto& q = c.base();
  const std::size_t n = q.size();
  if (auto miss = missing_tensor(c))
    throw Error(ErrorKind::NotTensored, {c.object(miss->first), q.arrow_name(miss->second)});
  const auto pos = fiber_positions(c);
  Pseudofunctor2 p;
  p.base = c.base_ptr();
  p.name = c.name();
  std::vector<std::vector<std::size_t>> members(n);
  for (ObjId x = 0; x < n; ++x) {
    auto fib = fiber(c, x);
    members[x] = std::move(fib.members);
    p.fibers.push_back(*fib.order);
  }
  p.actions.resize(n * n);
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (Elem f = 0; f < q.hom(x, y).size(); ++f) {
        std::vector<Elem> table;
        for (std::size_t obj : members[y])
          table.push_back(pos[tensor(c, obj, QArrow{x, y, f}).representative()]);
        p.actions[x * n + y].push_back(std::move(table));
      }
  return p;
}

QCategory pseudofunctor_to_category(const Pseudofunctor2& p) {
  require_closed(p);
  const auto& q = *p.base;
  const std::size_t n = q.size();
  std::vector<std::size_t> sizes;
  for (const auto& f : p.fibers) sizes.push_back(f.size());
  const auto off = fiber_offsets(sizes);
  const std::size_t total = off.back();

  std::unordered_set<std::string> seen;
  bool unique = true;
  for (const auto& f : p.fibers)
    for (const auto& name : f.names()) unique = seen.insert(name).second && unique;

  CategoryData d;
  d.base = p.base;
  d.name = p.name;
  for (ObjId x = 0; x < n; ++x)
    for (Elem e = 0; e < sizes[x]; ++e) {
      d.objects.push_back(unique ? p.fibers[x].name(e) : q.object(x) + "." + p.fibers[x].name(e));
      d.types.push_back(x);
    }
  d.hom.resize(total * total);
  for (ObjId y = 0; y < n; ++y)
    for (ObjId x = 0; x < n; ++x) {
      const auto& hom = q.hom(x, y);
      for (Elem ey = 0; ey < sizes[y]; ++ey)
        for (Elem ex = 0; ex < sizes[x]; ++ex) {
          Elem acc = hom.bottom();
          for (Elem f = 0; f < hom.size(); ++f)
            if (p.fibers[x].leq(p.apply(x, y, f, ey), ex)) acc = hom.join(acc, f);
          d.hom[(off[y] + ey) * total + off[x] + ex] = acc;
        }
    }
  QCategory c = validate_category(std::move(d));
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (Elem f = 0; f < q.hom(x, y).size(); ++f)
        for (Elem ey = 0; ey < sizes[y]; ++ey)
          if (!tensor(c, off[y] + ey, QArrow{x, y, f}).contains(off[x] + p.apply(x, y, f, ey)))
            throw std::logic_error("pseudofunctor_to_category: F f(y) is not a tensor");
  return c;
}

std::vector<std::string> lax_failure(const LaxNat& t) {
  const auto& q = *t.source.base;
  const std::size_t n = q.size();
  if (t.components.size() != n) return {"components"};
  for (ObjId x = 0; x < n; ++x) {
    if (t.components[x].size() != t.source.fibers[x].size()) return {"component", q.object(x)};
    for (Elem v : t.components[x])
      if (v >= t.target.fibers[x].size()) return {"component", q.object(x)};
    if (!is_monotone(t.source.fibers[x], t.target.fibers[x], t.components[x]))
      return {"monotone", q.object(x)};
  }
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (Elem f = 0; f < q.hom(x, y).size(); ++f)
        for (Elem e = 0; e < t.source.fibers[y].size(); ++e) {
          const Elem lhs = t.target.apply(x, y, f, t.components[y][e]);
          const Elem rhs = t.components[x][t.source.apply(x, y, f, e)];
          if (!t.target.fibers[x].leq(lhs, rhs))
            return {"lax-square", arrow(q, x, y, f), t.source.fibers[y].name(e)};
        }
  return {};
}

LaxNat functor_to_laxnat(const QFunctor& f) {
  LaxNat t{category_to_pseudofunctor(*f.source), category_to_pseudofunctor(*f.target), {}};
  const auto pos = fiber_positions(*f.target);
  for (ObjId x = 0; x < f.source->base().size(); ++x) {
    std::vector<Elem> comp;
    for (std::size_t obj : f.source->objects_of_type(x)) comp.push_back(pos[f(obj)]);
    t.components.push_back(std::move(comp));
  }
  if (!lax_failure(t).empty()) throw std::logic_error("functor_to_laxnat: lax square fails");
  return t;
}

PseudofunctorLevels classify_pseudofunctor(const Pseudofunctor2& p) {
  PseudofunctorLevels l;
  const auto r = validate_pseudofunctor(p);
  if (!r.valid || !r.closed) return l;
  const auto& q = *p.base;
  const std::size_t n = q.size();
  l.closed_into_cat_tensor2 = std::all_of(p.fibers.begin(), p.fibers.end(), [](const FinitePreorder& f) {
    return f.empty() || f.has_bottom();
  });
  if (!l.closed_into_cat_tensor2) return l;

  std::vector<std::shared_ptr<const FinitePreorder>> shared;
  for (const auto& f : p.fibers) shared.push_back(share(f));
  l.maps_level = std::all_of(p.fibers.begin(), p.fibers.end(), [](const FinitePreorder& f) {
    return f.empty() || f.has_top();
  });
  for (ObjId x = 0; x < n && l.maps_level; ++x)
    for (ObjId y = 0; y < n && l.maps_level; ++y)
      for (Elem f = 0; f < q.hom(x, y).size() && l.maps_level; ++f)
        l.maps_level = find_right_adjoint(MonotoneMap{shared[y], shared[x], p.action(x, y, f)}).has_value();
  l.cocont_level = l.maps_level && std::all_of(p.fibers.begin(), p.fibers.end(),
                                               [](const FinitePreorder& f) { return f.is_complete(); });
  l.skeletal_level = l.cocont_level && std::all_of(p.fibers.begin(), p.fibers.end(), [](const FinitePreorder& f) {
    return f.is_antisymmetric();
  });
  return l;
}

TransformationFlags classify_transformation(const LaxNat& t, std::size_t cap) {
  const auto& q = *t.source.base;
  const std::size_t n = q.size();
  TransformationFlags flags;
  flags.pseudonatural = true;
  for (ObjId x = 0; x < n && flags.pseudonatural; ++x)
    for (ObjId y = 0; y < n && flags.pseudonatural; ++y)
      for (Elem f = 0; f < q.hom(x, y).size() && flags.pseudonatural; ++f)
        for (Elem e = 0; e < t.source.fibers[y].size() && flags.pseudonatural; ++e)
          flags.pseudonatural = t.target.fibers[x].equivalent(t.target.apply(x, y, f, t.components[y][e]),
                                                              t.components[x][t.source.apply(x, y, f, e)]);

  flags.bottom_preserving_components = true;
  flags.left_adjoint_components = true;
  flags.sup_morphism_components = true;
  for (ObjId x = 0; x < n; ++x) {
    const auto& src = t.source.fibers[x];
    const auto& dst = t.target.fibers[x];
    const auto& comp = t.components[x];
    const auto bottoms = src.suprema({});
    if (!bottoms.empty() && !dst.is_supremum(comp[bottoms.front()], {}))
      flags.bottom_preserving_components = false;
    if (!find_right_adjoint(MonotoneMap{share(src), share(dst), comp}))
      flags.left_adjoint_components = false;
    if (src.size() >= 63 || (std::size_t{1} << src.size()) > cap)
      throw Error(ErrorKind::EnumerationCapExceeded, {"fiber " + q.object(x)});
    std::vector<Elem> subset, image;
    for (std::size_t mask = 0; mask < (std::size_t{1} << src.size()) && flags.sup_morphism_components; ++mask) {
      subset.clear();
      image.clear();
      for (Elem e = 0; e < src.size(); ++e)
        if (mask >> e & 1) {
          subset.push_back(e);
          image.push_back(comp[e]);
        }
      const auto sups = src.suprema(subset);
      if (!sups.empty() && !dst.is_supremum(comp[sups.front()], image))
        flags.sup_morphism_components = false;
    }
  }
  return flags;
}

std::vector<std::string> pseudofunctor_iso_failure(const Pseudofunctor2& a, const Pseudofunctor2& b,
                                                   const std::vector<std::vector<Elem>>& maps) {
  if (!(*a.base == *b.base)) return {"base", a.base->name(), b.base->name()};
  const auto& q = *a.base;
  const std::size_t n = q.size();
  if (maps.size() != n) return {"maps"};
  for (ObjId x = 0; x < n; ++x) {
    const auto& m = maps[x];
    const auto& fa = a.fibers[x];
    const auto& fb = b.fibers[x];
    if (m.size() != fa.size() || fa.size() != fb.size()) return {"fiber-size", q.object(x)};
    std::vector<char> hit(fb.size(), 0);
    for (Elem v : m) {
      if (v >= fb.size() || hit[v]) return {"bijection", q.object(x)};
      hit[v] = 1;
    }
    for (Elem i = 0; i < fa.size(); ++i)
      for (Elem j = 0; j < fa.size(); ++j)
        if (fa.leq(i, j) != fb.leq(m[i], m[j])) return {"order", q.object(x), fa.name(i), fa.name(j)};
  }
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (Elem f = 0; f < q.hom(x, y).size(); ++f)
        for (Elem e = 0; e < a.fibers[y].size(); ++e)
          if (!b.fibers[x].equivalent(maps[x][a.apply(x, y, f, e)], b.apply(x, y, f, maps[y][e])))
            return {"action", arrow(q, x, y, f), a.fibers[y].name(e)};
  return {};
}

std::vector<std::string> category_iso_failure(const QCategory& a, const QCategory& b,
                                              const std::vector<std::size_t>& map) {
  if (!(a.base() == b.base())) return {"base", a.base().name(), b.base().name()};
  if (a.size() != b.size() || map.size() != a.size()) return {"size"};
  std::vector<char> hit(b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (map[i] >= b.size() || hit[map[i]]) return {"bijection", a.object(i)};
    hit[map[i]] = 1;
    if (a.type(i) != b.type(map[i])) return {"type", a.object(i)};
  }
  for (std::size_t y = 0; y < a.size(); ++y)
    for (std::size_t x = 0; x < a.size(); ++x)
      if (a.hom(y, x) != b.hom(map[y], map[x])) return {"hom", a.object(y), a.object(x)};
  return {};
}

void validate_module(const QModule& m) {
  const auto& q = *m.base;
  const std::size_t n = q.size();
  check_actions_total(q, m.fibers.size(), [&](ObjId x) { return m.fibers[x].size(); }, m.actions);
  auto elt = [&](ObjId x, Elem e) { return m.fibers[x].name(e); };

  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (Elem f = 0; f < q.hom(x, y).size(); ++f) {
        const auto check = is_sup_morphism(m.fibers[y], m.fibers[x], m.action(x, y, f));
        if (!check.ok) {
          std::string subset = "{";
          for (std::size_t i = 0; i < check.witness.size(); ++i)
            subset += (i ? "," : "") + elt(y, check.witness[i]);
          throw Error(ErrorKind::ModuleLawFails, {"sup-morphism", arrow(q, x, y, f), subset + "}"});
        }
      }
  for (ObjId x = 0; x < n; ++x)
    for (Elem e = 0; e < m.fibers[x].size(); ++e)
      if (m.apply(x, x, q.identity(x), e) != e)
        throw Error(ErrorKind::ModuleLawFails, {"unit", q.object(x), elt(x, e)});
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z)
        for (Elem g = 0; g < q.hom(y, z).size(); ++g)
          for (Elem f = 0; f < q.hom(x, y).size(); ++f)
            for (Elem e = 0; e < m.fibers[z].size(); ++e)
              if (m.apply(x, z, q.compose(x, y, z, g, f), e) != m.apply(x, y, f, m.apply(y, z, g, e)))
                throw Error(ErrorKind::ModuleLawFails,
                            {"composition", arrow(q, y, z, g), arrow(q, x, y, f), elt(z, e)});
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      const auto& hom = q.hom(x, y);
      for (Elem e = 0; e < m.fibers[y].size(); ++e) {
        if (m.apply(x, y, hom.bottom(), e) != m.fibers[x].bottom())
          throw Error(ErrorKind::ModuleLawFails, {"local-sup", arrow(q, x, y, hom.bottom()), elt(y, e)});
        for (Elem f = 0; f < hom.size(); ++f)
          for (Elem f2 = f + 1; f2 < hom.size(); ++f2)
            if (m.apply(x, y, hom.join(f, f2), e) !=
                m.fibers[x].join(m.apply(x, y, f, e), m.apply(x, y, f2, e)))
              throw Error(ErrorKind::ModuleLawFails,
                          {"local-sup", arrow(q, x, y, f), arrow(q, x, y, f2), elt(y, e)});
      }
    }
}

Pseudofunctor2 module_to_pseudofunctor(const QModule& m) {
  Pseudofunctor2 p;
  p.base = m.base;
  p.name = m.name;
  for (const auto& f : m.fibers) p.fibers.push_back(f.order());
  p.actions = m.actions;
  return p;
}

QCategory module_to_category(const QModule& m) {
  validate_module(m);
  return pseudofunctor_to_category(module_to_pseudofunctor(m));
}

QModule category_to_module(const QCategory& c, std::size_t cap) {
  const auto fs = fibers(c);
  if (!fs.skeletal) {
    for (const auto& f : fs.fibers)
      for (std::size_t i = 0; i < f.members.size(); ++i)
        for (std::size_t j = i + 1; j < f.members.size(); ++j)
          if (f.order->equivalent(i, j))
            throw Error(ErrorKind::NotSkeletal, {c.object(f.members[i]), c.object(f.members[j])});
  }
  const auto report = completeness_report(std::make_shared<const QCategory>(c), cap);
  if (!report.cocomplete) throw Error(ErrorKind::NotCocomplete, {report.witnesses.at("cocomplete")});
  auto p = category_to_pseudofunctor(c);
  QModule m;
  m.base = p.base;
  m.name = p.name;
  for (auto& f : p.fibers) m.fibers.emplace_back(std::move(f));
  m.actions = std::move(p.actions);
  try {
    validate_module(m);
  } catch (const Error& e) {
    throw std::logic_error(std::string("category_to_module: result is not a module: ") + e.what());
  }
  return m;
}

namespace {

std::vector<std::size_t> roundtrip_object_map(const QCategory& c) {
  std::vector<std::size_t> sizes;
  for (ObjId x = 0; x < c.base().size(); ++x) sizes.push_back(c.objects_of_type(x).size());
  const auto off = fiber_offsets(sizes);
  const auto pos = fiber_positions(c);
  std::vector<std::size_t> map(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) map[i] = off[c.type(i)] + pos[i];
  return map;
}

RoundTrip from_failure(std::vector<std::string> failure) {
  RoundTrip r;
  r.isomorphic = failure.empty();
  r.witnesses = std::move(failure);
  return r;
}

}  // namespace

RoundTrip category_roundtrip(const QCategory& c) {
  const auto back = pseudofunctor_to_category(category_to_pseudofunctor(c));
  return from_failure(category_iso_failure(c, back, roundtrip_object_map(c)));
}

RoundTrip pseudofunctor_roundtrip(const Pseudofunctor2& p) {
  const auto back = category_to_pseudofunctor(pseudofunctor_to_category(p));
  return from_failure(pseudofunctor_iso_failure(p, back, identity_maps(p.fibers)));
}

RoundTrip module_roundtrip(const QModule& m) {
  const auto back = category_to_module(module_to_category(m));
  const auto p = module_to_pseudofunctor(m);
  auto failure = pseudofunctor_iso_failure(p, module_to_pseudofunctor(back), identity_maps(p.fibers));
  if (failure.empty() && m.actions != back.actions) failure = {"strict-action"};
  return from_failure(std::move(failure));
}

RoundTrip skeletal_category_roundtrip(const QCategory& c, std::size_t cap) {
  const auto back = module_to_category(category_to_module(c, cap));
  return from_failure(category_iso_failure(c, back, roundtrip_object_map(c)));
}

void validate_action(const QuantaleAction& a) {
  const auto& k = *a.quantale;
  if (k.size() != 1) throw Error(ErrorKind::NotOneObject, {k.name()});
  const auto& kk = k.hom(0, 0);
  const auto& m = a.carrier;
  if (a.act.size() != m.size() * kk.size()) throw Error(ErrorKind::PartialTable, {"act"});
  for (Elem v : a.act)
    if (v >= m.size()) throw Error(ErrorKind::PartialTable, {"act"}, "value out of range");

  for (Elem e = 0; e < m.size(); ++e)
    if (a(e, k.identity(0)) != e) throw Error(ErrorKind::ActionLawFails, {"unit", m.name(e)});
  for (Elem e = 0; e < m.size(); ++e)
    for (Elem g = 0; g < kk.size(); ++g)
      for (Elem f = 0; f < kk.size(); ++f)
        if (a(e, k.compose(0, 0, 0, g, f)) != a(a(e, g), f))
          throw Error(ErrorKind::ActionLawFails, {"associativity", m.name(e), kk.name(g), kk.name(f)});
  for (Elem f = 0; f < kk.size(); ++f) {
    if (a(m.bottom(), f) != m.bottom())
      throw Error(ErrorKind::ActionLawFails, {"join-carrier", m.name(m.bottom()), kk.name(f)});
    for (Elem e = 0; e < m.size(); ++e)
      for (Elem e2 = e + 1; e2 < m.size(); ++e2)
        if (a(m.join(e, e2), f) != m.join(a(e, f), a(e2, f)))
          throw Error(ErrorKind::ActionLawFails, {"join-carrier", m.name(e), m.name(e2), kk.name(f)});
  }
  for (Elem e = 0; e < m.size(); ++e) {
    if (a(e, kk.bottom()) != m.bottom())
      throw Error(ErrorKind::ActionLawFails, {"join-quantale", m.name(e), kk.name(kk.bottom())});
    for (Elem f = 0; f < kk.size(); ++f)
      for (Elem f2 = f + 1; f2 < kk.size(); ++f2)
        if (a(e, kk.join(f, f2)) != m.join(a(e, f), a(e, f2)))
          throw Error(ErrorKind::ActionLawFails, {"join-quantale", m.name(e), kk.name(f), kk.name(f2)});
  }
}

QModule action_to_module(const QuantaleAction& a) {
  validate_action(a);
  const auto& kk = a.quantale->hom(0, 0);
  QModule m;
  m.base = a.quantale;
  m.name = a.name;
  m.fibers = {a.carrier};
  m.actions.resize(1);
  for (Elem f = 0; f < kk.size(); ++f) {
    std::vector<Elem> table;
    for (Elem e = 0; e < a.carrier.size(); ++e) table.push_back(a(e, f));
    m.actions[0].push_back(std::move(table));
  }
  try {
    validate_module(m);
  } catch (const Error& e) {
    throw std::logic_error(std::string("action_to_module: not a reversed representation: ") + e.what());
  }
  return m;
}

QuantaleAction module_to_action(const QModule& m) {
  if (m.base->size() != 1) throw Error(ErrorKind::NotOneObject, {m.base->name()});
  validate_module(m);
  const auto& kk = m.base->hom(0, 0);
  QuantaleAction a;
  a.quantale = m.base;
  a.name = m.name;
  a.carrier = m.fibers[0];
  a.act.resize(a.carrier.size() * kk.size());
  for (Elem e = 0; e < a.carrier.size(); ++e)
    for (Elem f = 0; f < kk.size(); ++f) a.act[e * kk.size() + f] = m.apply(0, 0, f, e);
  return a;
}

std::vector<std::string> module_morphism_failure(const QModule& m, const QModule& n,
                                                 const std::vector<std::vector<Elem>>& alpha) {
  if (!(*m.base == *n.base)) return {"base"};
  const auto& q = *m.base;
  const std::size_t k = q.size();
  if (alpha.size() != k) return {"components"};
  for (ObjId x = 0; x < k; ++x) {
    if (alpha[x].size() != m.fibers[x].size()) return {"component", q.object(x)};
    for (Elem v : alpha[x])
      if (v >= n.fibers[x].size()) return {"component", q.object(x)};
    if (!is_sup_morphism(m.fibers[x], n.fibers[x], alpha[x]).ok) return {"sup-morphism", q.object(x)};
  }
  for (ObjId x = 0; x < k; ++x)
    for (ObjId y = 0; y < k; ++y)
      for (Elem f = 0; f < q.hom(x, y).size(); ++f)
        for (Elem e = 0; e < m.fibers[y].size(); ++e)
          if (alpha[x][m.apply(x, y, f, e)] != n.apply(x, y, f, alpha[y][e]))
            return {"naturality", arrow(q, x, y, f), m.fibers[y].name(e)};
  return {};
}

std::vector<std::string> action_morphism_failure(const QuantaleAction& a, const QuantaleAction& b,
                                                 const std::vector<Elem>& alpha) {
  if (!(*a.quantale == *b.quantale)) return {"quantale"};
  if (alpha.size() != a.carrier.size()) return {"map"};
  for (Elem v : alpha)
    if (v >= b.carrier.size()) return {"map"};
  if (!is_sup_morphism(a.carrier, b.carrier, alpha).ok) return {"join-preserving"};
  const auto& kk = a.quantale->hom(0, 0);
  for (Elem e = 0; e < a.carrier.size(); ++e)
    for (Elem f = 0; f < kk.size(); ++f)
      if (alpha[a(e, f)] != b(alpha[e], f)) return {"equivariance", a.carrier.name(e), kk.name(f)};
  return {};
}

}  // namespace qlab
