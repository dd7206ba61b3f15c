#include "qlab/qcategory.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "qlab/error.hpp"

namespace qlab {

std::optional<std::size_t> QCategory::find(std::string_view name) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (d_.objects[i] == name) return i;
  return std::nullopt;
}

bool QCategory::leq(std::size_t y, std::size_t x) const {
  if (type(x) != type(y)) return false;
  const ObjId t = type(x);
  return base().hom(t, t).leq(base().identity(t), hom(y, x));
}

std::vector<std::size_t> QCategory::objects_of_type(ObjId x) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (type(i) == x) out.push_back(i);
  return out;
}

bool QCategory::operator==(const QCategory& other) const {
  return d_.name == other.d_.name && *d_.base == *other.d_.base && d_.objects == other.d_.objects &&
         d_.types == other.d_.types && d_.hom == other.d_.hom;
}

QCategory validate_category(CategoryData d) {
  if (!d.base) throw Error(ErrorKind::InvalidInput, {}, "category without base");
  const auto& q = *d.base;
  const std::size_t n = d.objects.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (d.objects[i] == d.objects[j])
        throw Error(ErrorKind::InvalidInput, {d.objects[i]}, "duplicate object");
  if (d.types.size() != n) throw Error(ErrorKind::PartialTable, {"types"});
  if (d.hom.size() != n * n) throw Error(ErrorKind::PartialTable, {"hom"});
  for (std::size_t i = 0; i < n; ++i)
    if (d.types[i] >= q.size()) throw Error(ErrorKind::TypeMismatch, {d.objects[i]}, "unknown type");
  auto hom = [&](std::size_t y, std::size_t x) { return d.hom[y * n + x]; };
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x)
      if (hom(y, x) >= q.hom(d.types[x], d.types[y]).size())
        throw Error(ErrorKind::TypeMismatch, {d.objects[y], d.objects[x]},
                    "hom value outside hom(t x, t y)");
  for (std::size_t x = 0; x < n; ++x) {
    const ObjId t = d.types[x];
    if (!q.hom(t, t).leq(q.identity(t), hom(x, x)))
      throw Error(ErrorKind::IdentityBelowUnit, {d.objects[x]});
  }
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x = 0; x < n; ++x) {
        const ObjId tx = d.types[x], ty = d.types[y], tz = d.types[z];
        const Elem composite = q.compose(tx, ty, tz, hom(z, y), hom(y, x));
        if (!q.hom(tx, tz).leq(composite, hom(z, x)))
          throw Error(ErrorKind::CompositionFails, {d.objects[z], d.objects[y], d.objects[x]});
      }
  return QCategory(std::move(d));
}

namespace {

void check_functor(const QCategory& a, const QCategory& b, const std::vector<std::size_t>& map) {
  if (a.base_ptr() != b.base_ptr() && !(a.base() == b.base()))
    throw Error(ErrorKind::TypeMismatch, {a.name(), b.name()}, "functor between different bases");
  if (map.size() != a.size()) throw Error(ErrorKind::PartialTable, {"map"});
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (map[i] >= b.size()) throw Error(ErrorKind::TypeMismatch, {a.object(i)}, "image out of range");
    if (b.type(map[i]) != a.type(i)) throw Error(ErrorKind::TypeNotPreserved, {a.object(i)});
  }
  const auto& q = a.base();
  for (std::size_t y = 0; y < a.size(); ++y)
    for (std::size_t x = 0; x < a.size(); ++x)
      if (!q.hom(a.type(x), a.type(y)).leq(a.hom(y, x), b.hom(map[y], map[x])))
        throw Error(ErrorKind::FunctorInequalityFails, {a.object(y), a.object(x)});
}

}  // namespace

QFunctor validate_functor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> map) {
  check_functor(*source, *target, map);
  return {std::move(source), std::move(target), std::move(map)};
}

QFunctor identity_functor(CategoryPtr c) {
  std::vector<std::size_t> map(c->size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  return {c, c, std::move(map)};
}

bool is_functor(const QCategory& source, const QCategory& target,
                const std::vector<std::size_t>& map) {
  try {
    check_functor(source, target, map);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Distributor validate_distributor(CategoryPtr source, CategoryPtr target, std::vector<Elem> table) {
  const auto& a = *source;
  const auto& b = *target;
  if (a.base_ptr() != b.base_ptr() && !(a.base() == b.base()))
    throw Error(ErrorKind::TypeMismatch, {a.name(), b.name()}, "distributor between different bases");
  const auto& q = a.base();
  if (table.size() != a.size() * b.size()) throw Error(ErrorKind::PartialTable, {"distributor"});
  auto phi = [&](std::size_t j, std::size_t i) { return table[j * a.size() + i]; };
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < a.size(); ++i)
      if (phi(j, i) >= q.hom(a.type(i), b.type(j)).size())
        throw Error(ErrorKind::TypeMismatch, {b.object(j), a.object(i)}, "entry outside hom(t a, t b)");
  // B(b', b) ∘ Φ(b, a) <= Φ(b', a)
  for (std::size_t j2 = 0; j2 < b.size(); ++j2)
    for (std::size_t j = 0; j < b.size(); ++j)
      for (std::size_t i = 0; i < a.size(); ++i) {
        const ObjId ta = a.type(i), tb = b.type(j), tb2 = b.type(j2);
        if (!q.hom(ta, tb2).leq(q.compose(ta, tb, tb2, b.hom(j2, j), phi(j, i)), phi(j2, i)))
          throw Error(ErrorKind::ActionAxiomFails, {"target", b.object(j2), b.object(j), a.object(i)});
      }
  // Φ(b, a) ∘ A(a, a') <= Φ(b, a')
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t i2 = 0; i2 < a.size(); ++i2) {
        const ObjId ta = a.type(i), ta2 = a.type(i2), tb = b.type(j);
        if (!q.hom(ta2, tb).leq(q.compose(ta2, ta, tb, phi(j, i), a.hom(i, i2)), phi(j, i2)))
          throw Error(ErrorKind::ActionAxiomFails, {"source", b.object(j), a.object(i), a.object(i2)});
      }
  return {std::move(source), std::move(target), std::move(table)};
}

Distributor identity_distributor(CategoryPtr c) {
  return {c, c, c->data().hom};
}

Distributor dist_compose(const Distributor& psi, const Distributor& phi) {
  if (psi.source != phi.target && !(*psi.source == *phi.target))
    throw Error(ErrorKind::TypeMismatch, {psi.source->name(), phi.target->name()});
  const auto& a = *phi.source;
  const auto& b = *phi.target;
  const auto& c = *psi.target;
  const auto& q = a.base();
  std::vector<Elem> table(c.size() * a.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto& lat = q.hom(a.type(i), c.type(k));
      Elem acc = lat.bottom();
      for (std::size_t j = 0; j < b.size(); ++j)
        acc = lat.join(acc, q.compose(a.type(i), b.type(j), c.type(k), psi(k, j), phi(j, i)));
      table[k * a.size() + i] = acc;
    }
  return validate_distributor(phi.source, psi.target, std::move(table));
}

Distributor dist_residual(const Distributor& psi, const Distributor& theta) {
  if (psi.target != theta.target && !(*psi.target == *theta.target))
    throw Error(ErrorKind::TypeMismatch, {psi.target->name(), theta.target->name()});
  const auto& a = *theta.source;
  const auto& b = *psi.source;
  const auto& c = *psi.target;
  const auto& q = a.base();
  std::vector<Elem> table(b.size() * a.size());
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto& lat = q.hom(a.type(i), b.type(j));
      Elem acc = lat.top();
      for (std::size_t k = 0; k < c.size(); ++k)
        acc = lat.meet(acc, q.lifting(b.type(j), c.type(k), a.type(i), psi(k, j), theta(k, i)));
      table[j * a.size() + i] = acc;
    }
  return validate_distributor(theta.source, psi.source, std::move(table));
}

Fiber fiber(const QCategory& c, ObjId x) {
  Fiber f;
  f.type = x;
  f.members = c.objects_of_type(x);
  const std::size_t m = f.members.size();
  std::vector<std::string> names;
  std::vector<char> rel(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back(c.object(f.members[i]));
    for (std::size_t j = 0; j < m; ++j) rel[i * m + j] = c.leq(f.members[i], f.members[j]);
  }
  f.order = std::make_shared<const FinitePreorder>(
      FinitePreorder::from_matrix(std::move(names), std::move(rel)));
  return f;
}

FiberSet fibers(const QCategory& c) {
  FiberSet out;
  for (ObjId x = 0; x < c.base().size(); ++x) {
    out.fibers.push_back(fiber(c, x));
    out.skeletal = out.skeletal && out.fibers.back().order->is_antisymmetric();
  }
  return out;
}

QCategory one_object(QuantaloidPtr base, ObjId y) {
  CategoryData d;
  d.name = "*_" + base->object(y);
  d.objects = {"*"};
  d.types = {y};
  d.hom = {base->identity(y)};
  d.base = std::move(base);
  return validate_category(std::move(d));
}

QCategory free_fiber(QuantaloidPtr base, const FinitePreorder& order, ObjId x) {
  CategoryData d;
  d.name = "free_" + base->object(x);
  d.objects = order.names();
  d.types.assign(order.size(), x);
  d.hom.resize(order.size() * order.size());
  for (Elem a2 = 0; a2 < order.size(); ++a2)
    for (Elem a = 0; a < order.size(); ++a)
      d.hom[a2 * order.size() + a] = order.leq(a2, a) ? base->identity(x) : base->zero(x, x);
  d.base = std::move(base);
  return validate_category(std::move(d));
}

std::string presheaf_object_name(const Quantaloid& base, ObjId x, ObjId y, Elem f) {
  return base.object(x) + "." + base.hom(x, y).name(f);
}

std::string copresheaf_object_name(const Quantaloid& base, ObjId x, ObjId y, Elem f) {
  return base.object(y) + "." + base.hom(x, y).name(f);
}

QCategory presheaf_category(QuantaloidPtr base, ObjId y) {
  const auto& q = *base;
  std::vector<QArrow> arrows;
  CategoryData d;
  d.name = "P_" + q.object(y);
  for (ObjId x = 0; x < q.size(); ++x)
    for (Elem f = 0; f < q.hom(x, y).size(); ++f) {
      arrows.push_back({x, y, f});
      d.objects.push_back(presheaf_object_name(q, x, y, f));
      d.types.push_back(x);
    }
  const std::size_t n = arrows.size();
  d.hom.resize(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      d.hom[j * n + i] = q.residual(ResidualKind::lifting, arrows[j], arrows[i]).value;
  d.base = std::move(base);
  return validate_category(std::move(d));
}

QCategory copresheaf_category(QuantaloidPtr base, ObjId x) {
  const auto& q = *base;
  std::vector<QArrow> arrows;
  CategoryData d;
  d.name = "Pd_" + q.object(x);
  for (ObjId y = 0; y < q.size(); ++y)
    for (Elem f = 0; f < q.hom(x, y).size(); ++f) {
      arrows.push_back({x, y, f});
      d.objects.push_back(copresheaf_object_name(q, x, y, f));
      d.types.push_back(y);
    }
  const std::size_t n = arrows.size();
  d.hom.resize(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      d.hom[j * n + i] = q.residual(ResidualKind::extension, arrows[i], arrows[j]).value;
  d.base = std::move(base);
  return validate_category(std::move(d));
}

QCategory opposite(const QCategory& c, QuantaloidPtr opposite_base) {
  CategoryData d;
  const auto& nm = c.name();
  d.name = nm.size() > 3 && nm.ends_with("^op") ? nm.substr(0, nm.size() - 3) : nm + "^op";
  d.objects = c.objects();
  d.types = c.data().types;
  const std::size_t n = c.size();
  d.hom.resize(n * n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) d.hom[y * n + x] = c.hom(x, y);
  d.base = std::move(opposite_base);
  return validate_category(std::move(d));
}

QCategory opposite(const QCategory& c) {
  return opposite(c, std::make_shared<const Quantaloid>(opposite(c.base())));
}

std::size_t enumeration_cap() {
  if (const char* env = std::getenv("QLAB_CAP")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

std::vector<Distributor> enumerate_presheaves(const CategoryPtr& cp, ObjId x, std::size_t cap) {
  const auto& c = *cp;
  const auto& q = c.base();
  std::size_t total = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::size_t k = q.hom(x, c.type(i)).size();
    if (total > std::numeric_limits<std::size_t>::max() / k) overflow = true;
    total = overflow ? std::numeric_limits<std::size_t>::max() : total * k;
  }
  if (overflow || total > cap)
    throw Error(ErrorKind::EnumerationCapExceeded,
                {overflow ? std::string("overflow") : std::to_string(total)});

  auto star = std::make_shared<const QCategory>(one_object(c.base_ptr(), x));
  std::vector<Distributor> out;
  std::vector<Elem> phi(c.size(), 0);
  // Depth-first in lexicographic order; prefix pruning on the action axiom.
  auto consistent = [&](std::size_t k) {
    for (std::size_t j = 0; j <= k; ++j) {
      const std::size_t pairs[2][2] = {{j, k}, {k, j}};
      for (const auto& pr : pairs) {
        const std::size_t y = pr[0], z = pr[1];  // C(y, z) ∘ φ(z) <= φ(y)
        const Elem composite = q.compose(x, c.type(z), c.type(y), c.hom(y, z), phi[z]);
        if (!q.hom(x, c.type(y)).leq(composite, phi[y])) return false;
      }
    }
    return true;
  };
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == c.size()) {
      out.push_back({star, cp, phi});
      return;
    }
    for (Elem e = 0; e < q.hom(x, c.type(k)).size(); ++e) {
      phi[k] = e;
      if (consistent(k)) self(self, k + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace qlab
