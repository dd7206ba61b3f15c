#include "qlab/instances.hpp"

#include <map>
#include <mutex>

#include "qlab/error.hpp"

namespace qlab {

namespace {

QCategory renamed(const QCategory& c, std::string name) {
  CategoryData d = c.data();
  d.name = std::move(name);
  return validate_category(std::move(d));
}

QuantaloidPtr make_builtin_quantaloid(std::string_view name) {
  if (name == "q2") return std::make_shared<const Quantaloid>(boolean2());
  if (name == "q3") {
    FiniteSupLattice chain(FinitePreorder::chain({"0", "a", "1"}));
    std::vector<Elem> mult(9);
    for (Elem g = 0; g < 3; ++g)
      for (Elem f = 0; f < 3; ++f) mult[g * 3 + f] = std::min(g, f);
    return std::make_shared<const Quantaloid>(quantale_from_table("q3", chain, mult, 2));
  }
  if (name == "qrel3")
    return std::make_shared<const Quantaloid>(
        locale_quantaloid("qrel3", FiniteSupLattice(FinitePreorder::chain({"0", "u", "1"}))));
  return nullptr;
}

// Resolves "sweep<N>@<base>" to the N-th category of the exhaustive enumeration.
CategoryPtr sweep_category(std::string_view name) {
  const auto at = name.find('@');
  if (at == std::string_view::npos || at == 5) return nullptr;
  std::size_t index = 0;
  for (char ch : name.substr(5, at - 5)) {
    if (ch < '0' || ch > '9') return nullptr;
    index = index * 10 + static_cast<std::size_t>(ch - '0');
  }
  const auto base = builtin_quantaloid(name.substr(at + 1));
  if (!base) return nullptr;
  for (std::size_t k = 0; k <= 3; ++k) {
    auto cats = all_categories(base, k);
    if (index < cats.size()) return std::make_shared<const QCategory>(std::move(cats[index]));
  }
  return nullptr;
}

CategoryPtr make_builtin_category(std::string_view name) {
  if (name == "chain3@q2")
    return std::make_shared<const QCategory>(
        order_category(builtin_quantaloid("q2"), FinitePreorder::chain({"bot", "m", "top"}), "chain3@q2"));
  if (name == "zero@qrel3")
    return std::make_shared<const QCategory>(zero_category(builtin_quantaloid("qrel3"), "zero@qrel3"));
  if (name == "p1@qrel3" || name == "pd1@qrel3") {
    const auto q = builtin_quantaloid("qrel3");
    const ObjId one = *q->find_object("1");
    auto c = name == "p1@qrel3" ? presheaf_category(q, one) : copresheaf_category(q, one);
    return std::make_shared<const QCategory>(renamed(c, std::string(name)));
  }
  if (name.starts_with("sweep")) return sweep_category(name);
  return nullptr;
}

template <class T, class Make>
std::shared_ptr<const T> cached(std::string_view name, Make&& make) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const T>, std::less<>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
  }
  auto value = make(name);
  if (!value) return nullptr;
  std::lock_guard lock(mutex);
  return cache.emplace(std::string(name), std::move(value)).first->second;
}

}  // namespace

QuantaloidPtr builtin_quantaloid(std::string_view name) {
  return cached<Quantaloid>(name, make_builtin_quantaloid);
}

CategoryPtr builtin_category(std::string_view name) {
  return cached<QCategory>(name, make_builtin_category);
}

std::vector<std::string> builtin_quantaloid_names() { return {"q2", "q3", "qrel3"}; }

std::vector<std::string> builtin_category_names() {
  return {"chain3@q2", "p1@qrel3", "pd1@qrel3", "zero@qrel3"};
}

QCategory zero_category(QuantaloidPtr base, std::string name) {
  const auto& q = *base;
  const std::size_t n = q.size();
  CategoryData d;
  d.name = std::move(name);
  for (ObjId x = 0; x < n; ++x) {
    d.objects.push_back("0_" + q.object(x));
    d.types.push_back(x);
  }
  d.hom.resize(n * n);
  for (ObjId y = 0; y < n; ++y)
    for (ObjId x = 0; x < n; ++x) d.hom[y * n + x] = x == y ? q.identity(x) : q.zero(x, y);
  d.base = std::move(base);
  return validate_category(std::move(d));
}

QCategory order_category(QuantaloidPtr base, const FinitePreorder& order, std::string name) {
  return renamed(free_fiber(std::move(base), order, 0), std::move(name));
}

std::vector<QCategory> all_categories(const QuantaloidPtr& base, std::size_t max_objects) {
  const auto& q = *base;
  const std::size_t n = q.size();
  std::vector<QCategory> out;
  std::size_t index = 0;
  for (std::size_t k = 0; k <= max_objects; ++k) {
    if (n == 0 && k > 0) break;
    std::vector<ObjId> types(k, 0);
    while (true) {
      // hom(y, x) ranges over base hom(t x, t y).
      std::vector<std::size_t> limits(k * k);
      for (std::size_t y = 0; y < k; ++y)
        for (std::size_t x = 0; x < k; ++x) limits[y * k + x] = q.hom(types[x], types[y]).size();
      std::vector<Elem> hom(k * k, 0);
      while (true) {
        bool ok = true;
        for (std::size_t x = 0; x < k && ok; ++x)
          ok = q.hom(types[x], types[x]).leq(q.identity(types[x]), hom[x * k + x]);
        for (std::size_t z = 0; z < k && ok; ++z)
          for (std::size_t y = 0; y < k && ok; ++y)
            for (std::size_t x = 0; x < k && ok; ++x) {
              const Elem c = q.compose(types[x], types[y], types[z], hom[z * k + y], hom[y * k + x]);
              ok = q.hom(types[x], types[z]).leq(c, hom[z * k + x]);
            }
        if (ok) {
          CategoryData d;
          d.base = base;
          d.name = "sweep" + std::to_string(index++) + "@" + q.name();
          for (std::size_t i = 0; i < k; ++i) d.objects.push_back(std::string(1, static_cast<char>('a' + i)));
          d.types = types;
          d.hom = hom;
          out.push_back(validate_category(std::move(d)));
        }
        std::size_t i = k * k;
        while (i > 0 && ++hom[i - 1] == limits[i - 1]) hom[--i] = 0;
        if (i == 0) break;
      }
      std::size_t i = k;
      while (i > 0 && ++types[i - 1] == n) types[--i] = 0;
      if (i == 0) break;
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> all_functors(const QCategory& source, const QCategory& target) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t k = source.size();
  std::vector<std::vector<std::size_t>> choices(k);
  for (std::size_t i = 0; i < k; ++i) {
    choices[i] = target.objects_of_type(source.type(i));
    if (choices[i].empty()) return out;
  }
  std::vector<std::size_t> pick(k, 0), map(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) map[i] = choices[i][pick[i]];
    if (is_functor(source, target, map)) out.push_back(map);
    std::size_t i = k;
    while (i > 0 && ++pick[i - 1] == choices[i - 1].size()) pick[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::vector<FinitePreorder> all_preorders(std::size_t n) {
  std::vector<FinitePreorder> out;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) off.emplace_back(a, b);
  for (std::size_t mask = 0; mask < (std::size_t{1} << off.size()); ++mask) {
    std::vector<char> rel(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) rel[a * n + a] = 1;
    for (std::size_t i = 0; i < off.size(); ++i)
      if (mask >> i & 1) rel[off[i].first * n + off[i].second] = 1;
    bool transitive = true;
    for (std::size_t a = 0; a < n && transitive; ++a)
      for (std::size_t b = 0; b < n && transitive; ++b)
        for (std::size_t c = 0; c < n && transitive; ++c)
          transitive = !(rel[a * n + b] && rel[b * n + c]) || rel[a * n + c];
    if (transitive) out.push_back(FinitePreorder::from_matrix(names, rel));
  }
  return out;
}

std::vector<FiniteSupLattice> all_lattices(std::size_t n) {
  std::vector<FiniteSupLattice> out;
  for (auto& p : all_preorders(n)) {
    if (!p.is_antisymmetric() || !p.is_complete()) continue;
    out.emplace_back(std::move(p));
  }
  return out;
}

std::vector<std::vector<Elem>> all_monotone_maps(const FinitePreorder& source, const FinitePreorder& target) {
  std::vector<std::vector<Elem>> out;
  if (target.empty()) {
    if (source.empty()) out.emplace_back();
    return out;
  }
  std::vector<Elem> table(source.size(), 0);
  while (true) {
    if (is_monotone(source, target, table)) out.push_back(table);
    std::size_t i = table.size();
    while (i > 0 && ++table[i - 1] == target.size()) table[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

}  // namespace qlab

namespace qlab {

std::vector<Pseudofunctor2> all_pseudofunctors(const QuantaloidPtr& base, std::size_t max_carrier) {
  std::vector<Pseudofunctor2> out;
  if (base->size() != 1) return out;
  const auto& k = base->hom(0, 0);
  std::size_t index = 0;
  for (std::size_t size = 0; size <= max_carrier; ++size)
    for (const auto& order : all_preorders(size)) {
      const auto maps = all_monotone_maps(order, order);
      // Candidates for F(1): maps isomorphic to the identity.
      std::vector<std::size_t> pick(k.size(), 0);
      while (true) {
        Pseudofunctor2 p;
        p.base = base;
        p.fibers = {order};
        p.actions.resize(1);
        for (Elem f = 0; f < k.size(); ++f) p.actions[0].push_back(maps[pick[f]]);
        bool unit_ok = true;
        for (Elem e = 0; e < order.size() && unit_ok; ++e)
          unit_ok = order.equivalent(p.apply(0, 0, base->identity(0), e), e);
        if (unit_ok && validate_pseudofunctor(p).valid) {
          p.name = "psd" + std::to_string(index++) + "@" + base->name();
          out.push_back(std::move(p));
        }
        std::size_t i = k.size();
        while (i > 0 && ++pick[i - 1] == maps.size()) pick[--i] = 0;
        if (i == 0) break;
      }
    }
  return out;
}

std::vector<QuantaleAction> all_actions(const QuantaloidPtr& base, std::size_t max_carrier) {
  std::vector<QuantaleAction> out;
  if (base->size() != 1) return out;
  const auto& k = base->hom(0, 0);
  std::size_t index = 0;
  for (std::size_t size = 1; size <= max_carrier; ++size)
    for (const auto& lattice : all_lattices(size)) {
      std::vector<std::vector<Elem>> sup_maps;
      for (auto& m : all_monotone_maps(lattice.order(), lattice.order()))
        if (is_sup_morphism(lattice, lattice, m).ok) sup_maps.push_back(std::move(m));
      std::vector<std::size_t> pick(k.size(), 0);
      while (true) {
        QuantaleAction a;
        a.quantale = base;
        a.carrier = lattice;
        a.act.resize(size * k.size());
        for (Elem e = 0; e < size; ++e)
          for (Elem f = 0; f < k.size(); ++f) a.act[e * k.size() + f] = sup_maps[pick[f]][e];
        try {
          validate_action(a);
          a.name = "act" + std::to_string(index++) + "@" + base->name();
          out.push_back(std::move(a));
        } catch (const Error&) {
        }
        std::size_t i = k.size();
        while (i > 0 && ++pick[i - 1] == sup_maps.size()) pick[--i] = 0;
        if (i == 0) break;
      }
    }
  return out;
}

}  // namespace qlab
