#include "qlab/quantaloid.hpp"

#include <algorithm>

#include "qlab/error.hpp"

namespace qlab {

namespace {

std::size_t triple(std::size_t n, ObjId x, ObjId y, ObjId z) { return (x * n + y) * n + z; }

}  // namespace

Quantaloid::Quantaloid(QuantaloidData data) : d_(std::move(data)) {
  const std::size_t n = size();
  lift_.resize(n * n * n);
  ext_.resize(n * n * n);
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z) {
        const auto& xy = hom(x, y);
        const auto& zy = hom(z, y);
        const auto& zx = hom(z, x);
        auto& lt = lift_[triple(n, x, y, z)];
        lt.resize(xy.size() * zy.size());
        for (Elem f = 0; f < xy.size(); ++f)
          for (Elem g = 0; g < zy.size(); ++g) {
            std::vector<Elem> ok;
            for (Elem h = 0; h < zx.size(); ++h)
              if (zy.leq(compose(z, x, y, f, h), g)) ok.push_back(h);
            lt[f * zy.size() + g] = zx.join(ok);
          }
        const auto& xz = hom(x, z);
        const auto& yz = hom(y, z);
        auto& et = ext_[triple(n, x, y, z)];
        et.resize(xy.size() * xz.size());
        for (Elem f = 0; f < xy.size(); ++f)
          for (Elem g = 0; g < xz.size(); ++g) {
            std::vector<Elem> ok;
            for (Elem h = 0; h < yz.size(); ++h)
              if (xz.leq(compose(x, y, z, h, f), g)) ok.push_back(h);
            et[f * xz.size() + g] = yz.join(ok);
          }
      }
}

std::optional<ObjId> Quantaloid::find_object(std::string_view name) const {
  for (ObjId x = 0; x < size(); ++x)
    if (d_.objects[x] == name) return x;
  return std::nullopt;
}

QArrow Quantaloid::compose(const QArrow& g, const QArrow& f) const {
  if (f.dst != g.src) throw Error(ErrorKind::TypeMismatch, {arrow_name(g), arrow_name(f)});
  return {f.src, g.dst, compose(f.src, f.dst, g.dst, g.value, f.value)};
}

QArrow Quantaloid::residual(ResidualKind kind, const QArrow& f, const QArrow& g) const {
  if (kind == ResidualKind::lifting) {
    if (f.dst != g.dst) throw Error(ErrorKind::TypeMismatch, {arrow_name(f), arrow_name(g)});
    return {g.src, f.src, lifting(f.src, f.dst, g.src, f.value, g.value)};
  }
  if (f.src != g.src) throw Error(ErrorKind::TypeMismatch, {arrow_name(f), arrow_name(g)});
  return {f.dst, g.dst, extension(f.src, f.dst, g.dst, f.value, g.value)};
}

std::string Quantaloid::arrow_name(ObjId x, ObjId y, Elem e) const {
  return object(x) + "->" + object(y) + ":" + hom(x, y).name(e);
}

QArrow Quantaloid::parse_arrow(std::string_view text) const {
  const auto arrow = text.find("->");
  const auto colon = text.find(':', arrow == std::string_view::npos ? 0 : arrow);
  if (arrow == std::string_view::npos || colon == std::string_view::npos)
    throw Error(ErrorKind::InvalidInput, {std::string(text)}, "expected X->Y:element");
  const auto src = find_object(text.substr(0, arrow));
  const auto dst = find_object(text.substr(arrow + 2, colon - arrow - 2));
  if (!src || !dst) throw Error(ErrorKind::InvalidInput, {std::string(text)}, "unknown object");
  const auto value = hom(*src, *dst).find(text.substr(colon + 1));
  if (!value) throw Error(ErrorKind::InvalidInput, {std::string(text)}, "unknown element");
  return {*src, *dst, *value};
}

bool Quantaloid::operator==(const Quantaloid& other) const {
  return d_.name == other.d_.name && d_.objects == other.d_.objects &&
         d_.homs == other.d_.homs && d_.compose == other.d_.compose &&
         d_.identities == other.d_.identities;
}

Quantaloid validate_quantaloid(QuantaloidData d) {
  const std::size_t n = d.objects.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (d.objects[i] == d.objects[j])
        throw Error(ErrorKind::InvalidInput, {d.objects[i]}, "duplicate object");
  if (d.homs.size() != n * n) throw Error(ErrorKind::PartialTable, {"hom"});
  if (d.compose.size() != n * n * n) throw Error(ErrorKind::PartialTable, {"compose"});
  if (d.identities.size() != n) throw Error(ErrorKind::PartialTable, {"id"});
  auto hom = [&](ObjId x, ObjId y) -> const FiniteSupLattice& { return d.homs[x * n + y]; };
  auto name = [&](ObjId x, ObjId y, Elem e) {
    return d.objects[x] + "->" + d.objects[y] + ":" + hom(x, y).name(e);
  };
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      if (hom(x, y).order_ptr() == nullptr)
        throw Error(ErrorKind::PartialTable, {"hom " + d.objects[x] + " " + d.objects[y]});
  for (ObjId x = 0; x < n; ++x) {
    if (d.identities[x] >= hom(x, x).size())
      throw Error(ErrorKind::TypeMismatch, {"id " + d.objects[x]});
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z) {
        const auto& t = d.compose[triple(n, x, y, z)];
        const std::string key = "compose " + d.objects[x] + " " + d.objects[y] + " " + d.objects[z];
        if (t.size() != hom(y, z).size() * hom(x, y).size())
          throw Error(ErrorKind::PartialTable, {key});
        for (Elem v : t)
          if (v >= hom(x, z).size()) throw Error(ErrorKind::TypeMismatch, {key});
      }
  }
  auto comp = [&](ObjId x, ObjId y, ObjId z, Elem g, Elem f) {
    return d.compose[triple(n, x, y, z)][g * hom(x, y).size() + f];
  };

  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (Elem f = 0; f < hom(x, y).size(); ++f) {
        if (comp(x, y, y, d.identities[y], f) != f)
          throw Error(ErrorKind::UnitLawFails, {name(x, y, f), "left"});
        if (comp(x, x, y, f, d.identities[x]) != f)
          throw Error(ErrorKind::UnitLawFails, {name(x, y, f), "right"});
      }

  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z) {
        const auto& xy = hom(x, y);
        const auto& yz = hom(y, z);
        const auto& xz = hom(x, z);
        for (Elem g = 0; g < yz.size(); ++g)
          if (comp(x, y, z, g, xy.bottom()) != xz.bottom())
            throw Error(ErrorKind::BottomNotAbsorbed, {name(y, z, g), "right"});
        for (Elem f = 0; f < xy.size(); ++f)
          if (comp(x, y, z, yz.bottom(), f) != xz.bottom())
            throw Error(ErrorKind::BottomNotAbsorbed, {name(x, y, f), "left"});
      }

  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z) {
        const auto& xy = hom(x, y);
        const auto& yz = hom(y, z);
        const auto& xz = hom(x, z);
        for (Elem g = 0; g < yz.size(); ++g)
          for (Elem f1 = 0; f1 < xy.size(); ++f1)
            for (Elem f2 = f1 + 1; f2 < xy.size(); ++f2)
              if (comp(x, y, z, g, xy.join(f1, f2)) !=
                  xz.join(comp(x, y, z, g, f1), comp(x, y, z, g, f2)))
                throw Error(ErrorKind::NotJoinPreserving,
                            {"right", name(x, y, f1), name(x, y, f2), name(y, z, g)});
        for (Elem f = 0; f < xy.size(); ++f)
          for (Elem g1 = 0; g1 < yz.size(); ++g1)
            for (Elem g2 = g1 + 1; g2 < yz.size(); ++g2)
              if (comp(x, y, z, yz.join(g1, g2), f) !=
                  xz.join(comp(x, y, z, g1, f), comp(x, y, z, g2, f)))
                throw Error(ErrorKind::NotJoinPreserving,
                            {"left", name(y, z, g1), name(y, z, g2), name(x, y, f)});
      }

  for (ObjId w = 0; w < n; ++w)
    for (ObjId x = 0; x < n; ++x)
      for (ObjId y = 0; y < n; ++y)
        for (ObjId z = 0; z < n; ++z)
          for (Elem f = 0; f < hom(w, x).size(); ++f)
            for (Elem g = 0; g < hom(x, y).size(); ++g)
              for (Elem h = 0; h < hom(y, z).size(); ++h)
                if (comp(w, x, z, comp(x, y, z, h, g), f) != comp(w, y, z, h, comp(w, x, y, g, f)))
                  throw Error(ErrorKind::NotAssociative,
                              {name(y, z, h), name(x, y, g), name(w, x, f)});

  return Quantaloid(std::move(d));
}

Quantaloid opposite(const Quantaloid& q) {
  const std::size_t n = q.size();
  QuantaloidData d;
  const auto& nm = q.name();
  d.name = nm.size() > 3 && nm.ends_with("^op") ? nm.substr(0, nm.size() - 3) : nm + "^op";
  d.objects = q.objects();
  d.homs.resize(n * n);
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) d.homs[x * n + y] = q.hom(y, x);
  d.compose.resize(n * n * n);
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z) {
        // g ∈ hom^op(y,z) = hom(z,y), f ∈ hom^op(x,y) = hom(y,x); g∘op f = f∘g.
        auto& t = d.compose[triple(n, x, y, z)];
        const auto gs = q.hom(z, y).size();
        const auto fs = q.hom(y, x).size();
        t.resize(gs * fs);
        for (Elem g = 0; g < gs; ++g)
          for (Elem f = 0; f < fs; ++f) t[g * fs + f] = q.compose(z, y, x, f, g);
      }
  d.identities = q.data().identities;
  return validate_quantaloid(std::move(d));
}

Quantaloid boolean2() {
  FiniteSupLattice two(FinitePreorder::chain({"0", "1"}));
  return quantale_from_table("q2", two, {0, 0, 0, 1}, 1);
}

Quantaloid quantale_from_table(std::string name, const FiniteSupLattice& lattice,
                               const std::vector<Elem>& mult, Elem unit) {
  QuantaloidData d;
  d.name = std::move(name);
  d.objects = {"*"};
  d.homs = {lattice};
  d.compose = {mult};
  d.identities = {unit};
  return validate_quantaloid(std::move(d));
}

Quantaloid locale_quantaloid(std::string name, const FiniteSupLattice& frame) {
  const std::size_t n = frame.size();
  QuantaloidData d;
  d.name = std::move(name);
  d.objects = frame.order().names();
  d.homs.resize(n * n);
  // Members of ↓(x∧y) in frame order; hom elements are indexed by position in this list.
  std::vector<std::vector<Elem>> members(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const Elem cap = frame.meet(x, y);
      auto& m = members[x * n + y];
      for (Elem a = 0; a < n; ++a)
        if (frame.leq(a, cap)) m.push_back(a);
      std::vector<std::string> names;
      for (Elem a : m) names.push_back(frame.name(a));
      std::vector<std::pair<Elem, Elem>> gens;
      for (Elem i = 0; i < m.size(); ++i)
        for (Elem j = 0; j < m.size(); ++j)
          if (frame.leq(m[i], m[j])) gens.emplace_back(i, j);
      d.homs[x * n + y] = FiniteSupLattice(FinitePreorder::closure(std::move(names), gens));
    }
  auto position = [&](Elem x, Elem y, Elem a) {
    const auto& m = members[x * n + y];
    return static_cast<Elem>(std::find(m.begin(), m.end(), a) - m.begin());
  };
  d.compose.resize(n * n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        const auto& mxy = members[x * n + y];
        const auto& myz = members[y * n + z];
        auto& t = d.compose[triple(n, x, y, z)];
        t.resize(myz.size() * mxy.size());
        for (Elem g = 0; g < myz.size(); ++g)
          for (Elem f = 0; f < mxy.size(); ++f)
            t[g * mxy.size() + f] = position(x, z, frame.meet(myz[g], mxy[f]));
      }
  d.identities.resize(n);
  for (Elem x = 0; x < n; ++x) d.identities[x] = position(x, x, x);
  return validate_quantaloid(std::move(d));
}

Quantaloid free_on_monoid(std::string name, const std::vector<std::string>& elements,
                          const std::vector<std::size_t>& mult, std::size_t unit) {
  const std::size_t m = elements.size();
  if (m > 10) throw Error(ErrorKind::InvalidInput, {}, "monoid too large for a powerset carrier");
  if (mult.size() != m * m || unit >= m) throw Error(ErrorKind::PartialTable, {"monoid"});
  const std::size_t subsets = std::size_t{1} << m;
  std::vector<std::string> names(subsets);
  std::vector<std::pair<Elem, Elem>> gens;
  for (std::size_t s = 0; s < subsets; ++s) {
    if (s == 0) names[s] = "0";
    for (std::size_t i = 0; i < m; ++i)
      if (s & (std::size_t{1} << i)) names[s] += (names[s].empty() ? "" : "+") + elements[i];
    for (std::size_t t = 0; t < subsets; ++t)
      if ((s & t) == s) gens.emplace_back(s, t);
  }
  FiniteSupLattice lattice(FinitePreorder::closure(std::move(names), gens));
  std::vector<Elem> table(subsets * subsets, 0);
  for (std::size_t g = 0; g < subsets; ++g)
    for (std::size_t f = 0; f < subsets; ++f) {
      std::size_t prod = 0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if ((g >> i & 1) && (f >> j & 1)) prod |= std::size_t{1} << mult[i * m + j];
      table[g * subsets + f] = prod;
    }
  return quantale_from_table(std::move(name), lattice, table, std::size_t{1} << unit);
}

}  // namespace qlab
