#include "qlab/completion.hpp"

#include <algorithm>
#include <stdexcept>

#include "qlab/error.hpp"

namespace qlab {

namespace {

/// Objects w of the given type whose hom-row hom(w, z) equals row(z) for all z.
template <class Row>
WitnessSet matching_rows(const QCategory& c, ObjId type, Row&& row) {
  std::vector<Elem> required(c.size());
  for (std::size_t z = 0; z < c.size(); ++z) required[z] = row(z);
  WitnessSet out;
  for (std::size_t w = 0; w < c.size(); ++w) {
    if (c.type(w) != type) continue;
    bool ok = true;
    for (std::size_t z = 0; z < c.size() && ok; ++z) ok = c.hom(w, z) == required[z];
    if (ok) out.members.push_back(w);
  }
  return out;
}

template <class Column>
WitnessSet matching_columns(const QCategory& c, ObjId type, Column&& column) {
  std::vector<Elem> required(c.size());
  for (std::size_t z = 0; z < c.size(); ++z) required[z] = column(z);
  WitnessSet out;
  for (std::size_t w = 0; w < c.size(); ++w) {
    if (c.type(w) != type) continue;
    bool ok = true;
    for (std::size_t z = 0; z < c.size() && ok; ++z) ok = c.hom(z, w) == required[z];
    if (ok) out.members.push_back(w);
  }
  return out;
}

std::string family_name(const QCategory& c, std::span<const std::size_t> family) {
  std::string s = "{";
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i) s += ",";
    s += c.object(family[i]);
  }
  return s + "}";
}

void check_family(const QCategory& c, ObjId type, std::span<const std::size_t> family) {
  if (type >= c.base().size()) throw Error(ErrorKind::TypeMismatch, {"type"});
  for (std::size_t i : family)
    if (i >= c.size() || c.type(i) != type)
      throw Error(ErrorKind::TypeMismatch, {i < c.size() ? c.object(i) : "?"},
                  "family member of the wrong type");
}

bool same_base(const QCategory& a, const QCategory& b) {
  return a.base_ptr() == b.base_ptr() || a.base() == b.base();
}

}  // namespace

bool WitnessSet::contains(std::size_t i) const {
  return std::binary_search(members.begin(), members.end(), i);
}

WitnessSet tensor(const QCategory& c, std::size_t y, const QArrow& f) {
  const auto& q = c.base();
  if (y >= c.size() || c.type(y) != f.dst || f.src >= q.size() ||
      f.value >= q.hom(f.src, f.dst).size())
    throw Error(ErrorKind::TypeMismatch, {y < c.size() ? c.object(y) : "?"}, "tensor needs t y = cod f");
  return matching_rows(c, f.src, [&](std::size_t z) {
    return q.lifting(f.src, f.dst, c.type(z), f.value, c.hom(y, z));
  });
}

WitnessSet cotensor(const QCategory& c, const QArrow& f, std::size_t x) {
  const auto& q = c.base();
  if (x >= c.size() || c.type(x) != f.src || f.dst >= q.size() ||
      f.value >= q.hom(f.src, f.dst).size())
    throw Error(ErrorKind::TypeMismatch, {x < c.size() ? c.object(x) : "?"}, "cotensor needs t x = dom f");
  return matching_columns(c, f.dst, [&](std::size_t z) {
    return q.extension(f.src, f.dst, c.type(z), f.value, c.hom(z, x));
  });
}

WitnessSet conical_colimit(const QCategory& c, ObjId type, std::span<const std::size_t> family) {
  check_family(c, type, family);
  const auto& q = c.base();
  return matching_rows(c, type, [&](std::size_t z) {
    const auto& lat = q.hom(c.type(z), type);
    Elem acc = lat.top();
    for (std::size_t i : family) acc = lat.meet(acc, c.hom(i, z));
    return acc;
  });
}

WitnessSet fiber_supremum(const QCategory& c, ObjId type, std::span<const std::size_t> family) {
  check_family(c, type, family);
  const auto members = c.objects_of_type(type);
  std::vector<std::size_t> upper;
  for (std::size_t u : members)
    if (std::all_of(family.begin(), family.end(), [&](std::size_t i) { return c.leq(i, u); }))
      upper.push_back(u);
  WitnessSet out;
  for (std::size_t u : upper)
    if (std::all_of(upper.begin(), upper.end(), [&](std::size_t v) { return c.leq(u, v); }))
      out.members.push_back(u);
  return out;
}

WeightedColimit weighted_colimit(const Distributor& weight, const QFunctor& functor,
                                 bool target_cocomplete) {
  if (weight.target != functor.source && !(*weight.target == *functor.source))
    throw Error(ErrorKind::TypeMismatch, {weight.target->name(), functor.source->name()});
  const auto& a = *weight.source;
  const auto& b = *weight.target;
  const auto& c = *functor.target;
  if (!same_base(a, c)) throw Error(ErrorKind::TypeMismatch, {a.name(), c.name()});
  const auto& q = c.base();

  WeightedColimit out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const ObjId ta = a.type(i);
    out.general.push_back(matching_rows(c, ta, [&](std::size_t z) {
      const auto& lat = q.hom(c.type(z), ta);
      Elem acc = lat.top();
      for (std::size_t j = 0; j < b.size(); ++j)
        acc = lat.meet(acc, q.lifting(ta, b.type(j), c.type(z), weight(j, i), c.hom(functor(j), z)));
      return acc;
    }));

    std::vector<std::size_t> family;
    bool all_tensors = true;
    for (std::size_t j = 0; j < b.size() && all_tensors; ++j) {
      const auto t = tensor(c, functor(j), QArrow{ta, b.type(j), weight(j, i)});
      if (t.empty()) all_tensors = false;
      else family.push_back(t.representative());
    }
    if (!all_tensors) {
      out.via_conical.emplace_back();
      out.via_supremum.emplace_back();
      continue;
    }
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    auto conical = conical_colimit(c, ta, family);
    auto supremum = fiber_supremum(c, ta, family);
    if (conical != out.general.back())
      throw std::logic_error("weighted_colimit: tensor+conical route disagrees with the general criterion");
    for (std::size_t w : conical.members)
      if (!supremum.contains(w))
        throw std::logic_error("weighted_colimit: conical colimit is not a fiber supremum");
    if (target_cocomplete && supremum != out.general.back())
      throw std::logic_error("weighted_colimit: tensor+supremum route disagrees on a cocomplete target");
    out.via_conical.push_back(std::move(conical));
    out.via_supremum.push_back(std::move(supremum));
  }
  return out;
}

std::optional<std::pair<std::size_t, QArrow>> missing_tensor(const QCategory& c) {
  const auto& q = c.base();
  for (std::size_t y = 0; y < c.size(); ++y)
    for (ObjId x = 0; x < q.size(); ++x)
      for (Elem f = 0; f < q.hom(x, c.type(y)).size(); ++f) {
        const QArrow arrow{x, c.type(y), f};
        if (tensor(c, y, arrow).empty()) return std::make_pair(y, arrow);
      }
  return std::nullopt;
}

std::optional<std::pair<QArrow, std::size_t>> missing_cotensor(const QCategory& c) {
  const auto& q = c.base();
  for (std::size_t x = 0; x < c.size(); ++x)
    for (ObjId y = 0; y < q.size(); ++y)
      for (Elem f = 0; f < q.hom(c.type(x), y).size(); ++f) {
        const QArrow arrow{c.type(x), y, f};
        if (cotensor(c, arrow, x).empty()) return std::make_pair(arrow, x);
      }
  return std::nullopt;
}

bool is_tensored(const QCategory& c) { return !missing_tensor(c); }
bool is_cotensored(const QCategory& c) { return !missing_cotensor(c); }

namespace {

/// First presheaf whose identity-weighted colimit is missing.
std::optional<std::string> missing_presheaf_colimit(const CategoryPtr& cp, std::size_t cap) {
  const auto& c = *cp;
  const auto& q = c.base();
  for (ObjId x = 0; x < q.size(); ++x) {
    for (const auto& phi : enumerate_presheaves(cp, x, cap)) {
      const auto w = matching_rows(c, x, [&](std::size_t z) {
        const auto& lat = q.hom(c.type(z), x);
        Elem acc = lat.top();
        for (std::size_t j = 0; j < c.size(); ++j)
          acc = lat.meet(acc, q.lifting(x, c.type(j), c.type(z), phi(j, 0), c.hom(j, z)));
        return acc;
      });
      if (w.empty()) {
        std::string s = "presheaf on *_" + q.object(x) + " {";
        for (std::size_t j = 0; j < c.size(); ++j) {
          if (j) s += ",";
          s += c.object(j) + "=" + q.hom(x, c.type(j)).name(phi(j, 0));
        }
        return s + "}";
      }
    }
  }
  return std::nullopt;
}

}  // namespace

bool is_cocomplete(const CategoryPtr& c, std::size_t cap) {
  return !missing_presheaf_colimit(c, cap);
}

CompletenessReport completeness_report(const CategoryPtr& cp, std::size_t cap) {
  const auto& c = *cp;
  const auto& q = c.base();
  CompletenessReport r;
  if (auto miss = missing_tensor(c)) {
    r.witnesses["tensored"] = c.object(miss->first) + " (x) " + q.arrow_name(miss->second);
  } else {
    r.tensored = true;
  }
  if (auto miss = missing_cotensor(c)) {
    r.witnesses["cotensored"] = "<" + q.arrow_name(miss->first) + ", " + c.object(miss->second) + ">";
  } else {
    r.cotensored = true;
  }
  r.conically_cocomplete = true;
  for_each_fiber_subset(c, cap, [&](ObjId x, std::span<const std::size_t> family) {
    if (!conical_colimit(c, x, family).empty()) return true;
    r.conically_cocomplete = false;
    r.witnesses["conically_cocomplete"] = "type " + q.object(x) + " family " + family_name(c, family);
    return false;
  });
  r.order_cocomplete = true;
  for_each_fiber_subset(c, cap, [&](ObjId x, std::span<const std::size_t> family) {
    if (!fiber_supremum(c, x, family).empty()) return true;
    r.order_cocomplete = false;
    r.witnesses["order_cocomplete"] = "type " + q.object(x) + " family " + family_name(c, family);
    return false;
  });
  if (auto miss = missing_presheaf_colimit(cp, cap)) {
    r.witnesses["cocomplete"] = *miss;
  } else {
    r.cocomplete = true;
  }
  return r;
}

AdjunctionCheck check_adjunction(const QFunctor& left, const QFunctor& right) {
  const auto& a = *left.source;
  const auto& b = *left.target;
  if ((right.source != left.target && !(*right.source == b)) ||
      (right.target != left.source && !(*right.target == a)))
    throw Error(ErrorKind::TypeMismatch, {a.name(), b.name()}, "functors are not opposite");
  AdjunctionCheck out;
  out.holds = true;
  for (std::size_t i = 0; i < a.size() && out.holds; ++i)
    if (!a.leq(i, right(left(i)))) {
      out.holds = false;
      out.witnesses = {"unit", a.object(i)};
    }
  for (std::size_t j = 0; j < b.size() && out.holds; ++j)
    if (!b.leq(left(right(j)), j)) {
      out.holds = false;
      out.witnesses = {"counit", b.object(j)};
    }
  bool hom_criterion = true;
  for (std::size_t i = 0; i < a.size() && hom_criterion; ++i)
    for (std::size_t j = 0; j < b.size() && hom_criterion; ++j)
      hom_criterion = b.hom(left(i), j) == a.hom(i, right(j));
  if (hom_criterion != out.holds)
    throw std::logic_error("check_adjunction: order criterion disagrees with the hom criterion");
  return out;
}

std::optional<std::pair<std::size_t, QArrow>> tensor_preservation_failure(const QFunctor& f) {
  const auto& a = *f.source;
  const auto& b = *f.target;
  const auto& q = a.base();
  for (std::size_t y = 0; y < a.size(); ++y)
    for (ObjId x = 0; x < q.size(); ++x)
      for (Elem e = 0; e < q.hom(x, a.type(y)).size(); ++e) {
        const QArrow arrow{x, a.type(y), e};
        const auto source_tensor = tensor(a, y, arrow);
        if (source_tensor.empty()) continue;
        if (!tensor(b, f(y), arrow).contains(f(source_tensor.representative())))
          return std::make_pair(y, arrow);
      }
  return std::nullopt;
}

bool preserves_tensors(const QFunctor& f) { return !tensor_preservation_failure(f); }

bool preserves_fiber_suprema(const QFunctor& f, std::size_t cap) {
  const auto& a = *f.source;
  const auto& b = *f.target;
  bool ok = true;
  for_each_fiber_subset(a, cap, [&](ObjId x, std::span<const std::size_t> family) {
    const auto sup = fiber_supremum(a, x, family);
    if (sup.empty()) return true;
    std::vector<std::size_t> image;
    for (std::size_t i : family) image.push_back(f(i));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    ok = fiber_supremum(b, x, image).contains(f(sup.representative()));
    return ok;
  });
  return ok;
}

QFunctor synthesize_right_adjoint(const QFunctor& f) {
  const auto& a = *f.source;
  const auto& b = *f.target;
  const auto& q = a.base();
  if (auto miss = missing_tensor(a))
    throw Error(ErrorKind::SourceNotTensored, {a.object(miss->first), q.arrow_name(miss->second)});
  if (auto fail = tensor_preservation_failure(f))
    throw Error(ErrorKind::TensorsNotPreserved, {a.object(fail->first), q.arrow_name(fail->second)});

  std::vector<std::size_t> g(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    const ObjId x = b.type(j);
    std::vector<std::size_t> below;
    for (std::size_t i : a.objects_of_type(x))
      if (b.leq(f(i), j)) below.push_back(i);
    std::optional<std::size_t> top;
    for (std::size_t cand : below)
      if (std::all_of(below.begin(), below.end(), [&](std::size_t i) { return a.leq(i, cand); })) {
        top = cand;
        break;
      }
    if (!top) throw Error(ErrorKind::NoFiberAdjoint, {q.object(x), b.object(j)});
    g[j] = *top;
  }
  if (!is_functor(b, a, g))
    throw std::logic_error("synthesize_right_adjoint: fiberwise adjoints do not assemble to a functor");
  QFunctor right{f.target, f.source, std::move(g)};
  if (!check_adjunction(f, right).holds)
    throw std::logic_error("synthesize_right_adjoint: assembled functor is not a right adjoint");
  return right;
}

}  // namespace qlab
