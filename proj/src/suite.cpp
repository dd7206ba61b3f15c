#include "qlab/suite.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "qlab/error.hpp"
#include "qlab/format.hpp"
#include "qlab/instances.hpp"

namespace qlab {

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "unknown";
}

std::size_t SuiteReport::count(CheckStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [&](const CheckResult& r) { return r.status == status; }));
}

namespace {

using Outcome = std::optional<std::string>;
const Outcome ok = std::nullopt;

class Recorder {
 public:
  Recorder(std::string instance, std::vector<CheckResult>& out) : instance_(std::move(instance)), out_(out) {}

  template <class Body>
  void run(std::string check, Body&& body) {
    CheckResult r{std::move(check), instance_, CheckStatus::pass, {}};
    try {
      if (Outcome w = body()) {
        r.status = CheckStatus::fail;
        r.witness = std::move(*w);
      }
    } catch (const Error& e) {
      r.status = e.kind() == ErrorKind::EnumerationCapExceeded ? CheckStatus::skipped : CheckStatus::fail;
      r.witness = e.what();
    } catch (const std::exception& e) {
      r.status = CheckStatus::fail;
      r.witness = std::string("internal: ") + e.what();
    }
    out_.push_back(std::move(r));
  }

  void skip(std::string check, std::string why) {
    out_.push_back({std::move(check), instance_, CheckStatus::skipped, std::move(why)});
  }

 private:
  std::string instance_;
  std::vector<CheckResult>& out_;
};

template <class Fn>
void for_each_arrow(const Quantaloid& q, Fn&& fn) {
  for (ObjId x = 0; x < q.size(); ++x)
    for (ObjId y = 0; y < q.size(); ++y)
      for (Elem f = 0; f < q.hom(x, y).size(); ++f) fn(x, y, f);
}

std::string flag_text(bool b) { return b ? "true" : "false"; }

std::string map_text(const QCategory& a, const QCategory& b, const std::vector<std::size_t>& map) {
  std::string s = "[";
  for (std::size_t i = 0; i < map.size(); ++i) s += (i ? "," : "") + a.object(i) + "->" + b.object(map[i]);
  return s + "]";
}

/// Position of each object inside its fiber.
std::vector<std::size_t> positions(const QCategory& c) {
  std::vector<std::size_t> pos(c.size());
  for (ObjId x = 0; x < c.base().size(); ++x) {
    const auto m = c.objects_of_type(x);
    for (std::size_t i = 0; i < m.size(); ++i) pos[m[i]] = i;
  }
  return pos;
}

/// -⊗f: C_Y -> C_X as a fiber table, if every tensor exists.
std::optional<std::vector<Elem>> tensor_map(const QCategory& c, const FiberSet& fs,
                                            const std::vector<std::size_t>& pos, ObjId x, ObjId y, Elem f) {
  std::vector<Elem> table;
  for (std::size_t obj : fs.fibers[y].members) {
    const auto t = tensor(c, obj, QArrow{x, y, f});
    if (t.empty()) return std::nullopt;
    table.push_back(pos[t.representative()]);
  }
  return table;
}

std::optional<std::vector<Elem>> cotensor_map(const QCategory& c, const FiberSet& fs,
                                              const std::vector<std::size_t>& pos, ObjId x, ObjId y, Elem f) {
  std::vector<Elem> table;
  for (std::size_t obj : fs.fibers[x].members) {
    const auto t = cotensor(c, QArrow{x, y, f}, obj);
    if (t.empty()) return std::nullopt;
    table.push_back(pos[t.representative()]);
  }
  return table;
}

FinitePreorder opposite_order(const FinitePreorder& o) {
  std::vector<char> rel(o.size() * o.size());
  for (Elem a = 0; a < o.size(); ++a)
    for (Elem b = 0; b < o.size(); ++b) rel[a * o.size() + b] = o.leq(b, a);
  return FinitePreorder::from_matrix(o.names(), std::move(rel));
}

bool mutually_isomorphic(const QCategory& c, const WitnessSet& w) {
  for (std::size_t a : w.members)
    for (std::size_t b : w.members)
      if (!c.isomorphic(a, b)) return false;
  return true;
}

/// Left adjointness decided by exhaustive search for a right adjoint.
bool has_right_adjoint_by_search(const QFunctor& f) {
  for (auto& g : all_functors(*f.target, *f.source))
    if (check_adjunction(f, QFunctor{f.target, f.source, std::move(g)}).holds) return true;
  return false;
}

bool synthesis_succeeds(const QFunctor& f) {
  try {
    synthesize_right_adjoint(f);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::EnumerationCapExceeded) throw;
    return false;
  }
}

// ---------------------------------------------------------------------------
// Category checks

void tensor_law_checks(Recorder& rec, const QCategory& c) {
  const auto& q = c.base();
  rec.run("tensor.unit", [&]() -> Outcome {
    for (std::size_t y = 0; y < c.size(); ++y)
      if (!tensor(c, y, q.identity_arrow(c.type(y))).contains(y)) return "y=" + c.object(y);
    return ok;
  });
  rec.run("tensor.associativity", [&]() -> Outcome {
    for (std::size_t y = 0; y < c.size(); ++y) {
      const ObjId ty = c.type(y);
      for (ObjId x = 0; x < q.size(); ++x)
        for (Elem f = 0; f < q.hom(x, ty).size(); ++f) {
          const auto yf = tensor(c, y, QArrow{x, ty, f});
          if (yf.empty()) continue;
          for (ObjId w = 0; w < q.size(); ++w)
            for (Elem g = 0; g < q.hom(w, x).size(); ++g) {
              const auto lhs = tensor(c, y, QArrow{w, ty, q.compose(w, x, ty, f, g)});
              const auto rhs = tensor(c, yf.representative(), QArrow{w, x, g});
              if (lhs.empty() || rhs.empty()) continue;
              if (!c.isomorphic(lhs.representative(), rhs.representative()))
                return "y=" + c.object(y) + " f=" + q.arrow_name(x, ty, f) + " g=" + q.arrow_name(w, x, g);
            }
        }
    }
    return ok;
  });
  rec.run("tensor.joins", [&]() -> Outcome {
    for (std::size_t y = 0; y < c.size(); ++y) {
      const ObjId ty = c.type(y);
      for (ObjId x = 0; x < q.size(); ++x) {
        const auto& hom = q.hom(x, ty);
        const auto bottom = tensor(c, y, QArrow{x, ty, hom.bottom()});
        if (!bottom.empty() && !fiber_supremum(c, x, {}).contains(bottom.representative()))
          return "empty join: y=" + c.object(y) + " f=" + q.arrow_name(x, ty, hom.bottom());
        for (Elem f = 0; f < hom.size(); ++f)
          for (Elem f2 = f + 1; f2 < hom.size(); ++f2) {
            const auto a = tensor(c, y, QArrow{x, ty, f});
            const auto b = tensor(c, y, QArrow{x, ty, f2});
            const auto j = tensor(c, y, QArrow{x, ty, hom.join(f, f2)});
            if (a.empty() || b.empty() || j.empty()) continue;
            const std::size_t pair[] = {a.representative(), b.representative()};
            if (!fiber_supremum(c, x, pair).contains(j.representative()))
              return "y=" + c.object(y) + " f=" + q.arrow_name(x, ty, f) + " f'=" + q.arrow_name(x, ty, f2);
          }
      }
    }
    return ok;
  });
  rec.run("tensor.monotone", [&]() -> Outcome {
    for (std::size_t y = 0; y < c.size(); ++y)
      for (std::size_t y2 = 0; y2 < c.size(); ++y2) {
        if (!c.leq(y, y2)) continue;
        const ObjId ty = c.type(y);
        for (ObjId x = 0; x < q.size(); ++x)
          for (Elem f = 0; f < q.hom(x, ty).size(); ++f) {
            const auto a = tensor(c, y, QArrow{x, ty, f});
            const auto b = tensor(c, y2, QArrow{x, ty, f});
            if (a.empty() || b.empty()) continue;
            if (!c.leq(a.representative(), b.representative()))
              return "y=" + c.object(y) + " y'=" + c.object(y2) + " f=" + q.arrow_name(x, ty, f);
          }
      }
    return ok;
  });
}

void completeness_checks(Recorder& rec, const CategoryFacts& facts, std::size_t cap) {
  const auto& c = *facts.category;
  const auto& q = c.base();
  const auto& r = *facts.report;

  rec.run("completeness.witnesses-recheck", [&]() -> Outcome {
    if (auto m = missing_tensor(c); m.has_value() == r.tensored || (m && !tensor(c, m->first, m->second).empty()))
      return "tensored";
    if (auto m = missing_cotensor(c);
        m.has_value() == r.cotensored || (m && !cotensor(c, m->first, m->second).empty()))
      return "cotensored";
    for (const char* flag : {"tensored", "cotensored", "conically_cocomplete", "order_cocomplete", "cocomplete"}) {
      const bool value = std::string_view(flag) == "tensored"               ? r.tensored
                         : std::string_view(flag) == "cotensored"           ? r.cotensored
                         : std::string_view(flag) == "conically_cocomplete" ? r.conically_cocomplete
                         : std::string_view(flag) == "order_cocomplete"     ? r.order_cocomplete
                                                                            : r.cocomplete;
      if (value == static_cast<bool>(r.witnesses.count(flag))) return std::string("witness presence for ") + flag;
    }
    return ok;
  });
  rec.run("completeness.cocomplete-iff-tensored-and-conical", [&]() -> Outcome {
    if (r.cocomplete != (r.tensored && r.conically_cocomplete))
      return "cocomplete=" + flag_text(r.cocomplete) + " tensored=" + flag_text(r.tensored) +
             " conical=" + flag_text(r.conically_cocomplete);
    return ok;
  });
  rec.run("completeness.cocomplete-implies-all", [&]() -> Outcome {
    if (r.cocomplete && !(r.tensored && r.cotensored && r.conically_cocomplete && r.order_cocomplete))
      return "cocomplete but some flag false";
    return ok;
  });
  rec.run("completeness.cotensored-is-dual-tensored", [&]() -> Outcome {
    if (r.cotensored != is_tensored(opposite(c))) return "cotensored=" + flag_text(r.cotensored);
    return ok;
  });
  rec.run("colimit.conical-is-supremum", [&]() -> Outcome {
    Outcome out;
    for_each_fiber_subset(c, cap, [&](ObjId x, std::span<const std::size_t> family) {
      const auto sup = fiber_supremum(c, x, family);
      for (std::size_t w : conical_colimit(c, x, family).members)
        if (!sup.contains(w)) {
          out = "type " + q.object(x) + " witness " + c.object(w);
          return false;
        }
      return true;
    });
    return out;
  });
  rec.run("colimit.supremum-is-conical-when-cotensored", [&]() -> Outcome {
    if (!r.cotensored) return ok;
    if (r.conically_cocomplete != r.order_cocomplete) return "conical and order flags differ";
    Outcome out;
    for_each_fiber_subset(c, cap, [&](ObjId x, std::span<const std::size_t> family) {
      const auto conical = conical_colimit(c, x, family);
      for (std::size_t w : fiber_supremum(c, x, family).members)
        if (!conical.contains(w)) {
          out = "type " + q.object(x) + " witness " + c.object(w);
          return false;
        }
      return true;
    });
    return out;
  });
  rec.run("completeness.notions-coincide", [&]() -> Outcome {
    if (!(r.tensored && r.cotensored)) return ok;
    const auto op = completeness_report(std::make_shared<const QCategory>(opposite(c)), cap);
    const bool flags[] = {r.conically_cocomplete, r.order_cocomplete, r.cocomplete,
                          op.conically_cocomplete, op.order_cocomplete, op.cocomplete};
    for (bool f : flags)
      if (f != flags[0])
        return "conical=" + flag_text(flags[0]) + " order=" + flag_text(flags[1]) + " cocomplete=" +
               flag_text(flags[2]) + " dual conical=" + flag_text(flags[3]) + " dual order=" +
               flag_text(flags[4]) + " dual cocomplete=" + flag_text(flags[5]);
    return ok;
  });
}

void witness_checks(Recorder& rec, const QCategory& c, std::size_t cap) {
  const auto& q = c.base();
  rec.run("witness.members-isomorphic", [&]() -> Outcome {
    for (std::size_t y = 0; y < c.size(); ++y)
      for (ObjId x = 0; x < q.size(); ++x) {
        for (Elem f = 0; f < q.hom(x, c.type(y)).size(); ++f)
          if (!mutually_isomorphic(c, tensor(c, y, QArrow{x, c.type(y), f})))
            return "tensor y=" + c.object(y) + " f=" + q.arrow_name(x, c.type(y), f);
        for (Elem f = 0; f < q.hom(c.type(y), x).size(); ++f)
          if (!mutually_isomorphic(c, cotensor(c, QArrow{c.type(y), x, f}, y)))
            return "cotensor x=" + c.object(y) + " f=" + q.arrow_name(c.type(y), x, f);
      }
    Outcome out;
    for_each_fiber_subset(c, cap, [&](ObjId x, std::span<const std::size_t> family) {
      if (!mutually_isomorphic(c, conical_colimit(c, x, family)) ||
          !mutually_isomorphic(c, fiber_supremum(c, x, family))) {
        out = "family of type " + q.object(x);
        return false;
      }
      return true;
    });
    return out;
  });
}

void adjoint_tensor_checks(Recorder& rec, const CategoryFacts& facts) {
  const auto& c = *facts.category;
  const auto& q = c.base();
  const auto& r = *facts.report;
  const auto fs = fibers(c);
  const auto pos = positions(c);

  rec.run("tensor-cotensor.adjunction", [&]() -> Outcome {
    Outcome out;
    for_each_arrow(q, [&](ObjId x, ObjId y, Elem f) {
      if (out) return;
      auto left = tensor_map(c, fs, pos, x, y, f);
      auto right = cotensor_map(c, fs, pos, x, y, f);
      if (!left || !right) return;
      const MonotoneMap l{fs.fibers[y].order, fs.fibers[x].order, *left};
      const MonotoneMap rt{fs.fibers[x].order, fs.fibers[y].order, *right};
      if (!is_order_adjunction(l, rt)) out = "f=" + q.arrow_name(x, y, f);
    });
    return out;
  });

  rec.run("hom-formula.tensor", [&]() -> Outcome {
    for (std::size_t y = 0; y < c.size(); ++y)
      for (std::size_t z = 0; z < c.size(); ++z) {
        const ObjId ty = c.type(y), tz = c.type(z);
        const auto& hom = q.hom(tz, ty);
        Elem acc = hom.bottom();
        bool complete = true;
        for (Elem f = 0; f < hom.size() && complete; ++f) {
          const auto t = tensor(c, y, QArrow{tz, ty, f});
          if (t.empty()) complete = false;
          else if (c.leq(t.representative(), z)) acc = hom.join(acc, f);
        }
        if (complete && acc != c.hom(y, z)) return "y=" + c.object(y) + " z=" + c.object(z);
      }
    return ok;
  });
  rec.run("hom-formula.cotensor", [&]() -> Outcome {
    // The meet is taken in the opposite of the hom-lattice, i.e. it is a join in Q.
    for (std::size_t z = 0; z < c.size(); ++z)
      for (std::size_t x = 0; x < c.size(); ++x) {
        const ObjId tx = c.type(x), tz = c.type(z);
        const auto& hom = q.hom(tx, tz);
        Elem acc = hom.bottom();
        bool complete = true;
        for (Elem f = 0; f < hom.size() && complete; ++f) {
          const auto t = cotensor(c, QArrow{tx, tz, f}, x);
          if (t.empty()) complete = false;
          else if (c.leq(z, t.representative())) acc = hom.join(acc, f);
        }
        if (complete && acc != c.hom(z, x)) return "z=" + c.object(z) + " x=" + c.object(x);
      }
    return ok;
  });

  if (!r.tensored) return;

  rec.run("cotensored.iff-tensor-maps-left-adjoint", [&]() -> Outcome {
    bool all_adjoint = true;
    Outcome out;
    for_each_arrow(q, [&](ObjId x, ObjId y, Elem f) {
      if (out || !all_adjoint) return;
      const auto left = tensor_map(c, fs, pos, x, y, f);
      const auto right = find_right_adjoint(MonotoneMap{fs.fibers[y].order, fs.fibers[x].order, *left});
      if (!right) {
        all_adjoint = false;
        return;
      }
      for (Elem i = 0; i < fs.fibers[x].members.size(); ++i) {
        const std::size_t obj = fs.fibers[x].members[i];
        const auto co = cotensor(c, QArrow{x, y, f}, obj);
        if (!co.empty() && !co.contains(fs.fibers[y].members[(*right)(i)]))
          out = "adjoint value is not a cotensor: f=" + q.arrow_name(x, y, f) + " x=" + c.object(obj);
      }
    });
    if (out) return out;
    if (all_adjoint != r.cotensored)
      return "left adjoints=" + flag_text(all_adjoint) + " cotensored=" + flag_text(r.cotensored);
    return ok;
  });

  rec.run("cotensored.three-way", [&]() -> Outcome {
    bool hom_maps_left_adjoint = true;
    for (std::size_t x = 0; x < c.size() && hom_maps_left_adjoint; ++x)
      for (ObjId y = 0; y < q.size() && hom_maps_left_adjoint; ++y) {
        const ObjId tx = c.type(x);
        auto target = std::make_shared<const FinitePreorder>(opposite_order(q.hom(tx, y).order()));
        std::vector<Elem> table;
        for (std::size_t obj : fs.fibers[y].members) table.push_back(c.hom(obj, x));
        hom_maps_left_adjoint = find_right_adjoint(MonotoneMap{fs.fibers[y].order, target, table}).has_value();
      }
    bool representables_left_adjoint = true;
    std::vector<CategoryPtr> copresheaves(q.size());
    const auto self = facts.category;
    for (std::size_t x = 0; x < c.size() && representables_left_adjoint; ++x) {
      const ObjId tx = c.type(x);
      if (!copresheaves[tx])
        copresheaves[tx] = std::make_shared<const QCategory>(copresheaf_category(c.base_ptr(), tx));
      const auto& pd = *copresheaves[tx];
      std::vector<std::size_t> map;
      for (std::size_t y = 0; y < c.size(); ++y)
        map.push_back(*pd.find(copresheaf_object_name(q, tx, c.type(y), c.hom(y, x))));
      representables_left_adjoint = synthesis_succeeds(validate_functor(self, copresheaves[tx], std::move(map)));
    }
    if (hom_maps_left_adjoint != r.cotensored || representables_left_adjoint != r.cotensored)
      return "hom-maps=" + flag_text(hom_maps_left_adjoint) + " representables=" +
             flag_text(representables_left_adjoint) + " cotensored=" + flag_text(r.cotensored);
    return ok;
  });
}

void weighted_colimit_checks(Recorder& rec, const CategoryFacts& facts, std::size_t cap) {
  const auto& cp = facts.category;
  const auto& c = *cp;
  const auto& q = c.base();
  const bool cocomplete = facts.report->cocomplete;

  rec.run("weighted-colimit.routes", [&]() -> Outcome {
    const auto id = identity_functor(cp);
    for (ObjId x = 0; x < q.size(); ++x)
      for (const auto& phi : enumerate_presheaves(cp, x, cap)) {
        const auto w = weighted_colimit(phi, id, cocomplete);
        if (!mutually_isomorphic(c, w.general[0])) return "non-isomorphic witnesses";
        if (cocomplete && w.general[0].empty()) return "cocomplete category without a presheaf colimit";
      }
    return ok;
  });
  rec.run("weighted-colimit.tensor-weight", [&]() -> Outcome {
    for (std::size_t y = 0; y < c.size(); ++y) {
      const ObjId ty = c.type(y);
      auto star_y = std::make_shared<const QCategory>(one_object(c.base_ptr(), ty));
      const auto point = validate_functor(star_y, cp, {y});
      for (ObjId x = 0; x < q.size(); ++x) {
        auto star_x = std::make_shared<const QCategory>(one_object(c.base_ptr(), x));
        for (Elem f = 0; f < q.hom(x, ty).size(); ++f) {
          const auto weight = validate_distributor(star_x, star_y, {f});
          if (weighted_colimit(weight, point).general[0] != tensor(c, y, QArrow{x, ty, f}))
            return "y=" + c.object(y) + " f=" + q.arrow_name(x, ty, f);
        }
      }
    }
    return ok;
  });
  rec.run("weighted-colimit.conical-weight", [&]() -> Outcome {
    Outcome out;
    for_each_fiber_subset(c, cap, [&](ObjId x, std::span<const std::size_t> family) {
      std::vector<std::string> names;
      for (std::size_t i : family) names.push_back(c.object(i));
      auto diagram = std::make_shared<const QCategory>(
          free_fiber(c.base_ptr(), FinitePreorder::closure(names, {}), x));
      const auto inclusion = validate_functor(diagram, cp, {family.begin(), family.end()});
      auto star = std::make_shared<const QCategory>(one_object(c.base_ptr(), x));
      const auto weight = validate_distributor(star, diagram, std::vector<Elem>(family.size(), q.identity(x)));
      if (weighted_colimit(weight, inclusion).general[0] != conical_colimit(c, x, family)) {
        out = "type " + q.object(x) + " family {" + [&] {
          std::string s;
          for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
          return s;
        }() + "}";
        return false;
      }
      return true;
    });
    return out;
  });
}

Outcome closed_pseudofunctor_facts(const Pseudofunctor2& p) {
  const auto& q = *p.base;
  std::size_t empty = 0;
  for (const auto& f : p.fibers) empty += f.empty();
  if (empty != 0 && empty != p.fibers.size()) return "some but not all fibers are empty";
  for (ObjId x = 0; x < q.size(); ++x)
    for (Elem e = 0; e < p.fibers[x].size(); ++e)
      if (!p.fibers[x].is_supremum(p.apply(x, x, q.zero(x, x), e), {}))
        return "F(0)(" + p.fibers[x].name(e) + ") is not a bottom in fiber " + q.object(x);
  return ok;
}

Outcome tops_from_adjoint(const Pseudofunctor2& p) {
  const auto& q = *p.base;
  for (ObjId x = 0; x < q.size(); ++x) {
    auto order = std::make_shared<const FinitePreorder>(p.fibers[x]);
    const auto right = find_right_adjoint(MonotoneMap{order, order, p.action(x, x, q.zero(x, x))});
    if (!right) return "F(0) has no right adjoint on fiber " + q.object(x);
    for (Elem e = 0; e < order->size(); ++e)
      if (!order->is_infimum((*right)(e), {})) return "right adjoint of F(0) misses the top in fiber " + q.object(x);
  }
  return ok;
}

Outcome levels_match(const PseudofunctorLevels& l, const CompletenessReport& r, bool skeletal) {
  if (l.closed_into_cat_tensor2 != r.tensored || l.maps_level != r.cotensored || l.cocont_level != r.cocomplete ||
      l.skeletal_level != (skeletal && r.cocomplete))
    return "levels " + flag_text(l.closed_into_cat_tensor2) + "/" + flag_text(l.maps_level) + "/" +
           flag_text(l.cocont_level) + "/" + flag_text(l.skeletal_level) + " flags " + flag_text(r.tensored) +
           "/" + flag_text(r.cotensored) + "/" + flag_text(r.cocomplete) + "/" + flag_text(skeletal);
  return ok;
}

void variation_checks(Recorder& rec, const CategoryFacts& facts, std::size_t cap) {
  const auto& c = *facts.category;
  const auto& r = *facts.report;
  if (!r.tensored) {
    rec.run("pseudofunctor.requires-tensors", [&]() -> Outcome {
      try {
        category_to_pseudofunctor(c);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotTensored) return ok;
        throw;
      }
      return "untensored category accepted";
    });
    return;
  }
  const auto p = category_to_pseudofunctor(c);
  rec.run("pseudofunctor.closed", [&]() -> Outcome {
    const auto v = validate_pseudofunctor(p);
    if (!v.valid || !v.closed) return "valid=" + flag_text(v.valid) + " closed=" + flag_text(v.closed);
    return ok;
  });
  rec.run("pseudofunctor.emptiness-and-bottoms", [&] { return closed_pseudofunctor_facts(p); });
  const auto levels = classify_pseudofunctor(p);
  rec.run("pseudofunctor.tops-from-adjoint", [&]() -> Outcome {
    if (!levels.maps_level) return ok;
    return tops_from_adjoint(p);
  });
  rec.run("levels.match-completeness", [&] { return levels_match(levels, r, facts.skeletal); });
  rec.run("equivalence.category-roundtrip", [&]() -> Outcome {
    const auto rt = category_roundtrip(c);
    if (!rt.isomorphic) return "mismatch";
    return ok;
  });
  rec.run("equivalence.pseudofunctor-roundtrip", [&]() -> Outcome {
    if (!pseudofunctor_roundtrip(p).isomorphic) return "mismatch";
    return ok;
  });
  rec.run("transformation.identity-flags", [&]() -> Outcome {
    const auto f = classify_transformation(functor_to_laxnat(identity_functor(facts.category)), cap);
    if (!(f.pseudonatural && f.bottom_preserving_components && f.left_adjoint_components &&
          f.sup_morphism_components))
      return "identity transformation lacks a flag";
    return ok;
  });
  if (facts.skeletal && r.cocomplete) {
    rec.run("equivalence.module-roundtrip", [&]() -> Outcome {
      if (!skeletal_category_roundtrip(c, cap).isomorphic) return "category side";
      if (!module_roundtrip(category_to_module(c, cap)).isomorphic) return "module side";
      return ok;
    });
  }
}

}  // namespace

CategoryFacts category_facts(const CategoryPtr& c, std::size_t cap) {
  CategoryFacts facts;
  facts.category = c;
  facts.skeletal = fibers(*c).skeletal;
  try {
    facts.report = completeness_report(c, cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EnumerationCapExceeded) throw;
  }
  return facts;
}

std::vector<CheckResult> category_checks(const CategoryFacts& facts, std::size_t cap) {
  std::vector<CheckResult> out;
  Recorder rec(facts.category->name(), out);
  const auto& c = *facts.category;
  rec.run("category.underlying-preorder", [&]() -> Outcome {
    for (std::size_t a = 0; a < c.size(); ++a) {
      if (!c.leq(a, a)) return "reflexivity at " + c.object(a);
      for (std::size_t b = 0; b < c.size(); ++b)
        for (std::size_t d = 0; d < c.size(); ++d)
          if (c.leq(a, b) && c.leq(b, d) && !c.leq(a, d)) return "transitivity " + c.object(a) + c.object(d);
    }
    return ok;
  });
  tensor_law_checks(rec, c);
  if (!facts.report) {
    rec.skip("completeness.report", "enumeration cap exceeded");
    return out;
  }
  witness_checks(rec, c, cap);
  completeness_checks(rec, facts, cap);
  adjoint_tensor_checks(rec, facts);
  weighted_colimit_checks(rec, facts, cap);
  variation_checks(rec, facts, cap);
  return out;
}

std::vector<CheckResult> functor_pair_checks(const CategoryFacts& fa, const CategoryFacts& fb, std::size_t cap) {
  std::vector<CheckResult> out;
  const auto& a = *fa.category;
  const auto& b = *fb.category;
  Recorder rec(a.name() + "=>" + b.name(), out);
  if (!fa.report || !fb.report) {
    rec.skip("functor.pair", "enumeration cap exceeded");
    return out;
  }
  const auto& ra = *fa.report;
  const auto& rb = *fb.report;
  const auto forward = all_functors(a, b);
  const auto backward = all_functors(b, a);
  auto functor = [&](const std::vector<std::size_t>& m) { return QFunctor{fa.category, fb.category, m}; };

  rec.run("adjunction.weaker-version", [&]() -> Outcome {
    const auto fsa = fibers(a);
    const auto fsb = fibers(b);
    const auto pa = positions(a);
    const auto pb = positions(b);
    for (const auto& f : forward)
      for (const auto& g : backward) {
        const bool enriched = check_adjunction(functor(f), QFunctor{fb.category, fa.category, g}).holds;
        bool fiberwise = true;
        for (ObjId x = 0; x < a.base().size() && fiberwise; ++x) {
          std::vector<Elem> lt, rt;
          for (std::size_t obj : fsa.fibers[x].members) lt.push_back(pb[f[obj]]);
          for (std::size_t obj : fsb.fibers[x].members) rt.push_back(pa[g[obj]]);
          fiberwise = is_order_adjunction(MonotoneMap{fsa.fibers[x].order, fsb.fibers[x].order, lt},
                                          MonotoneMap{fsb.fibers[x].order, fsa.fibers[x].order, rt});
        }
        if (enriched != fiberwise) return "F=" + map_text(a, b, f) + " G=" + map_text(b, a, g);
      }
    return ok;
  });

  if (!ra.tensored) return out;
  rec.run("adjoint.synthesis-matches-search", [&]() -> Outcome {
    for (const auto& f : forward) {
      const auto F = functor(f);
      if (synthesis_succeeds(F) != has_right_adjoint_by_search(F)) return "F=" + map_text(a, b, f);
    }
    return ok;
  });

  if (!rb.tensored) return out;
  rec.run("transformation.functor-iff-lax", [&]() -> Outcome {
    const auto pa = category_to_pseudofunctor(a);
    const auto pb = category_to_pseudofunctor(b);
    const auto posb = positions(b);
    // Every type-preserving object map, functorial or not.
    std::vector<std::vector<std::size_t>> choices(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      choices[i] = b.objects_of_type(a.type(i));
      if (choices[i].empty()) return ok;
    }
    std::vector<std::size_t> pick(a.size(), 0), map(a.size());
    while (true) {
      for (std::size_t i = 0; i < a.size(); ++i) map[i] = choices[i][pick[i]];
      LaxNat t{pa, pb, {}};
      for (ObjId x = 0; x < a.base().size(); ++x) {
        std::vector<Elem> comp;
        for (std::size_t obj : a.objects_of_type(x)) comp.push_back(posb[map[obj]]);
        t.components.push_back(std::move(comp));
      }
      if (is_functor(a, b, map) != lax_failure(t).empty()) return "map=" + map_text(a, b, map);
      std::size_t i = a.size();
      while (i > 0 && ++pick[i - 1] == choices[i - 1].size()) pick[--i] = 0;
      if (i == 0) break;
    }
    return ok;
  });
  rec.run("transformation.order-faithful", [&]() -> Outcome {
    for (const auto& f : forward)
      for (const auto& g : forward) {
        bool functors_leq = true;
        for (std::size_t i = 0; i < a.size(); ++i) functors_leq = functors_leq && b.leq(f[i], g[i]);
        const auto tf = functor_to_laxnat(functor(f));
        const auto tg = functor_to_laxnat(functor(g));
        bool components_leq = true;
        for (ObjId x = 0; x < a.base().size(); ++x)
          for (Elem e = 0; e < tf.components[x].size(); ++e)
            components_leq = components_leq && tf.target.fibers[x].leq(tf.components[x][e], tg.components[x][e]);
        if (functors_leq != components_leq) return "F=" + map_text(a, b, f) + " G=" + map_text(a, b, g);
      }
    return ok;
  });
  rec.run("transformation.classification", [&]() -> Outcome {
    for (const auto& f : forward) {
      const auto F = functor(f);
      const auto flags = classify_transformation(functor_to_laxnat(F), cap);
      const std::string w = "F=" + map_text(a, b, f);
      if (flags.pseudonatural != preserves_tensors(F)) return "pseudonatural vs tensor preservation: " + w;
      if (flags.pseudonatural && !flags.bottom_preserving_components) return "bottoms not preserved: " + w;
      const bool left = has_right_adjoint_by_search(F);
      if (left != (flags.pseudonatural && flags.left_adjoint_components)) return "left adjoint vs maps: " + w;
      if (ra.cocomplete && rb.cocomplete && left != (flags.pseudonatural && flags.sup_morphism_components))
        return "left adjoint vs sup-morphisms: " + w;
    }
    return ok;
  });

  if (!(ra.cocomplete && rb.cocomplete)) return out;
  rec.run("cocontinuity.equivalence", [&]() -> Outcome {
    const auto ida = identity_functor(fa.category);
    for (const auto& f : forward) {
      const auto F = functor(f);
      bool preserves = true;
      for (ObjId x = 0; x < a.base().size() && preserves; ++x)
        for (const auto& phi : enumerate_presheaves(fa.category, x, cap)) {
          const auto source = weighted_colimit(phi, ida, true).general[0];
          if (!weighted_colimit(phi, F, true).general[0].contains(f[source.representative()])) {
            preserves = false;
            break;
          }
        }
      const bool criterion = preserves_tensors(F) && preserves_fiber_suprema(F, cap);
      const bool synthesized = synthesis_succeeds(F);
      if (preserves != criterion || preserves != synthesized)
        return "F=" + map_text(a, b, f) + " presheaf colimits=" + flag_text(preserves) + " tensors+suprema=" +
               flag_text(criterion) + " adjoint=" + flag_text(synthesized);
    }
    return ok;
  });
  return out;
}

std::vector<CheckResult> pseudofunctor_checks(const std::vector<Pseudofunctor2>& family, const std::string& instance,
                                              std::size_t cap) {
  (void)cap;
  std::vector<CheckResult> out;
  Recorder rec(instance, out);
  auto over_closed = [&](auto&& body) -> Outcome {
    for (const auto& p : family) {
      const auto v = validate_pseudofunctor(p);
      if (!v.valid || !v.closed) continue;
      if (auto w = body(p)) return p.name + ": " + *w;
    }
    return ok;
  };
  rec.run("pseudofunctor.non-closed-rejected", [&]() -> Outcome {
    for (const auto& p : family) {
      const auto v = validate_pseudofunctor(p);
      if (!v.valid || v.closed) continue;
      try {
        pseudofunctor_to_category(p);
        return p.name + ": accepted";
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotClosed) return p.name + ": " + e.what();
      }
    }
    return ok;
  });
  rec.run("pseudofunctor.emptiness-and-bottoms", [&] { return over_closed(closed_pseudofunctor_facts); });
  rec.run("pseudofunctor.tops-from-adjoint", [&] {
    return over_closed([](const Pseudofunctor2& p) -> Outcome {
      if (!classify_pseudofunctor(p).maps_level) return ok;
      return tops_from_adjoint(p);
    });
  });
  rec.run("equivalence.pseudofunctor-roundtrip", [&] {
    return over_closed([](const Pseudofunctor2& p) -> Outcome {
      if (!pseudofunctor_roundtrip(p).isomorphic) return "mismatch";
      return ok;
    });
  });
  rec.run("levels.match-completeness", [&] {
    return over_closed([&](const Pseudofunctor2& p) -> Outcome {
      auto c = std::make_shared<const QCategory>(pseudofunctor_to_category(p));
      const auto facts = category_facts(c, cap);
      if (!facts.report) throw Error(ErrorKind::EnumerationCapExceeded, {p.name});
      return levels_match(classify_pseudofunctor(p), *facts.report, facts.skeletal);
    });
  });
  return out;
}

std::vector<CheckResult> module_checks(const QModule& m, std::size_t cap) {
  std::vector<CheckResult> out;
  Recorder rec(m.name, out);
  rec.run("equivalence.module-roundtrip", [&]() -> Outcome {
    const auto rt = module_roundtrip(m);
    if (!rt.isomorphic) {
      std::string w;
      for (const auto& s : rt.witnesses) w += s + " ";
      return w;
    }
    return ok;
  });
  rec.run("levels.module-is-skeletal-cocomplete", [&]() -> Outcome {
    auto c = std::make_shared<const QCategory>(module_to_category(m));
    const auto facts = category_facts(c, cap);
    if (!facts.report) throw Error(ErrorKind::EnumerationCapExceeded, {m.name});
    if (!facts.skeletal || !facts.report->cocomplete) return "category of the module is not skeletal cocomplete";
    const auto l = classify_pseudofunctor(module_to_pseudofunctor(m));
    if (!l.skeletal_level) return "module pseudofunctor misses the skeletal level";
    return ok;
  });
  if (m.base->size() == 1) {
    rec.run("action.module-inverse", [&]() -> Outcome {
      if (!(action_to_module(module_to_action(m)) == m)) return "module -> action -> module differs";
      return ok;
    });
    rec.run("action.morphism-agreement", [&]() -> Outcome {
      const auto a = module_to_action(m);
      for (const auto& alpha : all_monotone_maps(m.fibers[0].order(), m.fibers[0].order()))
        if (module_morphism_failure(m, m, {alpha}).empty() != action_morphism_failure(a, a, alpha).empty())
          return "endomap disagreement";
      return ok;
    });
  }
  return out;
}

std::vector<CheckResult> action_checks(const std::vector<QuantaleAction>& family, const std::string& instance) {
  std::vector<CheckResult> out;
  Recorder rec(instance, out);
  rec.run("action.module-inverse", [&]() -> Outcome {
    for (const auto& a : family) {
      const auto m = action_to_module(a);
      if (!(module_to_action(m) == a)) return a.name + ": action -> module -> action differs";
      if (!(action_to_module(module_to_action(m)) == m)) return a.name + ": module -> action -> module differs";
    }
    return ok;
  });
  rec.run("action.morphism-agreement", [&]() -> Outcome {
    for (const auto& a : family)
      for (const auto& b : family) {
        if (!(*a.quantale == *b.quantale)) continue;
        const auto ma = action_to_module(a);
        const auto mb = action_to_module(b);
        // Every map between carriers, monotone or not.
        const std::size_t n = a.carrier.size(), k = b.carrier.size();
        std::vector<Elem> alpha(n, 0);
        while (true) {
          if (module_morphism_failure(ma, mb, {alpha}).empty() != action_morphism_failure(a, b, alpha).empty())
            return a.name + " -> " + b.name;
          std::size_t i = n;
          while (i > 0 && ++alpha[i - 1] == k) alpha[--i] = 0;
          if (i == 0) break;
        }
      }
    return ok;
  });
  return out;
}

std::vector<CheckResult> quantaloid_checks(const QuantaloidPtr& qp) {
  std::vector<CheckResult> out;
  const auto& q = *qp;
  Recorder rec(q.name(), out);
  rec.run("residual.brute-force-join", [&]() -> Outcome {
    const std::size_t n = q.size();
    for (ObjId x = 0; x < n; ++x)
      for (ObjId y = 0; y < n; ++y)
        for (ObjId z = 0; z < n; ++z) {
          // lifting: f: x->y, g: z->y, join of h: z->x with f∘h <= g.
          for (Elem f = 0; f < q.hom(x, y).size(); ++f)
            for (Elem g = 0; g < q.hom(z, y).size(); ++g) {
              Elem acc = q.hom(z, x).bottom();
              for (Elem h = 0; h < q.hom(z, x).size(); ++h)
                if (q.hom(z, y).leq(q.compose(z, x, y, f, h), g)) acc = q.hom(z, x).join(acc, h);
              if (acc != q.lifting(x, y, z, f, g))
                return "lifting [" + q.arrow_name(x, y, f) + ", " + q.arrow_name(z, y, g) + "]";
            }
          // extension: f: x->y, g: x->z, join of h: y->z with h∘f <= g.
          for (Elem f = 0; f < q.hom(x, y).size(); ++f)
            for (Elem g = 0; g < q.hom(x, z).size(); ++g) {
              Elem acc = q.hom(y, z).bottom();
              for (Elem h = 0; h < q.hom(y, z).size(); ++h)
                if (q.hom(x, z).leq(q.compose(x, y, z, h, f), g)) acc = q.hom(y, z).join(acc, h);
              if (acc != q.extension(x, y, z, f, g))
                return "extension {" + q.arrow_name(x, y, f) + ", " + q.arrow_name(x, z, g) + "}";
            }
        }
    return ok;
  });
  rec.run("quantaloid.opposite-involution", [&]() -> Outcome {
    if (!(opposite(opposite(q)) == q)) return "double opposite differs";
    return ok;
  });
  rec.run("presheaf.categories-valid", [&]() -> Outcome {
    for (ObjId x = 0; x < q.size(); ++x) {
      const auto p = presheaf_category(qp, x);
      const auto pd = copresheaf_category(qp, x);
      for (const auto* c : {&p, &pd}) {
        validate_category(c->data());
        if (!(opposite(opposite(*c)) == *c)) return "double opposite of " + c->name();
      }
    }
    return ok;
  });
  return out;
}

namespace {

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

SuiteReport run_suite(const SuiteOptions& options) {
  std::vector<std::function<std::vector<CheckResult>()>> tasks;
  std::vector<CheckResult> direct;

  // Bundled files.
  Workspace ws;
  std::vector<std::filesystem::path> files;
  for (const auto& dir : options.directories) {
    ws.add_directory(dir);
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
      if (entry.is_regular_file() && is_instance_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::optional<Instance> inst;
    std::string label = path.filename().string();
    {
      Recorder rec(label, direct);
      rec.run("file.loads", [&]() -> Outcome {
        inst = ws.load_file(path);
        return ok;
      });
    }
    if (!inst) continue;
    Recorder rec(inst->name, direct);
    rec.run("file.render-roundtrip", [&]() -> Outcome {
      Workspace fresh;
      for (const auto& dir : options.directories) fresh.add_directory(dir);
      if (!same_instance(fresh.parse(render(*inst)), *inst)) return "parse(render(x)) differs";
      return ok;
    });
    if (auto* q = std::get_if<QuantaloidPtr>(&inst->value)) {
      if (auto b = builtin_quantaloid(inst->name))
        rec.run("file.matches-builtin", [&, b]() -> Outcome { return **q == *b ? ok : Outcome("differs"); });
      auto qp = *q;
      tasks.push_back([qp] { return quantaloid_checks(qp); });
    } else if (auto* c = std::get_if<CategoryPtr>(&inst->value)) {
      if (auto b = builtin_category(inst->name))
        rec.run("file.matches-builtin", [&, b]() -> Outcome { return **c == *b ? ok : Outcome("differs"); });
      auto cp = *c;
      const auto cap = options.cap;
      tasks.push_back([cp, cap] { return category_checks(category_facts(cp, cap), cap); });
    } else if (auto* m = std::get_if<QModule>(&inst->value)) {
      auto mm = *m;
      const auto cap = options.cap;
      tasks.push_back([mm, cap] { return module_checks(mm, cap); });
    } else if (auto* a = std::get_if<QuantaleAction>(&inst->value)) {
      auto aa = *a;
      tasks.push_back([aa] { return action_checks({aa}, aa.name); });
    } else if (auto* p = std::get_if<Pseudofunctor2>(&inst->value)) {
      auto pp = *p;
      const auto cap = options.cap;
      tasks.push_back([pp, cap] { return pseudofunctor_checks({pp}, pp.name, cap); });
    }
  }

  // Exhaustive sweeps.
  std::vector<std::vector<CategoryFacts>> sweeps;
  if (options.max_objects > 0) {
    for (const auto& name : options.sweep_bases) {
      const auto base = builtin_quantaloid(name);
      if (!base) throw Error(ErrorKind::UnresolvedReference, {name}, "unknown sweep base");
      const auto cats = all_categories(base, options.max_objects);
      std::vector<CategoryFacts> facts(cats.size());
      parallel_for(cats.size(), options.threads, [&](std::size_t i) {
        facts[i] = category_facts(std::make_shared<const QCategory>(cats[i]), options.cap);
      });
      sweeps.push_back(std::move(facts));
      auto pseudofunctors = all_pseudofunctors(base, options.max_carrier);
      const auto cap = options.cap;
      const std::string family = "pseudofunctors@" + name;
      tasks.push_back([pseudofunctors = std::move(pseudofunctors), family, cap] {
        return pseudofunctor_checks(pseudofunctors, family, cap);
      });
      auto actions = all_actions(base, options.max_carrier);
      const std::string action_family = "actions@" + name;
      tasks.push_back([actions = std::move(actions), action_family] { return action_checks(actions, action_family); });
    }
  }
  for (const auto& facts : sweeps) {
    for (const auto& f : facts) {
      const auto cap = options.cap;
      const CategoryFacts* fp = &f;
      tasks.push_back([fp, cap] { return category_checks(*fp, cap); });
    }
    for (const auto& a : facts)
      for (const auto& b : facts) {
        const auto cap = options.cap;
        const CategoryFacts *pa = &a, *pb = &b;
        tasks.push_back([pa, pb, cap] { return functor_pair_checks(*pa, *pb, cap); });
      }
  }

  std::vector<std::vector<CheckResult>> results(tasks.size());
  parallel_for(tasks.size(), options.threads, [&](std::size_t i) { results[i] = tasks[i](); });

  SuiteReport report;
  report.results = std::move(direct);
  for (auto& r : results)
    for (auto& c : r) report.results.push_back(std::move(c));
  std::stable_sort(report.results.begin(), report.results.end(), [](const CheckResult& a, const CheckResult& b) {
    return std::tie(a.instance, a.check) < std::tie(b.instance, b.check);
  });
  return report;
}

}  // namespace qlab
