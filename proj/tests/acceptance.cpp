// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "qlab/completion.hpp"
#include "qlab/error.hpp"
#include "qlab/format.hpp"
#include "qlab/instances.hpp"
#include "qlab/suite.hpp"

using namespace qlab;
namespace fs = std::filesystem;

namespace {

const fs::path source_dir = QLAB_SOURCE_DIR;

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (is_instance_file(e.path())) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::size_t> single(const WitnessSet& w) {
  if (w.members.size() != 1) return std::nullopt;
  return w.members[0];
}

Verdict worked_facts() {
  Verdict v;
  const auto& p = *builtin_category("p1@qrel3");
  const auto& q = p.base();
  const ObjId one = *q.find_object("1");
  for (ObjId x = 0; x < q.size(); ++x)
    for (Elem g = 0; g < q.hom(x, one).size(); ++g)
      for (ObjId w = 0; w < q.size(); ++w)
        for (Elem f = 0; f < q.hom(w, x).size(); ++f) {
          const auto t = single(tensor(p, *p.find(presheaf_object_name(q, x, one, g)), QArrow{w, x, f}));
          const auto expected = p.find(presheaf_object_name(q, w, one, q.compose(w, x, one, g, f)));
          if (t != expected) v.fail("tensor in p1@qrel3 differs from composition");
        }
  const auto& pd = *builtin_category("pd1@qrel3");
  for (ObjId y = 0; y < q.size(); ++y)
    for (Elem f = 0; f < q.hom(one, y).size(); ++f)
      for (ObjId z = 0; z < q.size(); ++z)
        for (Elem k = 0; k < q.hom(y, z).size(); ++k) {
          const auto t = single(cotensor(pd, QArrow{y, z, k}, *pd.find(copresheaf_object_name(q, one, y, f))));
          const auto expected = pd.find(copresheaf_object_name(q, one, z, q.compose(one, y, z, k, f)));
          if (t != expected) v.fail("cotensor in pd1@qrel3 differs from composition");
        }
  const auto zero = completeness_report(builtin_category("zero@qrel3"));
  if (!zero.order_cocomplete || zero.conically_cocomplete) v.fail("zero@qrel3 flags");
  const auto r = completeness_report(builtin_category("p1@qrel3"));
  if (!(r.tensored && r.cotensored && r.conically_cocomplete && r.order_cocomplete && r.cocomplete))
    v.fail("p1@qrel3 is not fully complete");
  const auto q2 = builtin_quantaloid("q2");
  std::size_t preorders = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& order : all_preorders(n)) {
      ++preorders;
      if (is_tensored(order_category(q2, order, "p")) != order.has_bottom())
        v.fail("tensored differs from having a bottom on a preorder of size " + std::to_string(n));
    }
  if (preorders != 1 + 4 + 29 + 355) v.fail("preorder enumeration incomplete");
  return v;
}

Verdict theorem_sweep() {
  Verdict v;
  SuiteOptions options;
  options.max_objects = 2;
  const auto report = run_suite(options);
  std::set<std::string> passed;
  for (const auto& r : report.results) {
    if (r.status == CheckStatus::fail) v.fail(r.instance + " " + r.check + ": " + r.witness);
    if (r.status == CheckStatus::skipped) v.fail(r.instance + " " + r.check + " skipped");
    if (r.status == CheckStatus::pass) passed.insert(r.check);
  }
  for (const char* check :
       {"completeness.cocomplete-iff-tensored-and-conical", "completeness.notions-coincide",
        "colimit.conical-is-supremum", "colimit.supremum-is-conical-when-cotensored", "cocontinuity.equivalence",
        "adjunction.weaker-version", "cotensored.three-way", "tensor.unit", "tensor.associativity",
        "tensor.joins", "tensor.monotone", "tensor-cotensor.adjunction", "cotensored.iff-tensor-maps-left-adjoint",
        "hom-formula.tensor", "hom-formula.cotensor", "weighted-colimit.routes"})
    if (!passed.count(check)) v.fail(std::string("check never ran: ") + check);
  if (v.ok) v.detail = std::to_string(report.count(CheckStatus::pass)) + " checks";
  return v;
}

Verdict round_trips() {
  Verdict v;
  std::size_t categories = 0, levels = 0;
  for (const char* base : {"q2", "q3"})
    for (const auto& c : all_categories(builtin_quantaloid(base), 2)) {
      auto cp = std::make_shared<const QCategory>(c);
      const auto r = completeness_report(cp);
      if (!r.tensored) continue;
      ++categories;
      if (!category_roundtrip(c).isomorphic) v.fail(c.name() + " round trip");
      const auto l = classify_pseudofunctor(category_to_pseudofunctor(c));
      const bool skeletal = fibers(c).skeletal;
      if (l.closed_into_cat_tensor2 != r.tensored || l.maps_level != r.cotensored ||
          l.cocont_level != r.cocomplete || l.skeletal_level != (skeletal && r.cocomplete))
        v.fail(c.name() + " levels");
      else
        ++levels;
    }
  std::set<std::string> bases;
  std::size_t modules = 0;
  Workspace ws;
  for (const auto& path : files_in(source_dir / "instances")) {
    const auto inst = ws.load_file(path);
    if (inst.kind != InstanceKind::module) continue;
    const auto& m = std::get<QModule>(inst.value);
    ++modules;
    bases.insert(m.base->name());
    if (!module_roundtrip(m).isomorphic) v.fail(m.name + " round trip");
  }
  if (modules < 3 || bases != std::set<std::string>{"q2", "q3", "qrel3"}) v.fail("bundled modules missing");
  if (categories == 0) v.fail("no tensored categories");
  if (v.ok)
    v.detail = std::to_string(categories) + " categories, " + std::to_string(levels) + " level matches, " +
               std::to_string(modules) + " modules";
  return v;
}

Verdict residual_oracle() {
  Verdict v;
  std::size_t pairs = 0, quantaloids = 0;
  Workspace ws;
  for (const auto& path : files_in(source_dir / "instances")) {
    const auto inst = ws.load_file(path);
    if (inst.kind != InstanceKind::quantaloid) continue;
    ++quantaloids;
    const auto& q = *std::get<QuantaloidPtr>(inst.value);
    for (ObjId x = 0; x < q.size(); ++x)
      for (ObjId y = 0; y < q.size(); ++y)
        for (ObjId z = 0; z < q.size(); ++z)
          for (Elem f = 0; f < q.hom(x, y).size(); ++f) {
            for (Elem g = 0; g < q.hom(z, y).size(); ++g, ++pairs) {
              std::vector<Elem> below;
              for (Elem h = 0; h < q.hom(z, x).size(); ++h)
                if (q.hom(z, y).leq(q.compose(z, x, y, f, h), g)) below.push_back(h);
              if (q.lifting(x, y, z, f, g) != q.hom(z, x).join(below)) v.fail(q.name() + " lifting");
            }
            for (Elem g = 0; g < q.hom(x, z).size(); ++g, ++pairs) {
              std::vector<Elem> below;
              for (Elem h = 0; h < q.hom(y, z).size(); ++h)
                if (q.hom(x, z).leq(q.compose(x, y, z, h, f), g)) below.push_back(h);
              if (q.extension(x, y, z, f, g) != q.hom(y, z).join(below)) v.fail(q.name() + " extension");
            }
          }
  }
  if (quantaloids < 3) v.fail("bundled quantaloids missing");
  if (v.ok) v.detail = std::to_string(pairs) + " arrow pairs over " + std::to_string(quantaloids) + " quantaloids";
  return v;
}

Verdict adjoint_characterization() {
  Verdict v;
  std::size_t maps = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& l : all_lattices(n))
      for (const auto& table : all_monotone_maps(l.order(), l.order())) {
        ++maps;
        bool adjoint = true;
        try {
          const auto adj = right_adjoint(l, l, table);
          if (!is_order_adjunction(adj.left, adj.right)) v.fail("right adjoint is not adjoint");
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::NotSupPreserving) throw;
          adjoint = false;
        }
        if (adjoint != is_sup_morphism(l, l, table).ok) v.fail("discrepancy on a lattice of size " + std::to_string(n));
      }
  if (v.ok) v.detail = std::to_string(maps) + " monotone endomaps";
  return v;
}

Verdict negative_controls() {
  Verdict v;
  const auto files = files_in(source_dir / "counterexamples");
  std::set<ErrorKind> kinds;
  for (const auto& path : files) {
    const auto text = slurp(path);
    const auto expected = read_header(text).expected;
    if (!expected) {
      v.fail(path.filename().string() + " has no expect header");
      continue;
    }
    try {
      Workspace ws;
      ws.load_file(path);
      v.fail(path.filename().string() + " was accepted");
    } catch (const Error& e) {
      if (e.kind() != *expected)
        v.fail(path.filename().string() + " rejected with " + std::string(to_string(e.kind())));
      else
        kinds.insert(e.kind());
    }
  }
  for (ErrorKind k : {ErrorKind::NotAssociative, ErrorKind::UnitLawFails, ErrorKind::NotJoinPreserving,
                      ErrorKind::FunctorInequalityFails, ErrorKind::NotClosed})
    if (!kinds.count(k)) v.fail(std::string("no counterexample for ") + std::string(to_string(k)));
  if (files.size() < 5) v.fail("fewer than 5 counterexamples");
  if (v.ok) v.detail = std::to_string(files.size()) + " files";
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, Verdict (*)()> criteria[] = {
      {"1 worked facts", worked_facts},
      {"2 theorem sweep", theorem_sweep},
      {"3 round trips and levels", round_trips},
      {"4 residual oracle", residual_oracle},
      {"5 adjoint characterization", adjoint_characterization},
      {"6 negative controls", negative_controls},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    all = all && v.ok;
    std::cout << (v.ok ? "PASS " : "FAIL ") << name << (v.detail.empty() ? "" : " (" + v.detail + ")") << "\n";
  }
  return all ? 0 : 1;
}
