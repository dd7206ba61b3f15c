// Command-line front end: one subcommand per library capability.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qlab/completion.hpp"
#include "qlab/error.hpp"
#include "qlab/format.hpp"
#include "qlab/instances.hpp"
#include "qlab/suite.hpp"
#include "qlab/variation.hpp"

namespace {

using namespace qlab;
namespace fs = std::filesystem;

constexpr int exit_true = 0;
constexpr int exit_false = 1;
constexpr int exit_invalid = 2;

/// Output of one subcommand: records for --json, text otherwise.
struct Outcome {
  std::vector<CheckResult> records;
  std::string text;
  int code = exit_true;

  void add(std::string check, std::string instance, bool holds, std::string witness = {}) {
    if (!holds) code = exit_false;
    records.push_back({std::move(check), std::move(instance), holds ? CheckStatus::pass : CheckStatus::fail,
                       std::move(witness)});
  }
};

bool is_input_error(ErrorKind kind) {
  return kind == ErrorKind::SyntaxError || kind == ErrorKind::UnresolvedReference ||
         kind == ErrorKind::PartialTable || kind == ErrorKind::InvalidInput;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidInput, {}, what); }

template <class T>
const T& expect_kind(const Instance& inst, InstanceKind kind) {
  if (inst.kind != kind)
    invalid(inst.name + " is a " + std::string(to_string(inst.kind)) + ", expected a " +
            std::string(to_string(kind)));
  return std::get<T>(inst.value);
}

std::string names(const QCategory& c, const WitnessSet& w) {
  std::string s;
  for (std::size_t i = 0; i < w.members.size(); ++i) s += (i ? " " : "") + c.object(w.members[i]);
  return s;
}

std::size_t object_of(const QCategory& c, const std::string& name) {
  const auto i = c.find(name);
  if (!i) throw Error(ErrorKind::UnresolvedReference, {name}, "no such object in " + c.name());
  return *i;
}

std::string flag(bool b) { return b ? "true" : "false"; }

Outcome validate_cmd(Workspace& ws, const fs::path& file) {
  Outcome out;
  const auto inst = ws.load_file(file);
  out.add("valid", inst.name, true);
  out.text = "valid " + std::string(to_string(inst.kind)) + " " + inst.name + "\n";
  return out;
}

Outcome report_cmd(Workspace& ws, const fs::path& file) {
  Outcome out;
  const auto inst = ws.load_file(file);
  const auto& c = expect_kind<CategoryPtr>(inst, InstanceKind::category);
  const auto r = completeness_report(c);
  const std::pair<const char*, bool> flags[] = {{"tensored", r.tensored},
                                                {"cotensored", r.cotensored},
                                                {"conically_cocomplete", r.conically_cocomplete},
                                                {"order_cocomplete", r.order_cocomplete},
                                                {"cocomplete", r.cocomplete},
                                                {"skeletal", fibers(*c).skeletal}};
  std::ostringstream text;
  for (const auto& [name, value] : flags) {
    const auto it = r.witnesses.find(name);
    const std::string witness = it == r.witnesses.end() ? "" : it->second;
    out.records.push_back({name, inst.name, value ? CheckStatus::pass : CheckStatus::fail, witness});
    text << name << "=" << flag(value);
    if (!witness.empty()) text << "  # " << witness;
    text << "\n";
  }
  out.text = text.str();
  return out;
}

Outcome tensor_cmd(Workspace& ws, const fs::path& file, const std::string& object, const std::string& arrow,
                   bool co) {
  Outcome out;
  const auto inst = ws.load_file(file);
  const auto& c = *expect_kind<CategoryPtr>(inst, InstanceKind::category);
  const auto obj = object_of(c, object);
  const auto f = c.base().parse_arrow(arrow);
  const auto w = co ? cotensor(c, f, obj) : tensor(c, obj, f);
  out.add(co ? "cotensor" : "tensor", inst.name, !w.empty(), names(c, w));
  out.text = w.empty() ? "none\n" : names(c, w) + "\n";
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) items.push_back(item);
  return items;
}

Outcome conical_cmd(Workspace& ws, const fs::path& file, const std::string& family, const std::string& type) {
  Outcome out;
  const auto inst = ws.load_file(file);
  const auto& c = *expect_kind<CategoryPtr>(inst, InstanceKind::category);
  const auto x = c.base().find_object(type);
  if (!x) throw Error(ErrorKind::UnresolvedReference, {type}, "no such base object");
  std::vector<std::size_t> members;
  for (const auto& name : split_list(family)) members.push_back(object_of(c, name));
  const auto conical = conical_colimit(c, *x, members);
  const auto sup = fiber_supremum(c, *x, members);
  out.add("conical", inst.name, !conical.empty(), names(c, conical));
  out.records.push_back({"supremum", inst.name, sup.empty() ? CheckStatus::fail : CheckStatus::pass, names(c, sup)});
  out.text = "conical: " + (conical.empty() ? "none" : names(c, conical)) +
             "\nsupremum: " + (sup.empty() ? "none" : names(c, sup)) + "\n";
  return out;
}

Outcome colim_cmd(Workspace& ws, const fs::path& weight_file, const std::optional<fs::path>& functor_file) {
  Outcome out;
  const auto winst = ws.load_file(weight_file);
  const auto& weight = expect_kind<Distributor>(winst, InstanceKind::distributor);
  QFunctor functor = identity_functor(weight.target);
  if (functor_file) {
    const auto finst = ws.load_file(*functor_file);
    functor = expect_kind<QFunctor>(finst, InstanceKind::functor);
  }
  const auto w = weighted_colimit(weight, functor);
  const auto& target = *functor.target;
  std::ostringstream text;
  for (std::size_t a = 0; a < weight.source->size(); ++a) {
    const auto& g = w.general[a];
    out.add("colim", winst.name + "[" + weight.source->object(a) + "]", !g.empty(), names(target, g));
    text << weight.source->object(a) << ": " << (g.empty() ? "none" : names(target, g)) << "\n";
  }
  out.text = text.str();
  return out;
}

Outcome adjoint_cmd(Workspace& ws, const fs::path& file) {
  Outcome out;
  const auto inst = ws.load_file(file);
  const auto& f = expect_kind<QFunctor>(inst, InstanceKind::functor);
  const auto g = synthesize_right_adjoint(f);
  out.add("adjoint", inst.name, true);
  out.text = render(g, inst.name + "_right");
  return out;
}

Outcome to_pseudofunctor_cmd(Workspace& ws, const fs::path& file) {
  Outcome out;
  const auto inst = ws.load_file(file);
  if (inst.kind == InstanceKind::module) {
    out.text = render(module_to_pseudofunctor(std::get<QModule>(inst.value)));
  } else {
    out.text = render(category_to_pseudofunctor(*expect_kind<CategoryPtr>(inst, InstanceKind::category)));
  }
  out.add("to-pseudofunctor", inst.name, true);
  return out;
}

Outcome to_category_cmd(Workspace& ws, const fs::path& file) {
  Outcome out;
  const auto inst = ws.load_file(file);
  switch (inst.kind) {
    case InstanceKind::pseudofunctor:
      out.text = render(pseudofunctor_to_category(std::get<Pseudofunctor2>(inst.value)));
      break;
    case InstanceKind::module:
      out.text = render(module_to_category(std::get<QModule>(inst.value)));
      break;
    case InstanceKind::action:
      out.text = render(module_to_category(action_to_module(std::get<QuantaleAction>(inst.value))));
      break;
    default:
      invalid(inst.name + " is not a pseudofunctor, module or action");
  }
  out.add("to-category", inst.name, true);
  return out;
}

Outcome to_module_cmd(Workspace& ws, const fs::path& file) {
  Outcome out;
  const auto inst = ws.load_file(file);
  if (inst.kind == InstanceKind::action)
    out.text = render(action_to_module(std::get<QuantaleAction>(inst.value)));
  else
    out.text = render(category_to_module(*expect_kind<CategoryPtr>(inst, InstanceKind::category)));
  out.add("to-module", inst.name, true);
  return out;
}

Outcome roundtrip_cmd(Workspace& ws, const fs::path& file) {
  Outcome out;
  const auto inst = ws.load_file(file);
  RoundTrip rt;
  switch (inst.kind) {
    case InstanceKind::category: rt = category_roundtrip(*std::get<CategoryPtr>(inst.value)); break;
    case InstanceKind::pseudofunctor: rt = pseudofunctor_roundtrip(std::get<Pseudofunctor2>(inst.value)); break;
    case InstanceKind::module: rt = module_roundtrip(std::get<QModule>(inst.value)); break;
    case InstanceKind::action: {
      const auto& a = std::get<QuantaleAction>(inst.value);
      rt.isomorphic = module_to_action(action_to_module(a)) == a;
      if (!rt.isomorphic) rt.witnesses.push_back("action differs after the module round trip");
      break;
    }
    default: invalid(inst.name + " has no round trip");
  }
  std::string witness;
  for (const auto& w : rt.witnesses) witness += (witness.empty() ? "" : "; ") + w;
  out.add("roundtrip", inst.name, rt.isomorphic, witness);
  out.text = rt.isomorphic ? "isomorphic\n" : "not isomorphic: " + witness + "\n";
  return out;
}

Outcome suite_cmd(const SuiteOptions& options) {
  Outcome out;
  const auto report = run_suite(options);
  std::ostringstream text;
  for (const auto& r : report.results) {
    if (r.status == CheckStatus::fail) out.code = exit_false;
    text << to_string(r.status) << "  " << r.instance << "  " << r.check;
    if (!r.witness.empty()) text << "  " << r.witness;
    text << "\n";
  }
  text << report.count(CheckStatus::pass) << " passed, " << report.count(CheckStatus::fail) << " failed, "
       << report.count(CheckStatus::skipped) << " skipped\n";
  out.records = report.results;
  out.text = text.str();
  return out;
}

void print_json(const Outcome& out) {
  auto array = nlohmann::json::array();
  for (const auto& r : out.records)
    array.push_back({{"check", r.check},
                     {"instance", r.instance},
                     {"status", std::string(to_string(r.status))},
                     {"witness", r.witness}});
  std::cout << array.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite quantaloid-enriched categories"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Print one JSON object per result");

  std::string file, object, arrow, family, type;
  std::optional<std::string> functor_file;

  auto* validate = app.add_subcommand("validate", "Parse and validate an instance file");
  validate->add_option("file", file)->required();
  auto* report = app.add_subcommand("report", "Completeness flags of a category");
  report->add_option("file", file)->required();
  auto* tensor_sc = app.add_subcommand("tensor", "Tensor y (x) f");
  auto* cotensor_sc = app.add_subcommand("cotensor", "Cotensor <f, x>");
  for (auto* sc : {tensor_sc, cotensor_sc}) {
    sc->add_option("file", file)->required();
    sc->add_option("--object", object)->required();
    sc->add_option("--arrow", arrow, "Base arrow written X->Y:e")->required();
  }
  auto* conical = app.add_subcommand("conical", "Conical colimit and supremum of a family in one fiber");
  conical->add_option("file", file)->required();
  conical->add_option("--family", family, "Comma-separated object names");
  conical->add_option("--type", type)->required();
  auto* colim = app.add_subcommand("colim", "Colimit weighted by a distributor");
  colim->add_option("--weight", file, "Distributor file")->required();
  colim->add_option("--functor", functor_file, "Functor file; identity if omitted");
  auto* adjoint = app.add_subcommand("adjoint", "Right adjoint of a functor");
  adjoint->add_option("file", file)->required();
  auto* to_pseudo = app.add_subcommand("to-pseudofunctor", "Pseudofunctor of a tensored category or module");
  to_pseudo->add_option("file", file)->required();
  auto* to_category = app.add_subcommand("to-category", "Category of a pseudofunctor, module or action");
  to_category->add_option("file", file)->required();
  auto* to_module = app.add_subcommand("to-module", "Module of a skeletal cocomplete category or action");
  to_module->add_option("file", file)->required();
  auto* roundtrip = app.add_subcommand("roundtrip", "Check a correspondence round trip");
  roundtrip->add_option("file", file)->required();

  SuiteOptions options;
  std::vector<std::string> dirs;
  std::vector<std::string> bases;
  auto* suite = app.add_subcommand("suite", "Run the invariant catalog");
  suite->add_option("dirs", dirs, "Instance directories");
  suite->add_option("--max-objects", options.max_objects, "Sweep size; 0 disables sweeps");
  suite->add_option("--max-carrier", options.max_carrier, "Fiber size in the pseudofunctor and action sweeps");
  suite->add_option("--base", bases, "Sweep bases");
  suite->add_option("--threads", options.threads);
  for (auto* sc : app.get_subcommands({})) sc->add_flag("--json", json, "Print one JSON object per result");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_true : exit_invalid;
  }

  Workspace ws;
  Outcome out;
  try {
    if (*validate) out = validate_cmd(ws, file);
    else if (*report) out = report_cmd(ws, file);
    else if (*tensor_sc) out = tensor_cmd(ws, file, object, arrow, false);
    else if (*cotensor_sc) out = tensor_cmd(ws, file, object, arrow, true);
    else if (*conical) out = conical_cmd(ws, file, family, type);
    else if (*colim) out = colim_cmd(ws, file, functor_file ? std::optional<fs::path>(*functor_file) : std::nullopt);
    else if (*adjoint) out = adjoint_cmd(ws, file);
    else if (*to_pseudo) out = to_pseudofunctor_cmd(ws, file);
    else if (*to_category) out = to_category_cmd(ws, file);
    else if (*to_module) out = to_module_cmd(ws, file);
    else if (*roundtrip) out = roundtrip_cmd(ws, file);
    else if (*suite) {
      for (const auto& d : dirs) {
        if (!fs::is_directory(d)) invalid("not a directory: " + d);
        options.directories.emplace_back(d);
      }
      if (!bases.empty()) options.sweep_bases = bases;
      out = suite_cmd(options);
    }
  } catch (const Error& e) {
    const int code = is_input_error(e.kind()) ? exit_invalid : exit_false;
    if (json) {
      out = {};
      out.records.push_back({"error", file, CheckStatus::fail, e.what()});
      print_json(out);
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_false;
  }

  if (json) print_json(out);
  else std::cout << out.text;
  return out.code;
}
