#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qlab/error.hpp"
#include "qlab/format.hpp"
#include "qlab/instances.hpp"

using namespace qlab;
namespace fs = std::filesystem;

namespace {

const fs::path source_dir = QLAB_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops comments and collapses whitespace.
std::string normalized(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    line = line.substr(0, line.find('#'));
    std::istringstream words(line);
    for (std::string w; words >> w;) out += w + " ";
  }
  return out;
}

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (is_instance_file(e.path())) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error thrown");
  return Error(ErrorKind::InvalidInput, {});
}

}  // namespace

TEST_CASE("bundled files render back to themselves") {
  const auto files = files_in(source_dir / "instances");
  CHECK(files.size() >= 10);
  for (const auto& path : files) {
    CAPTURE(path);
    Workspace ws;
    const auto inst = ws.load_file(path);
    const auto text = render(inst);
    CHECK(normalized(text) == normalized(slurp(path)));
    CHECK(same_instance(ws.parse(text), inst));
  }
}

TEST_CASE("bundled files match the built-in instances") {
  Workspace ws;
  ws.add_directory(source_dir / "instances");
  for (const auto& name : builtin_quantaloid_names()) CHECK(*ws.quantaloid(name) == *builtin_quantaloid(name));
  for (const auto& name : builtin_category_names()) CHECK(*ws.category(name) == *builtin_category(name));
}

TEST_CASE("bundled q2 file") {
  Workspace ws;
  const auto inst = ws.load_file(source_dir / "instances" / "q2.qt");
  CHECK(inst.kind == InstanceKind::quantaloid);
  CHECK(*std::get<QuantaloidPtr>(inst.value) == boolean2());
}

TEST_CASE("syntax errors carry line and column") {
  Workspace ws;
  const auto e = error_of([&] { ws.parse("quantaloid q\nobjects *\nhom * * { elements 0 1 order 0<=1 }\nid * = {\n"); });
  CHECK(e.kind() == ErrorKind::SyntaxError);
  CHECK(e.witnesses() == std::vector<std::string>{"4", "8"});
  CHECK(error_of([&] { ws.parse("category c\nbase q2\nobject a : *\nhom (a,a) = 1 ;; $\x01"); }).kind() ==
        ErrorKind::SyntaxError);
}

TEST_CASE("missing table entries") {
  Workspace ws;
  const auto e = error_of([&] { ws.load_file(source_dir / "counterexamples" / "missing_compose_entry.qt"); });
  CHECK(e.kind() == ErrorKind::PartialTable);
  CHECK(error_of([&] { ws.parse("category c\nbase q2\nobject a b : *\nhom (a,a) = 1\n"); }).kind() ==
        ErrorKind::PartialTable);
}

TEST_CASE("unresolved references") {
  Workspace ws;
  const auto e = error_of([&] { ws.parse("category c\nbase nowhere\nobject a : *\nhom (a,a) = 1\n"); });
  CHECK(e.kind() == ErrorKind::UnresolvedReference);
  CHECK(e.witnesses() == std::vector<std::string>{"nowhere"});
}

TEST_CASE("trivial homs default to their single element") {
  Workspace ws;
  const auto inst = ws.parse(
      "quantaloid two_points\nobjects x y\nhom x x { elements 0 1 order 0<=1 }\nhom y y { elements 0 1 order 0<=1 }\n"
      "hom x y trivial\nhom y x trivial\nid x = 1\nid y = 1\n"
      "compose x x x { (0,0)=0 (0,1)=0 (1,0)=0 (1,1)=1 }\ncompose y y y { (0,0)=0 (0,1)=0 (1,0)=0 (1,1)=1 }\n");
  const auto& q = *std::get<QuantaloidPtr>(inst.value);
  CHECK(q.hom(0, 1).size() == 1);
  CHECK(q.compose(0, 1, 0, 0, 0) == 0);
}

TEST_CASE("headers declare the expected error") {
  for (const auto& path : files_in(source_dir / "counterexamples")) {
    const auto header = read_header(slurp(path));
    CHECK(header.expected.has_value());
  }
  const auto h = read_header("# expect: NotClosed\npseudofunctor p\nbase q2\n");
  CHECK(h.kind == InstanceKind::pseudofunctor);
  CHECK(h.name == "p");
  CHECK(h.expected == ErrorKind::NotClosed);
  CHECK_FALSE(read_header("quantaloid q\n").expected.has_value());
}

TEST_CASE("sweep categories render and parse") {
  Workspace ws;
  for (const auto& c : all_categories(builtin_quantaloid("q3"), 2)) {
    const auto inst = ws.parse(render(c));
    CHECK(*std::get<CategoryPtr>(inst.value) == c);
  }
}
