#include "qlab/format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "qlab/instances.hpp"

namespace qlab {

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::quantaloid: return "quantaloid";
    case InstanceKind::category: return "category";
    case InstanceKind::functor: return "functor";
    case InstanceKind::distributor: return "distributor";
    case InstanceKind::pseudofunctor: return "pseudofunctor";
    case InstanceKind::module: return "module";
    case InstanceKind::action: return "action";
  }
  return "unknown";
}

namespace {

std::optional<InstanceKind> kind_from_string(std::string_view s) {
  for (auto k : {InstanceKind::quantaloid, InstanceKind::category, InstanceKind::functor,
                 InstanceKind::distributor, InstanceKind::pseudofunctor, InstanceKind::module,
                 InstanceKind::action})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { ident, punct, leq, arrow, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

bool ident_char(unsigned char c) {
  if (std::isalnum(c) || c >= 0x80) return true;
  return std::string_view("_*'./@!?~[]|^&$%+").find(static_cast<char>(c)) != std::string_view::npos;
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const unsigned char c = text[i];
    if (std::isspace(c)) {
      advance(1);
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (text.substr(i, 2) == "<=") {
      out.push_back({Tok::leq, "<=", line, col});
      advance(2);
    } else if (text.substr(i, 2) == "->") {
      out.push_back({Tok::arrow, "->", line, col});
      advance(2);
    } else if (std::string_view("{}(),;=:").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Tok::punct, std::string(1, static_cast<char>(c)), line, col});
      advance(1);
    } else if (ident_char(c)) {
      const std::size_t start = i, l = line, k = col;
      while (i < text.size() && ident_char(static_cast<unsigned char>(text[i]))) advance(1);
      out.push_back({Tok::ident, std::string(text.substr(start, i - start)), l, k});
    } else {
      throw Error(ErrorKind::SyntaxError, {std::to_string(line), std::to_string(col)},
                  std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Tok::end; }

  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, {std::to_string(t.line), std::to_string(t.col)},
                what + (t.kind == Tok::end ? " at end of input" : ", found '" + t.text + "'"));
  }

  std::string ident(const char* what = "identifier") {
    const Token& t = peek();
    if (t.kind != Tok::ident) fail(t, std::string("expected ") + what);
    ++pos_;
    return t.text;
  }
  void keyword(std::string_view kw) {
    const Token& t = peek();
    if (t.kind != Tok::ident || t.text != kw) fail(t, "expected '" + std::string(kw) + "'");
    ++pos_;
  }
  bool is_keyword(std::string_view kw) const { return peek().kind == Tok::ident && peek().text == kw; }
  void punct(char p) {
    const Token& t = peek();
    if (t.kind != Tok::punct || t.text[0] != p) fail(t, std::string("expected '") + p + "'");
    ++pos_;
  }
  bool is_punct(char p) const { return peek().kind == Tok::punct && peek().text[0] == p; }
  bool accept_punct(char p) {
    if (!is_punct(p)) return false;
    ++pos_;
    return true;
  }
  void kind(Tok k, const char* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what);
    ++pos_;
  }
  void skip_separators() {
    while (accept_punct(';')) {
    }
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Shared pieces

Elem lookup(const FinitePreorder& order, const std::string& name, const std::string& where) {
  auto e = order.find(name);
  if (!e) throw Error(ErrorKind::UnresolvedReference, {name}, "no element of that name in " + where);
  return *e;
}

ObjId lookup_object(const Quantaloid& q, const std::string& name) {
  auto x = q.find_object(name);
  if (!x) throw Error(ErrorKind::UnresolvedReference, {name}, "no object of that name in " + q.name());
  return *x;
}

std::size_t lookup_object(const QCategory& c, const std::string& name) {
  auto x = c.find(name);
  if (!x) throw Error(ErrorKind::UnresolvedReference, {name}, "no object of that name in " + c.name());
  return *x;
}

/// `{ elements a b c order a<=b<=c ... }`
FinitePreorder parse_order_block(Parser& p) {
  p.punct('{');
  p.skip_separators();
  p.keyword("elements");
  std::vector<std::string> names;
  while (p.peek().kind == Tok::ident && !p.is_keyword("order")) names.push_back(p.ident());
  {
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end())
      throw Error(ErrorKind::InvalidInput, {*it}, "duplicate element");
  }
  FinitePreorder free = FinitePreorder::closure(names, {});
  std::vector<std::pair<Elem, Elem>> gens;
  p.skip_separators();
  if (p.is_keyword("order")) {
    p.keyword("order");
    while (p.peek().kind == Tok::ident) {
      Elem prev = lookup(free, p.ident("element"), "order block");
      p.kind(Tok::leq, "'<='");
      while (true) {
        const Elem next = lookup(free, p.ident("element"), "order block");
        gens.emplace_back(prev, next);
        prev = next;
        if (p.peek().kind != Tok::leq) break;
        p.kind(Tok::leq, "'<='");
      }
      p.skip_separators();
    }
  }
  p.skip_separators();
  p.punct('}');
  return FinitePreorder::closure(std::move(names), gens);
}

void render_order_block(std::ostringstream& out, const FinitePreorder& o, std::string_view indent) {
  out << "{\n" << indent << "  elements";
  for (const auto& n : o.names()) out << ' ' << n;
  out << '\n';
  const auto gens = o.generators();
  if (!gens.empty()) {
    out << indent << "  order";
    for (const auto& [a, b] : gens) out << ' ' << o.name(a) << "<=" << o.name(b);
    out << '\n';
  }
  out << indent << "}\n";
}

std::string header_line(InstanceKind kind, std::string_view name) {
  return std::string(to_string(kind)) + " " + std::string(name) + "\n";
}

// ---------------------------------------------------------------------------
// Quantaloids

QuantaloidPtr parse_quantaloid(Parser& p, const std::string& name) {
  p.skip_separators();
  p.keyword("objects");
  QuantaloidData d;
  d.name = name;
  while (p.peek().kind == Tok::ident && !p.is_keyword("hom") && !p.is_keyword("id") && !p.is_keyword("compose"))
    d.objects.push_back(p.ident());
  const std::size_t n = d.objects.size();
  {
    auto sorted = d.objects;
    std::sort(sorted.begin(), sorted.end());
    if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end())
      throw Error(ErrorKind::InvalidInput, {*it}, "duplicate object");
  }
  auto obj = [&](const std::string& s) {
    auto it = std::find(d.objects.begin(), d.objects.end(), s);
    if (it == d.objects.end()) throw Error(ErrorKind::UnresolvedReference, {s}, "unknown object");
    return static_cast<ObjId>(it - d.objects.begin());
  };

  std::vector<std::optional<FiniteSupLattice>> homs(n * n);
  std::vector<char> trivial(n * n, 0);
  std::vector<std::optional<Elem>> ids(n);
  // Composition entries keyed by triple; filled after homs are known.
  struct Entry {
    std::string g, f, h;
  };
  std::vector<std::vector<Entry>> entries(n * n * n);
  std::vector<std::pair<ObjId, std::string>> id_names;

  while (true) {
    p.skip_separators();
    if (p.at_end()) break;
    if (p.is_keyword("hom")) {
      p.keyword("hom");
      const ObjId x = obj(p.ident("object")), y = obj(p.ident("object"));
      if (homs[x * n + y]) throw Error(ErrorKind::InvalidInput, {d.objects[x], d.objects[y]}, "hom declared twice");
      if (p.is_keyword("trivial")) {
        p.keyword("trivial");
        homs[x * n + y] = FiniteSupLattice(FinitePreorder::chain({"0"}));
        trivial[x * n + y] = 1;
      } else {
        homs[x * n + y] = FiniteSupLattice(parse_order_block(p));
      }
    } else if (p.is_keyword("id")) {
      p.keyword("id");
      const ObjId x = obj(p.ident("object"));
      p.punct('=');
      id_names.emplace_back(x, p.ident("element"));
    } else if (p.is_keyword("compose")) {
      p.keyword("compose");
      const ObjId x = obj(p.ident("object")), y = obj(p.ident("object")), z = obj(p.ident("object"));
      auto& list = entries[(x * n + y) * n + z];
      p.punct('{');
      while (true) {
        p.skip_separators();
        if (p.accept_punct('}')) break;
        p.punct('(');
        Entry e;
        e.g = p.ident("element");
        p.punct(',');
        e.f = p.ident("element");
        p.punct(')');
        p.punct('=');
        e.h = p.ident("element");
        list.push_back(std::move(e));
      }
    } else {
      p.fail(p.peek(), "expected 'hom', 'id' or 'compose'");
    }
  }

  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      if (!homs[x * n + y]) throw Error(ErrorKind::PartialTable, {"hom " + d.objects[x] + " " + d.objects[y]});
  for (auto& h : homs) d.homs.push_back(std::move(*h));
  for (const auto& [x, e] : id_names) ids[x] = lookup(d.homs[x * n + x].order(), e, "id " + d.objects[x]);
  for (ObjId x = 0; x < n; ++x) {
    if (!ids[x]) throw Error(ErrorKind::PartialTable, {"id " + d.objects[x]});
    d.identities.push_back(*ids[x]);
  }
  d.compose.resize(n * n * n);
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z) {
        const auto& hxy = d.homs[x * n + y];
        const auto& hyz = d.homs[y * n + z];
        const auto& hxz = d.homs[x * n + z];
        const std::size_t key = (x * n + y) * n + z;
        const std::string where = "compose " + d.objects[x] + " " + d.objects[y] + " " + d.objects[z];
        std::vector<std::optional<Elem>> table(hyz.size() * hxy.size());
        for (const auto& e : entries[key]) {
          const Elem g = lookup(hyz.order(), e.g, where), f = lookup(hxy.order(), e.f, where);
          if (table[g * hxy.size() + f]) throw Error(ErrorKind::InvalidInput, {where, e.g, e.f}, "entry given twice");
          table[g * hxy.size() + f] = lookup(hxz.order(), e.h, where);
        }
        const bool defaults = trivial[x * n + y] || trivial[y * n + z];
        auto& out = d.compose[key];
        for (Elem g = 0; g < hyz.size(); ++g)
          for (Elem f = 0; f < hxy.size(); ++f) {
            const auto& v = table[g * hxy.size() + f];
            if (!v && !defaults)
              throw Error(ErrorKind::PartialTable, {where + " (" + hyz.name(g) + "," + hxy.name(f) + ")"});
            out.push_back(v ? *v : hxz.bottom());
          }
      }
  return std::make_shared<const Quantaloid>(validate_quantaloid(std::move(d)));
}

// ---------------------------------------------------------------------------
// Categories, functors, distributors

CategoryPtr parse_category(Parser& p, const std::string& name, Workspace& ws) {
  p.skip_separators();
  p.keyword("base");
  CategoryData d;
  d.name = name;
  d.base = ws.quantaloid(p.ident("quantaloid name"));
  const auto& q = *d.base;
  std::vector<std::tuple<std::string, std::string, std::string>> homs;
  while (true) {
    p.skip_separators();
    if (p.at_end()) break;
    if (p.is_keyword("object")) {
      p.keyword("object");
      std::vector<std::string> names;
      while (p.peek().kind == Tok::ident) names.push_back(p.ident());
      if (names.empty()) p.fail(p.peek(), "expected object name");
      p.punct(':');
      const ObjId t = lookup_object(q, p.ident("type"));
      for (auto& s : names) {
        d.objects.push_back(std::move(s));
        d.types.push_back(t);
      }
    } else if (p.is_keyword("hom")) {
      p.keyword("hom");
      p.punct('(');
      auto y = p.ident("object");
      p.punct(',');
      auto x = p.ident("object");
      p.punct(')');
      p.punct('=');
      homs.emplace_back(std::move(y), std::move(x), p.ident("element"));
    } else {
      p.fail(p.peek(), "expected 'object' or 'hom'");
    }
  }
  const std::size_t n = d.objects.size();
  auto obj = [&](const std::string& s) {
    auto it = std::find(d.objects.begin(), d.objects.end(), s);
    if (it == d.objects.end()) throw Error(ErrorKind::UnresolvedReference, {s}, "unknown object");
    return static_cast<std::size_t>(it - d.objects.begin());
  };
  {
    auto sorted = d.objects;
    std::sort(sorted.begin(), sorted.end());
    if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end())
      throw Error(ErrorKind::InvalidInput, {*it}, "duplicate object");
  }
  std::vector<std::optional<Elem>> table(n * n);
  for (const auto& [ys, xs, es] : homs) {
    const std::size_t y = obj(ys), x = obj(xs);
    const std::string where = "hom (" + ys + "," + xs + ")";
    if (table[y * n + x]) throw Error(ErrorKind::InvalidInput, {where}, "entry given twice");
    table[y * n + x] = lookup(q.hom(d.types[x], d.types[y]).order(), es, where);
  }
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) {
      if (!table[y * n + x]) throw Error(ErrorKind::PartialTable, {"hom (" + d.objects[y] + "," + d.objects[x] + ")"});
      d.hom.push_back(*table[y * n + x]);
    }
  return std::make_shared<const QCategory>(validate_category(std::move(d)));
}

QFunctor parse_functor(Parser& p, Workspace& ws) {
  p.skip_separators();
  p.keyword("source");
  auto source = ws.category(p.ident("category name"));
  p.skip_separators();
  p.keyword("target");
  auto target = ws.category(p.ident("category name"));
  std::vector<std::optional<std::size_t>> map(source->size());
  while (true) {
    p.skip_separators();
    if (p.at_end()) break;
    p.keyword("map");
    const auto a = lookup_object(*source, p.ident("object"));
    p.kind(Tok::arrow, "'->'");
    const auto b = lookup_object(*target, p.ident("object"));
    if (map[a]) throw Error(ErrorKind::InvalidInput, {source->object(a)}, "mapped twice");
    map[a] = b;
  }
  std::vector<std::size_t> table;
  for (std::size_t a = 0; a < map.size(); ++a) {
    if (!map[a]) throw Error(ErrorKind::PartialTable, {"map " + source->object(a)});
    table.push_back(*map[a]);
  }
  return validate_functor(std::move(source), std::move(target), std::move(table));
}

Distributor parse_distributor(Parser& p, Workspace& ws) {
  p.skip_separators();
  p.keyword("source");
  const std::string source_name = p.ident("category name");
  p.skip_separators();
  p.keyword("target");
  auto target = ws.category(p.ident("category name"));
  CategoryPtr source;
  if (source_name.starts_with("*_")) {
    source = std::make_shared<const QCategory>(
        one_object(target->base_ptr(), lookup_object(target->base(), source_name.substr(2))));
  } else {
    source = ws.category(source_name);
  }
  const auto& q = target->base();
  std::vector<std::optional<Elem>> table(source->size() * target->size());
  while (true) {
    p.skip_separators();
    if (p.at_end()) break;
    p.keyword("entry");
    p.punct('(');
    const auto bs = p.ident("object");
    p.punct(',');
    const auto as = p.ident("object");
    p.punct(')');
    p.punct('=');
    const auto b = lookup_object(*target, bs), a = lookup_object(*source, as);
    const std::string where = "entry (" + bs + "," + as + ")";
    auto& slot = table[b * source->size() + a];
    if (slot) throw Error(ErrorKind::InvalidInput, {where}, "entry given twice");
    slot = lookup(q.hom(source->type(a), target->type(b)).order(), p.ident("element"), where);
  }
  std::vector<Elem> values;
  for (std::size_t b = 0; b < target->size(); ++b)
    for (std::size_t a = 0; a < source->size(); ++a) {
      const auto& v = table[b * source->size() + a];
      if (!v) throw Error(ErrorKind::PartialTable, {"entry (" + target->object(b) + "," + source->object(a) + ")"});
      values.push_back(*v);
    }
  return validate_distributor(std::move(source), std::move(target), std::move(values));
}

// ---------------------------------------------------------------------------
// Pseudofunctors and modules

struct Fibered {
  QuantaloidPtr base;
  std::vector<FinitePreorder> fibers;
  ArrowActions actions;
};

Fibered parse_fibered(Parser& p, Workspace& ws) {
  p.skip_separators();
  p.keyword("base");
  Fibered out;
  out.base = ws.quantaloid(p.ident("quantaloid name"));
  const auto& q = *out.base;
  const std::size_t n = q.size();
  std::vector<std::optional<FinitePreorder>> fibers(n);
  struct Block {
    ObjId x, y;
    std::string f;
    std::vector<std::pair<std::string, std::string>> entries;
  };
  std::vector<Block> blocks;
  while (true) {
    p.skip_separators();
    if (p.at_end()) break;
    if (p.is_keyword("fiber")) {
      p.keyword("fiber");
      const ObjId x = lookup_object(q, p.ident("object"));
      if (fibers[x]) throw Error(ErrorKind::InvalidInput, {q.object(x)}, "fiber declared twice");
      fibers[x] = parse_order_block(p);
    } else if (p.is_keyword("action")) {
      p.keyword("action");
      Block b;
      b.x = lookup_object(q, p.ident("object"));
      b.y = lookup_object(q, p.ident("object"));
      b.f = p.ident("element");
      p.punct('{');
      while (true) {
        p.skip_separators();
        if (p.accept_punct('}')) break;
        auto from = p.ident("element");
        p.kind(Tok::arrow, "'->'");
        b.entries.emplace_back(std::move(from), p.ident("element"));
      }
      blocks.push_back(std::move(b));
    } else {
      p.fail(p.peek(), "expected 'fiber' or 'action'");
    }
  }
  for (ObjId x = 0; x < n; ++x) {
    if (!fibers[x]) throw Error(ErrorKind::PartialTable, {"fiber " + q.object(x)});
    out.fibers.push_back(std::move(*fibers[x]));
  }
  std::vector<std::vector<std::vector<std::optional<Elem>>>> tables(n * n);
  std::vector<std::vector<char>> given(n * n);
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      tables[x * n + y].assign(q.hom(x, y).size(), std::vector<std::optional<Elem>>(out.fibers[y].size()));
      given[x * n + y].assign(q.hom(x, y).size(), 0);
    }
  for (const auto& b : blocks) {
    const std::string where = "action " + q.object(b.x) + " " + q.object(b.y) + " " + b.f;
    const Elem f = lookup(q.hom(b.x, b.y).order(), b.f, where);
    if (given[b.x * n + b.y][f]) throw Error(ErrorKind::InvalidInput, {where}, "action given twice");
    given[b.x * n + b.y][f] = 1;
    auto& table = tables[b.x * n + b.y][f];
    for (const auto& [from, to] : b.entries) {
      auto& slot = table[lookup(out.fibers[b.y], from, where)];
      if (slot) throw Error(ErrorKind::InvalidInput, {where, from}, "entry given twice");
      slot = lookup(out.fibers[b.x], to, where);
    }
  }
  out.actions.resize(n * n);
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (Elem f = 0; f < q.hom(x, y).size(); ++f) {
        std::vector<Elem> table;
        for (Elem e = 0; e < out.fibers[y].size(); ++e) {
          const auto& v = tables[x * n + y][f][e];
          if (!v)
            throw Error(ErrorKind::PartialTable, {"action " + q.object(x) + " " + q.object(y) + " " +
                                                  q.hom(x, y).name(f) + " " + out.fibers[y].name(e)});
          table.push_back(*v);
        }
        out.actions[x * n + y].push_back(std::move(table));
      }
  return out;
}

Pseudofunctor2 parse_pseudofunctor(Parser& p, const std::string& name, Workspace& ws) {
  auto data = parse_fibered(p, ws);
  Pseudofunctor2 pf{std::move(data.base), name, std::move(data.fibers), std::move(data.actions)};
  require_closed(pf);
  return pf;
}

QModule parse_module(Parser& p, const std::string& name, Workspace& ws) {
  auto data = parse_fibered(p, ws);
  QModule m;
  m.base = std::move(data.base);
  m.name = name;
  for (auto& f : data.fibers) m.fibers.emplace_back(std::move(f));
  m.actions = std::move(data.actions);
  validate_module(m);
  return m;
}

QuantaleAction parse_action(Parser& p, const std::string& name, Workspace& ws) {
  p.skip_separators();
  p.keyword("quantale");
  QuantaleAction a;
  a.name = name;
  a.quantale = ws.quantaloid(p.ident("quantaloid name"));
  if (a.quantale->size() != 1) throw Error(ErrorKind::NotOneObject, {a.quantale->name()});
  const auto& k = a.quantale->hom(0, 0);
  p.skip_separators();
  p.keyword("carrier");
  a.carrier = FiniteSupLattice(parse_order_block(p));
  const auto& m = a.carrier;
  std::vector<std::optional<Elem>> table(m.size() * k.size());
  while (true) {
    p.skip_separators();
    if (p.at_end()) break;
    p.keyword("act");
    p.punct('(');
    const auto ms = p.ident("element");
    p.punct(',');
    const auto fs = p.ident("element");
    p.punct(')');
    p.punct('=');
    const std::string where = "act (" + ms + "," + fs + ")";
    auto& slot = table[lookup(m.order(), ms, where) * k.size() + lookup(k.order(), fs, where)];
    if (slot) throw Error(ErrorKind::InvalidInput, {where}, "entry given twice");
    slot = lookup(m.order(), p.ident("element"), where);
  }
  for (Elem e = 0; e < m.size(); ++e)
    for (Elem f = 0; f < k.size(); ++f) {
      const auto& v = table[e * k.size() + f];
      if (!v) throw Error(ErrorKind::PartialTable, {"act (" + m.name(e) + "," + k.name(f) + ")"});
      a.act.push_back(*v);
    }
  validate_action(a);
  return a;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, {path.string()}, "cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

// ---------------------------------------------------------------------------

FileHeader read_header(std::string_view text) {
  FileHeader h{};
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    const auto pos = line.find("# expect:");
    if (pos != std::string::npos) {
      std::string kind = line.substr(pos + 9);
      kind.erase(0, kind.find_first_not_of(" \t"));
      kind.erase(kind.find_last_not_of(" \t\r") + 1);
      h.expected = error_kind_from_string(kind);
      if (!h.expected) throw Error(ErrorKind::InvalidInput, {kind}, "unknown error kind in expect header");
      break;
    }
  }
  Parser p(text);
  p.skip_separators();
  const Token& t = p.peek();
  const auto word = p.ident("instance kind");
  const auto kind = kind_from_string(word);
  if (!kind) p.fail(t, "expected an instance kind");
  h.kind = *kind;
  h.name = p.ident("instance name");
  return h;
}

bool is_instance_file(const std::filesystem::path& path) {
  static const char* const exts[] = {".qt", ".qc", ".qf", ".qd", ".qp", ".qm", ".qa"};
  const auto ext = path.extension().string();
  return std::any_of(std::begin(exts), std::end(exts), [&](const char* e) { return ext == e; });
}

void Workspace::add_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && is_instance_file(entry.path())) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      const auto h = read_header(read_file(f));
      index_.emplace(h.name, f);
    } catch (const Error&) {
      // Unreadable headers surface when the file itself is loaded.
    }
  }
}

Instance Workspace::load_file(const std::filesystem::path& path) {
  const auto dir = path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path();
  add_directory(dir);
  return parse(read_file(path));
}

Instance Workspace::parse(std::string_view text) {
  Parser p(text);
  p.skip_separators();
  const Token& t = p.peek();
  const auto kind = kind_from_string(p.ident("instance kind"));
  if (!kind) p.fail(t, "expected an instance kind");
  const std::string name = p.ident("instance name");
  switch (*kind) {
    case InstanceKind::quantaloid: return {*kind, name, parse_quantaloid(p, name)};
    case InstanceKind::category: return {*kind, name, parse_category(p, name, *this)};
    case InstanceKind::functor: return {*kind, name, parse_functor(p, *this)};
    case InstanceKind::distributor: return {*kind, name, parse_distributor(p, *this)};
    case InstanceKind::pseudofunctor: return {*kind, name, parse_pseudofunctor(p, name, *this)};
    case InstanceKind::module: return {*kind, name, parse_module(p, name, *this)};
    case InstanceKind::action: return {*kind, name, parse_action(p, name, *this)};
  }
  throw Error(ErrorKind::SyntaxError, {"1", "1"}, "unknown instance kind");
}

Instance Workspace::load_named(const std::string& name) {
  if (auto it = cache_.find(name); it != cache_.end()) return it->second;
  auto it = index_.find(name);
  if (it == index_.end()) throw Error(ErrorKind::UnresolvedReference, {name});
  if (!loading_.insert(name).second) throw Error(ErrorKind::UnresolvedReference, {name}, "circular reference");
  try {
    auto inst = parse(read_file(it->second));
    loading_.erase(name);
    return cache_.emplace(name, std::move(inst)).first->second;
  } catch (...) {
    loading_.erase(name);
    throw;
  }
}

QuantaloidPtr Workspace::quantaloid(std::string_view name) {
  const std::string key(name);
  if (index_.count(key) || cache_.count(key)) {
    auto inst = load_named(key);
    if (auto* q = std::get_if<QuantaloidPtr>(&inst.value)) return *q;
    throw Error(ErrorKind::UnresolvedReference, {key}, "not a quantaloid");
  }
  if (auto q = builtin_quantaloid(name)) return q;
  throw Error(ErrorKind::UnresolvedReference, {key}, "unknown quantaloid");
}

CategoryPtr Workspace::category(std::string_view name) {
  const std::string key(name);
  if (index_.count(key) || cache_.count(key)) {
    auto inst = load_named(key);
    if (auto* c = std::get_if<CategoryPtr>(&inst.value)) return *c;
    throw Error(ErrorKind::UnresolvedReference, {key}, "not a category");
  }
  if (auto c = builtin_category(name)) return c;
  throw Error(ErrorKind::UnresolvedReference, {key}, "unknown category");
}

// ---------------------------------------------------------------------------
// Rendering

std::string render(const Quantaloid& q) {
  std::ostringstream out;
  out << header_line(InstanceKind::quantaloid, q.name());
  out << "objects";
  for (const auto& o : q.objects()) out << ' ' << o;
  out << '\n';
  const std::size_t n = q.size();
  auto trivial = [&](ObjId x, ObjId y) { return q.hom(x, y).size() == 1 && q.hom(x, y).name(0) == "0"; };
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      out << "hom " << q.object(x) << ' ' << q.object(y) << ' ';
      if (trivial(x, y)) {
        out << "trivial\n";
      } else {
        render_order_block(out, q.hom(x, y).order(), "");
      }
    }
  for (ObjId x = 0; x < n; ++x) out << "id " << q.object(x) << " = " << q.hom(x, x).name(q.identity(x)) << '\n';
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z) {
        if (trivial(x, y) || trivial(y, z)) continue;
        const auto& hxy = q.hom(x, y);
        const auto& hyz = q.hom(y, z);
        out << "compose " << q.object(x) << ' ' << q.object(y) << ' ' << q.object(z) << " {\n";
        for (Elem g = 0; g < hyz.size(); ++g) {
          out << ' ';
          for (Elem f = 0; f < hxy.size(); ++f)
            out << " (" << hyz.name(g) << ',' << hxy.name(f) << ")=" << q.hom(x, z).name(q.compose(x, y, z, g, f));
          out << '\n';
        }
        out << "}\n";
      }
  return out.str();
}

std::string render(const QCategory& c) {
  std::ostringstream out;
  out << header_line(InstanceKind::category, c.name());
  out << "base " << c.base().name() << '\n';
  for (std::size_t i = 0; i < c.size(); ++i) out << "object " << c.object(i) << " : " << c.base().object(c.type(i)) << '\n';
  for (std::size_t y = 0; y < c.size(); ++y)
    for (std::size_t x = 0; x < c.size(); ++x)
      out << "hom (" << c.object(y) << ',' << c.object(x) << ") = "
          << c.base().hom(c.type(x), c.type(y)).name(c.hom(y, x)) << '\n';
  return out.str();
}

std::string render(const QFunctor& f, std::string_view name) {
  std::ostringstream out;
  out << header_line(InstanceKind::functor, name);
  out << "source " << f.source->name() << "\ntarget " << f.target->name() << '\n';
  for (std::size_t a = 0; a < f.source->size(); ++a)
    out << "map " << f.source->object(a) << " -> " << f.target->object(f(a)) << '\n';
  return out.str();
}

std::string render(const Distributor& d, std::string_view name) {
  std::ostringstream out;
  out << header_line(InstanceKind::distributor, name);
  out << "source " << d.source->name() << "\ntarget " << d.target->name() << '\n';
  const auto& q = d.target->base();
  for (std::size_t b = 0; b < d.target->size(); ++b)
    for (std::size_t a = 0; a < d.source->size(); ++a)
      out << "entry (" << d.target->object(b) << ',' << d.source->object(a)
          << ") = " << q.hom(d.source->type(a), d.target->type(b)).name(d(b, a)) << '\n';
  return out.str();
}

namespace {

template <class FiberOrder>
void render_fibered(std::ostringstream& out, const Quantaloid& q, const ArrowActions& actions,
                    FiberOrder&& fiber_order) {
  out << "base " << q.name() << '\n';
  const std::size_t n = q.size();
  for (ObjId x = 0; x < n; ++x) {
    out << "fiber " << q.object(x) << ' ';
    render_order_block(out, fiber_order(x), "");
  }
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (Elem f = 0; f < q.hom(x, y).size(); ++f) {
        out << "action " << q.object(x) << ' ' << q.object(y) << ' ' << q.hom(x, y).name(f) << " {";
        const auto& table = actions[x * n + y][f];
        for (Elem e = 0; e < table.size(); ++e)
          out << ' ' << fiber_order(y).name(e) << "->" << fiber_order(x).name(table[e]);
        out << " }\n";
      }
}

}  // namespace

std::string render(const Pseudofunctor2& p) {
  std::ostringstream out;
  out << header_line(InstanceKind::pseudofunctor, p.name);
  render_fibered(out, *p.base, p.actions, [&](ObjId x) -> const FinitePreorder& { return p.fibers[x]; });
  return out.str();
}

std::string render(const QModule& m) {
  std::ostringstream out;
  out << header_line(InstanceKind::module, m.name);
  render_fibered(out, *m.base, m.actions, [&](ObjId x) -> const FinitePreorder& { return m.fibers[x].order(); });
  return out.str();
}

std::string render(const QuantaleAction& a) {
  std::ostringstream out;
  out << header_line(InstanceKind::action, a.name);
  out << "quantale " << a.quantale->name() << "\ncarrier ";
  render_order_block(out, a.carrier.order(), "");
  const auto& k = a.quantale->hom(0, 0);
  for (Elem e = 0; e < a.carrier.size(); ++e)
    for (Elem f = 0; f < k.size(); ++f)
      out << "act (" << a.carrier.name(e) << ',' << k.name(f) << ") = " << a.carrier.name(a(e, f)) << '\n';
  return out.str();
}

std::string render(const Instance& instance) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, QuantaloidPtr> || std::is_same_v<T, CategoryPtr>) {
          return render(*v);
        } else if constexpr (std::is_same_v<T, QFunctor> || std::is_same_v<T, Distributor>) {
          return render(v, instance.name);
        } else {
          return render(v);
        }
      },
      instance.value);
}

bool same_instance(const Instance& a, const Instance& b) {
  if (a.kind != b.kind || a.name != b.name || a.value.index() != b.value.index()) return false;
  return std::visit(
      [&](const auto& va) -> bool {
        using T = std::decay_t<decltype(va)>;
        const auto& vb = std::get<T>(b.value);
        if constexpr (std::is_same_v<T, QuantaloidPtr> || std::is_same_v<T, CategoryPtr>) {
          return *va == *vb;
        } else if constexpr (std::is_same_v<T, QFunctor>) {
          return *va.source == *vb.source && *va.target == *vb.target && va.map == vb.map;
        } else if constexpr (std::is_same_v<T, Distributor>) {
          return *va.source == *vb.source && *va.target == *vb.target && va.table == vb.table;
        } else if constexpr (std::is_same_v<T, Pseudofunctor2>) {
          return *va.base == *vb.base && va.name == vb.name && va.fibers == vb.fibers && va.actions == vb.actions;
        } else if constexpr (std::is_same_v<T, QModule>) {
          return *va.base == *vb.base && va.name == vb.name && va.fibers == vb.fibers && va.actions == vb.actions;
        } else {
          return *va.quantale == *vb.quantale && va.name == vb.name && va.carrier == vb.carrier && va.act == vb.act;
        }
      },
      a.value);
}

}  // namespace qlab
