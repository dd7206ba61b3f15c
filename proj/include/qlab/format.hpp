#pragma once

// Plain-text instance files: parsing, rendering and name resolution.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qlab/error.hpp"
#include "qlab/qcategory.hpp"
#include "qlab/quantaloid.hpp"
#include "qlab/variation.hpp"

namespace qlab {

enum class InstanceKind { quantaloid, category, functor, distributor, pseudofunctor, module, action };

std::string_view to_string(InstanceKind kind);

using InstanceValue = std::variant<QuantaloidPtr, CategoryPtr, QFunctor, Distributor, Pseudofunctor2,
                                   QModule, QuantaleAction>;

struct Instance {
  InstanceKind kind;
  std::string name;
  InstanceValue value;
};

/// Kind, name and `# expect:` header of a file, read without building it.
struct FileHeader {
  InstanceKind kind;
  std::string name;
  std::optional<ErrorKind> expected;
};

FileHeader read_header(std::string_view text);

/// Resolves quantaloid and category references by declared name: first among the
/// files of every added directory, then among the built-in instances.
class Workspace {
 public:
  Workspace() = default;

  /// Indexes the instance files directly inside `dir`.
  void add_directory(const std::filesystem::path& dir);
  /// Parses and validates a file; its directory is indexed first.
  Instance load_file(const std::filesystem::path& path);
  /// Parses and validates text; references resolve through this workspace.
  Instance parse(std::string_view text);

  QuantaloidPtr quantaloid(std::string_view name);
  CategoryPtr category(std::string_view name);

 private:
  Instance load_named(const std::string& name);

  std::map<std::string, std::filesystem::path> index_;
  std::map<std::string, Instance> cache_;
  std::set<std::string> loading_;
};

std::string render(const Quantaloid& q);
std::string render(const QCategory& c);
std::string render(const QFunctor& f, std::string_view name);
std::string render(const Distributor& d, std::string_view name);
std::string render(const Pseudofunctor2& p);
std::string render(const QModule& m);
std::string render(const QuantaleAction& a);
std::string render(const Instance& instance);

/// Structural equality of two instances of the same kind.
bool same_instance(const Instance& a, const Instance& b);

/// File extensions recognised when indexing directories.
bool is_instance_file(const std::filesystem::path& path);

}  // namespace qlab
