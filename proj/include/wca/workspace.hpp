// Semiring name resolution and the on-disk workspace: a directory of model
// files plus a JSON manifest of user-defined semirings. Deletion protection
// keeps every instance alive while a stored model or another definition
// still refers to it.

#ifndef WCA_WORKSPACE_HPP
#define WCA_WORKSPACE_HPP

#include "wca/poset.hpp"
#include "wca/semiring.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wca {

// Name forms understood everywhere a semiring is named:
//   rational | boolean | tropical-nat | integer
//   zmod(q) | latticez(lo,hi) | product(left,right)   (recursive)
//   any user-defined name registered here
class Registry {
public:
  struct Definition {
    std::string kind;  // "zmod" | "poset-lattice" | "product"
    std::uint64_t modulus = 0;
    std::optional<Poset> poset;
    std::string left, right;
  };

  SemiringPtr resolve(const std::string& name) const;

  // The poset behind a defined poset-lattice, nullptr otherwise; CTS files
  // may name their condition order this way.
  const Poset* defined_poset(const std::string& name) const;

  bool is_defined(const std::string& name) const {
    return defs_.count(name) != 0;
  }
  const std::map<std::string, Definition>& definitions() const {
    return defs_;
  }

  void define_zmod(const std::string& name, std::uint64_t modulus);
  void define_lattice(const std::string& name, Poset poset);
  void define_product(const std::string& name, const std::string& left,
                      const std::string& right);
  void undefine(const std::string& name);

  // Every name the given semiring name depends on, itself included:
  // parametric products recurse into their arguments, defined products into
  // their components.
  std::set<std::string> expand(const std::string& name) const;

private:
  void check_new_name(const std::string& name) const;

  std::map<std::string, Definition> defs_;
};

struct StoredModel {
  std::string name;
  std::string file;      // relative to the workspace directory
  std::string semiring;  // empty for an inline-poset CTS
};

class Workspace {
public:
  explicit Workspace(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  Registry& registry() { return reg_; }
  const Registry& registry() const { return reg_; }
  const std::vector<StoredModel>& models() const { return models_; }

  void save() const;

  void define_zmod(const std::string& name, std::uint64_t modulus);
  void define_lattice(const std::string& name, Poset poset);
  void define_product(const std::string& name, const std::string& left,
                      const std::string& right);
  // Throws Error naming the users while the semiring is still referenced.
  void delete_semiring(const std::string& name);

  // Validates the file, then stores its canonical print under
  // <dir>/<name>.model and records it in the manifest.
  void add_model(const std::string& name, const std::string& source_path);
  void remove_model(const std::string& name);
  std::filesystem::path model_path(const std::string& name) const;

  // Stored models plus definitions that depend on the name.
  std::vector<std::string> users_of(const std::string& name) const;

private:
  std::filesystem::path dir_;
  Registry reg_;
  std::vector<StoredModel> models_;
};

}  // namespace wca

#endif
